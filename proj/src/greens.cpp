#include "platonic/greens.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "platonic/errors.hpp"

namespace platonic {

namespace {

// Number of e-foldings after which an evanescent off-line term is negligible.
constexpr double kDecayBudget = 37.0;

double hurwitz_zeta(double s, double q) {
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;
  gsl_sf_result result;
  const int status = gsl_sf_hzeta_e(s, q, &result);
  if (status != GSL_SUCCESS) {
    throw Error(ErrorKind::NonFinite, "Hurwitz zeta evaluation failed");
  }
  return result.val;
}

// Sum over |n| > N of the asymptotic expansion of the paired on-line term
//   1/(2 i d chi_n) + 1/(2 d tau_n) = -(1/d) sum_{k odd} c_k beta^{2k} |alpha_n|^{-(2k+1)},
// c_k = binom(2k, k) / 4^k. Returns NaN when the discarded
// orders are not all well inside the evanescent regime.
double bracket_tail(const SpectralPoint& p, int terms) {
  const double shift = p.alpha0 * p.d / kTwoPi;
  const double q_plus = terms + 1 + shift;
  const double q_minus = terms + 1 - shift;
  const double k_min = kTwoPi / p.d * std::min(q_plus, q_minus);
  if (q_minus <= 0.0 || q_plus <= 0.0 || k_min <= 2.0 * p.beta) {
    return std::nan("");
  }
  constexpr std::array<std::pair<int, double>, 4> series{{
      {1, 1.0 / 2.0}, {3, 5.0 / 16.0}, {5, 63.0 / 256.0}, {7, 429.0 / 2048.0}}};
  const double scale = p.d / kTwoPi;
  const double b2 = p.beta * p.beta;
  double total = 0.0;
  for (const auto& [k, c] : series) {
    const double s = 2.0 * k + 1.0;
    const double zeta_sum = std::pow(scale, s) * (hurwitz_zeta(s, q_plus) + hurwitz_zeta(s, q_minus));
    total += c * std::pow(b2, k) * zeta_sum;
  }
  return -total / p.d;
}

// 1/(2 i d chi) e^{i chi |y|} + 1/(2 d tau) e^{-tau |y|} for one order.
cplx paired_term(const OrderQuantities& q, double beta, double d, double ay) {
  if (q.chi_n.real() > 0.0 || q.chi_n.imag() == 0.0) {
    const double chi = q.chi_n.real();
    const cplx prop = std::polar(1.0, chi * ay) / (cplx(0.0, 2.0 * d) * chi);
    return prop + std::exp(-q.tau_n * ay) / (2.0 * d * q.tau_n);
  }
  // Evanescent: chi = i kappa. The two pieces nearly cancel for large |n|,
  //   e^{-tau y}/tau - e^{-kappa y}/kappa
  //     = e^{-kappa y} [expm1(-(tau - kappa) y)/tau - 2 beta^2 / (kappa tau (kappa + tau))].
  const double kappa = q.chi_n.imag();
  const double tau = q.tau_n;
  const double b2 = beta * beta;
  const double gap = 2.0 * b2 / (kappa + tau);  // tau - kappa
  const double inner = std::expm1(-gap * ay) / tau - 2.0 * b2 / (kappa * tau * (kappa + tau));
  return std::exp(-kappa * ay) * inner / (2.0 * d);
}

}  // namespace

void SpectralPoint::validate() const {
  if (!std::isfinite(alpha0) || !std::isfinite(beta) || !std::isfinite(d) || !(beta > 0.0) ||
      !(d > 0.0)) {
    std::ostringstream msg;
    msg << "spectral point requires finite alpha0, beta > 0, d > 0 (got alpha0=" << alpha0
        << ", beta=" << beta << ", d=" << d << ")";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

void TruncationPolicy::validate() const {
  if (n_far < 1 || n_self < n_far || !(lightline_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "truncation policy requires n_self >= n_far >= 1 and lightline_tol > 0");
  }
}

OrderQuantities order_quantities(const SpectralPoint& p, int n) {
  OrderQuantities q;
  q.n = n;
  q.alpha_n = p.alpha0 + kTwoPi * n / p.d;
  const double a = std::abs(q.alpha_n);
  const double diff = (p.beta - a) * (p.beta + a);
  if (diff >= 0.0) {
    q.chi_n = cplx(std::sqrt(diff), 0.0);
  } else {
    q.chi_n = cplx(0.0, std::sqrt(-diff));
  }
  q.tau_n = std::hypot(p.beta, q.alpha_n);
  return q;
}

double lightline_distance(const SpectralPoint& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const double sign : {-1.0, 1.0}) {
    const double centre = (sign * p.beta - p.alpha0) * p.d / kTwoPi;
    const auto lo = static_cast<long>(std::floor(centre));
    for (long n = lo - 1; n <= lo + 2; ++n) {
      const auto q = order_quantities(p, static_cast<int>(n));
      best = std::min(best, std::abs(q.chi_n) / p.beta);
    }
  }
  return best;
}

GreensValue greens_truncated(const SpectralPoint& p, double x, double y, int terms,
                             double lightline_tol, bool tail_correction) {
  p.validate();
  if (terms < 0) throw Error(ErrorKind::InvalidArgument, "truncation order must be >= 0");

  // x = (m + frac) d, so exp(i alpha_n x) = exp(i alpha0 x) exp(2 pi i n frac).
  double frac = x / p.d - std::floor(x / p.d);
  if (1.0 - frac < 1e-14) frac = 0.0;
  if (frac < 1e-14) frac = 0.0;
  const double ay = std::abs(y);

  auto order_term = [&](int n) {
    const auto q = order_quantities(p, n);
    if (std::abs(q.chi_n) <= lightline_tol * p.beta) {
      std::ostringstream msg;
      msg << "order " << n << " has |chi_n|/beta = " << std::abs(q.chi_n) / p.beta
          << " at alpha0=" << p.alpha0 << ", beta=" << p.beta;
      throw Error(ErrorKind::LightLineProximity, msg.str());
    }
    const cplx t = paired_term(q, p.beta, p.d, ay);
    return frac == 0.0 ? t : t * std::polar(1.0, kTwoPi * n * frac);
  };

  // Accumulate from the far tail inwards so small terms are not swamped.
  cplx sum(0.0, 0.0);
  for (int k = terms; k >= 1; --k) {
    sum += order_term(k) + order_term(-k);
  }
  sum += order_term(0);

  GreensValue out;
  out.terms = terms;
  if (tail_correction && ay == 0.0 && frac == 0.0) {
    const double tail = bracket_tail(p, terms);
    if (std::isfinite(tail)) {
      sum += tail;
      out.tail_corrected = true;
    }
  }

  out.value = -std::polar(1.0, p.alpha0 * x) * sum / (2.0 * p.beta * p.beta);
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    throw Error(ErrorKind::NonFinite, "Green's function accumulation is not finite");
  }
  return out;
}

GreensValue greens(const SpectralPoint& p, double x, double y, const TruncationPolicy& policy) {
  policy.validate();
  int terms = policy.n_self;
  if (y != 0.0) {
    const double needed = std::ceil(kDecayBudget * p.d / (kTwoPi * std::abs(y))) + 1.0;
    terms = static_cast<int>(std::clamp(needed, static_cast<double>(policy.n_far),
                                        static_cast<double>(policy.n_self)));
  }
  return greens_truncated(p, x, y, terms, policy.lightline_tol, policy.tail_correction);
}

}  // namespace platonic
