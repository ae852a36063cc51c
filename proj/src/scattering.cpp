#include "platonic/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "platonic/errors.hpp"
#include "platonic/parallel.hpp"

namespace platonic {

namespace {

constexpr double kMaxCondition = 1e14;

}  // namespace

IncidentWave IncidentWave::from_angle(double beta, double theta_i, cplx amplitude, Side from) {
  if (!(beta > 0.0) || !(theta_i >= 0.0) || !(theta_i < kPi / 2.0)) {
    throw Error(ErrorKind::DomainError, "incident wave requires beta > 0 and 0 <= theta_i < pi/2");
  }
  IncidentWave w;
  w.theta_i = theta_i;
  w.beta = beta;
  w.alpha0 = beta * std::sin(theta_i);
  w.chi0 = beta * std::cos(theta_i);
  w.amplitude = amplitude;
  w.from = from;
  return w;
}

IncidentWave IncidentWave::from_alpha0(double beta, double alpha0, cplx amplitude, Side from) {
  if (!(beta > 0.0) || !(std::abs(alpha0) < beta)) {
    std::ostringstream msg;
    msg << "no propagating incident wave for alpha0=" << alpha0 << ", beta=" << beta;
    throw Error(ErrorKind::DomainError, msg.str());
  }
  IncidentWave w;
  w.beta = beta;
  w.alpha0 = alpha0;
  w.chi0 = std::sqrt((beta - alpha0) * (beta + alpha0));
  w.theta_i = std::asin(alpha0 / beta);
  w.amplitude = amplitude;
  w.from = from;
  return w;
}

cplx IncidentWave::at(double x, double y) const {
  const double sign = from == Side::Above ? -1.0 : 1.0;
  return amplitude * std::polar(1.0, alpha0 * x + sign * chi0 * y);
}

PinStack PinStack::pair(double separation, double d) {
  if (!(separation > 0.0)) throw Error(ErrorKind::InvalidArgument, "pair separation must be positive");
  return {{{0.0, 0.5 * separation}, {0.0, -0.5 * separation}}, d};
}

PinStack PinStack::triplet(const StackGeometry& g) {
  return {g.pins(), g.d};
}

Coefficients solve_coefficients(const SpectralPoint& p, const PinStack& stack, const IncidentWave& inc,
                                const TruncationPolicy& policy) {
  p.validate();
  Coefficients out;
  if (stack.pins.empty()) return out;

  const Eigen::MatrixXcd m = pin_matrix(p, stack.pins, policy);
  const auto n = static_cast<Eigen::Index>(stack.pins.size());
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    rhs(k) = -inc.at(stack.pins[k].x * p.d, stack.pins[k].y * p.d);
  }

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  out.condition = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
  if (!(out.condition <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "condition number " << out.condition << " at beta=" << p.beta << ", alpha0=" << p.alpha0
        << "; the point sits on a trapped mode, perturb beta";
    throw Error(ErrorKind::SingularSystem, msg.str());
  }
  const Eigen::VectorXcd a = m.colPivHouseholderQr().solve(rhs);
  out.a.assign(a.data(), a.data() + n);
  return out;
}

cplx total_field(const SpectralPoint& p, const PinStack& stack, const IncidentWave& inc,
                 const Coefficients& coeffs, double x, double y, const TruncationPolicy& policy) {
  cplx u = inc.at(x * p.d, y * p.d);
  for (std::size_t j = 0; j < coeffs.a.size(); ++j) {
    const double dx = (x - stack.pins[j].x) * p.d;
    const double dy = (y - stack.pins[j].y) * p.d;
    u += coeffs.a[j] * greens(p, dx, dy, policy).value;
  }
  return u;
}

std::vector<OrderAmplitude> plane_wave_amplitudes(const Coefficients& coeffs, const SpectralPoint& p,
                                                  const PinStack& stack, const IncidentWave& inc,
                                                  const TruncationPolicy& policy) {
  const auto n_lo = static_cast<int>(std::ceil((-p.beta - p.alpha0) * p.d / kTwoPi));
  const auto n_hi = static_cast<int>(std::floor((p.beta - p.alpha0) * p.d / kTwoPi));
  const double b2 = p.beta * p.beta;

  std::vector<OrderAmplitude> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    const auto q = order_quantities(p, n);
    if (q.chi_n.imag() != 0.0) continue;
    if (q.chi_n.real() <= policy.lightline_tol * p.beta) {
      std::ostringstream msg;
      msg << "propagating order " << n << " is on a light line at beta=" << p.beta;
      throw Error(ErrorKind::LightLineProximity, msg.str());
    }
    // the incident wave's own chi0 keeps an empty stack at exactly T = 1
    const double chi = n == 0 ? inc.chi0 : q.chi_n.real();
    const cplx scale = -1.0 / (cplx(0.0, 4.0 * b2 * p.d) * chi);

    cplx up(0.0, 0.0);    // coefficient of exp(i(alpha_n x + chi_n y)) above the stack
    cplx down(0.0, 0.0);  // coefficient of exp(i(alpha_n x - chi_n y)) below it
    for (std::size_t j = 0; j < coeffs.a.size(); ++j) {
      const double xj = stack.pins[j].x * p.d;
      const double yj = stack.pins[j].y * p.d;
      const cplx lateral = coeffs.a[j] * scale * std::polar(1.0, -q.alpha_n * xj);
      up += lateral * std::polar(1.0, -chi * yj);
      down += lateral * std::polar(1.0, chi * yj);
    }

    OrderAmplitude amp;
    amp.n = n;
    amp.chi = chi;
    if (inc.from == Side::Above) {
      amp.r = up;
      amp.t = down + (n == 0 ? inc.amplitude : cplx(0.0, 0.0));
    } else {
      amp.r = down;
      amp.t = up + (n == 0 ? inc.amplitude : cplx(0.0, 0.0));
    }
    out.push_back(amp);
  }
  return out;
}

SpectrumRecord evaluate(const PinStack& stack, const IncidentWave& inc, const TruncationPolicy& policy) {
  if (std::abs(inc.amplitude) == 0.0) {
    throw Error(ErrorKind::DomainError, "energy fractions need a nonzero incident amplitude");
  }
  const SpectralPoint p = inc.point(stack.d);
  const auto coeffs = solve_coefficients(p, stack, inc, policy);
  SpectrumRecord rec;
  rec.alpha0 = p.alpha0;
  rec.beta = p.beta;
  rec.amplitudes = plane_wave_amplitudes(coeffs, p, stack, inc, policy);
  const double norm = std::norm(inc.amplitude) * inc.chi0;
  for (const auto& a : rec.amplitudes) {
    const double rn = std::norm(a.r) * a.chi / norm;
    const double tn = std::norm(a.t) * a.chi / norm;
    rec.r_orders[a.n] = rn;
    rec.t_orders[a.n] = tn;
    rec.r += rn;
    rec.t += tn;
  }
  rec.energy_residual = std::abs(rec.r + rec.t - 1.0);
  return rec;
}

IncidentWave incident_for(const ScanSpec& spec, double beta) {
  return spec.mode == ScanMode::FixedAngle ? IncidentWave::from_angle(beta, spec.theta_i, 1.0, spec.from)
                                           : IncidentWave::from_alpha0(beta, spec.alpha0, 1.0, spec.from);
}

namespace {

SpectrumRecord evaluate_recorded(const PinStack& stack, const ScanSpec& spec, double beta,
                                 const TruncationPolicy& policy) {
  try {
    auto rec = evaluate(stack, incident_for(spec, beta), policy);
    if (!spec.keep_amplitudes) rec.amplitudes.clear();
    return rec;
  } catch (const Error& e) {
    SpectrumRecord rec;
    rec.beta = beta;
    rec.alpha0 = spec.mode == ScanMode::FixedAngle ? beta * std::sin(spec.theta_i) : spec.alpha0;
    rec.r = rec.t = rec.energy_residual = std::numeric_limits<double>::quiet_NaN();
    rec.status = std::string(to_string(e.kind()));
    return rec;
  }
}

}  // namespace

std::vector<SpectrumRecord> spectrum_scan(const PinStack& stack, const ScanSpec& spec,
                                          const TruncationPolicy& policy) {
  policy.validate();
  if (!(spec.beta_lo > 0.0) || !(spec.beta_hi >= spec.beta_lo) || spec.points < 1) {
    throw Error(ErrorKind::InvalidArgument, "scan needs 0 < beta_lo <= beta_hi and at least one point");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(spec.points) + spec.anchors.size());
  for (int i = 0; i < spec.points; ++i) {
    grid.push_back(spec.points == 1 ? spec.beta_lo
                                    : spec.beta_lo + (spec.beta_hi - spec.beta_lo) * i / (spec.points - 1));
  }
  for (const double a : spec.anchors) {
    if (a >= spec.beta_lo && a <= spec.beta_hi) grid.push_back(a);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto run = [&](const std::vector<double>& betas) {
    return parallel_map(
        betas.size(), [&](std::size_t i) { return evaluate_recorded(stack, spec, betas[i], policy); },
        spec.threads);
  };
  std::vector<SpectrumRecord> records = run(grid);

  while (spec.refine) {
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
      const auto& a = records[i];
      const auto& b = records[i + 1];
      if (!a.ok() || !b.ok()) continue;
      if (std::abs(b.t - a.t) > spec.refine_threshold && b.beta - a.beta > 2.0 * spec.step_floor) {
        mids.push_back(0.5 * (a.beta + b.beta));
      }
    }
    if (mids.empty() || records.size() + mids.size() > static_cast<std::size_t>(spec.max_points)) break;
    auto fresh = run(mids);
    std::vector<SpectrumRecord> merged;
    merged.reserve(records.size() + fresh.size());
    std::merge(std::make_move_iterator(records.begin()), std::make_move_iterator(records.end()),
               std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()),
               std::back_inserter(merged), [](const auto& x, const auto& y) { return x.beta < y.beta; });
    records = std::move(merged);
  }
  return records;
}

double single_grating_reflectance(const SpectralPoint& p, const TruncationPolicy& policy) {
  p.validate();
  const auto inc = IncidentWave::from_alpha0(p.beta, p.alpha0);
  const auto rec = evaluate(PinStack::single(p.d), inc, policy);
  return rec.r_orders.at(0);
}

double fabry_perot_model(double r_g, double delta) {
  if (!(r_g >= 0.0) || !(r_g < 1.0)) {
    throw Error(ErrorKind::DomainError, "Fabry-Perot finesse needs 0 <= R_g < 1");
  }
  const double finesse = 4.0 * r_g / ((1.0 - r_g) * (1.0 - r_g));
  const double s = std::sin(0.5 * delta);
  return 1.0 / (1.0 + finesse * s * s);
}

}  // namespace platonic
