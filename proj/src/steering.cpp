#include "platonic/steering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "platonic/errors.hpp"
#include "platonic/optimize.hpp"
#include "platonic/parallel.hpp"

namespace platonic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Swallows numeric failures so that grid searches can step over light lines.
template <class Fn>
double guarded(Fn&& fn) {
  try {
    const double v = fn();
    return std::isfinite(v) ? v : kInf;
  } catch (const Error&) {
    return kInf;
  }
}

std::function<cplx(double)> residual_of(const Incidence& inc, const StackGeometry& g, ModeParity parity,
                                        const TruncationPolicy& policy) {
  return [inc, g, parity, policy](double beta) {
    const auto r = dispersion_residual(assemble(inc.point(beta), g, policy));
    return parity == ModeParity::Odd ? r.odd : r.even;
  };
}

struct Located {
  ModeLocation mode;
  bool at_edge = false;
};

Located locate(const Incidence& inc, const StackGeometry& g, ModeParity parity, double lo, double hi,
               const TruncationPolicy& policy, int grid, std::optional<double> prefer) {
  const auto res = residual_of(inc, g, parity, policy);
  const Objective f = [&](double b) { return guarded([&] { return std::abs(res(b)); }); };
  const auto s = sample_grid(f, lo, hi, grid);

  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < s.x.size(); ++i) {
    if (std::isfinite(s.fx[i]) && s.fx[i] <= s.fx[i - 1] && s.fx[i] <= s.fx[i + 1]) minima.push_back(i);
  }
  Located out;
  std::size_t k = s.argmin;
  if (minima.empty()) {
    out.at_edge = true;
  } else if (prefer) {
    k = *std::min_element(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(s.x[a] - *prefer) < std::abs(s.x[b] - *prefer);
    });
  } else {
    k = *std::min_element(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) { return s.fx[a] < s.fx[b]; });
  }
  if (!std::isfinite(s.fx[k])) throw Error(ErrorKind::NonFinite, "mode residual not finite anywhere in window");

  const double a = s.x[k == 0 ? 0 : k - 1];
  const double b = s.x[std::min(k + 1, s.x.size() - 1)];
  auto best = golden_section_minimize(f, a, b, 1e-15 * std::abs(s.x[k]));
  if (s.fx[k] < best.fx) best = {s.x[k], s.fx[k], 0};
  try {
    const auto pol = polish_modulus_minimum(res, best.x, 1e-3 * (b - a));
    if (pol.fx <= best.fx && pol.x > a && pol.x < b) best = {pol.x, pol.fx, 0};
  } catch (const Error&) {
  }
  out.mode = {best.x, best.fx};
  return out;
}

struct Crossings {
  std::size_t extremum = 0;
  double level = 0.0;
  std::optional<double> left;
  std::optional<double> right;
  std::size_t first_in = 0;  // contiguous run beyond the level around the extremum
  std::size_t last_in = 0;
};

double lerp_crossing(const SpectrumRecord& a, const SpectrumRecord& b, double level) {
  const double f = (level - a.t) / (b.t - a.t);
  return a.beta + f * (b.beta - a.beta);
}

Crossings find_crossings(std::span<const SpectrumRecord> s, Feature feature) {
  Crossings c;
  const bool peak = feature == Feature::Peak;
  auto better = [peak](double a, double b) { return peak ? a > b : a < b; };
  bool found = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].ok()) continue;
    if (!found || better(s[i].t, s[c.extremum].t)) {
      c.extremum = i;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::Unresolved, "no valid points in spectrum");
  const double ext = s[c.extremum].t;
  if (peak) {
    c.level = 0.5 * ext;
  } else {
    double lmax = -kInf;
    double rmax = -kInf;
    for (std::size_t i = 0; i < c.extremum; ++i)
      if (s[i].ok()) lmax = std::max(lmax, s[i].t);
    for (std::size_t i = c.extremum + 1; i < s.size(); ++i)
      if (s[i].ok()) rmax = std::max(rmax, s[i].t);
    c.level = 0.5 * (std::min(lmax, rmax) + ext);
  }
  auto inside = [&](const SpectrumRecord& r) { return r.ok() && (peak ? r.t >= c.level : r.t <= c.level); };

  std::size_t i = c.extremum;
  while (i > 0 && inside(s[i - 1])) --i;
  c.first_in = i;
  if (i > 0 && s[i - 1].ok()) c.left = lerp_crossing(s[i - 1], s[i], c.level);
  std::size_t j = c.extremum;
  while (j + 1 < s.size() && inside(s[j + 1])) ++j;
  c.last_in = j;
  if (j + 1 < s.size() && s[j + 1].ok()) c.right = lerp_crossing(s[j], s[j + 1], c.level);
  return c;
}

}  // namespace

double Incidence::alpha0_at(double beta) const {
  return mode == ScanMode::FixedAngle ? beta * std::sin(value) : value;
}

IncidentWave Incidence::wave(double beta) const {
  return mode == ScanMode::FixedAngle ? IncidentWave::from_angle(beta, value) : IncidentWave::from_alpha0(beta, value);
}

ScanSpec Incidence::scan(double beta_lo, double beta_hi, int points) const {
  ScanSpec s;
  s.mode = mode;
  if (mode == ScanMode::FixedAngle) {
    s.theta_i = value;
  } else {
    s.alpha0 = value;
  }
  s.beta_lo = beta_lo;
  s.beta_hi = beta_hi;
  s.points = points;
  return s;
}

double Incidence::first_lightline() const {
  if (mode == ScanMode::FixedAngle) return kTwoPi / (d * (1.0 + std::abs(std::sin(value))));
  return kTwoPi / d - std::abs(value);
}

BetaG find_beta_g(const Incidence& inc, std::optional<std::pair<double, double>> bracket,
                  const TruncationPolicy& policy, const SteeringOptions& opts) {
  policy.validate();
  const double ll = inc.first_lightline();
  double lo = 0.0;
  double hi = 0.0;
  if (bracket) {
    std::tie(lo, hi) = *bracket;
  } else {
    hi = ll * (1.0 - 1e-6);
    lo = inc.mode == ScanMode::FixedAngle ? 0.25 * ll : std::abs(inc.value) + 1e-3 * ll;
  }
  if (!(hi > lo) || !(lo > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta_g bracket must satisfy 0 < lo < hi");

  const PinStack single = PinStack::single(inc.d);
  auto record = [&](double beta) { return evaluate(single, inc.wave(beta), policy); };
  const Objective f = [&](double beta) {
    return guarded([&] {
      const auto r = record(beta);
      return std::sqrt(r.t / r.r);
    });
  };
  const auto best = bracketed_minimize(f, lo, hi, opts.beta_grid, 1e-15 * hi);

  BetaG out;
  out.beta = best.x;
  out.alpha0 = inc.alpha0_at(best.x);
  const auto rec = record(best.x);
  const auto it = rec.r_orders.find(0);
  out.one_minus_r = 1.0 - (it == rec.r_orders.end() ? 0.0 : it->second);
  if (!(out.one_minus_r < opts.reflectance_tol)) {
    std::ostringstream msg;
    msg << "max R_g over [" << lo << ", " << hi << "] is 1 - " << out.one_minus_r << " at beta=" << out.beta;
    throw Error(ErrorKind::NoUnityReflectance, msg.str());
  }
  return out;
}

double slab_guess(double beta, double alpha0, int m, double d) {
  if (m < 1) throw Error(ErrorKind::DomainError, "slab order m must be >= 1");
  if (!(beta > std::abs(alpha0))) throw Error(ErrorKind::DomainError, "slab guess needs beta > |alpha0|");
  return kPi * m / (d * std::sqrt((beta - alpha0) * (beta + alpha0)));
}

EtaStar find_eta_star(const Incidence& inc, double beta, double eta_guess, const TruncationPolicy& policy,
                      const SteeringOptions& opts) {
  if (!(eta_guess > 0.0)) throw Error(ErrorKind::InvalidArgument, "eta guess must be positive");
  const IncidentWave wave = inc.wave(beta);
  auto record = [&](double eta) { return evaluate(PinStack::pair(eta, inc.d), wave, policy); };
  const Objective f = [&](double eta) {
    return guarded([&] {
      const auto r = record(eta);
      return std::sqrt(r.r / r.t);
    });
  };
  EtaStar out;
  double w = opts.eta_rel_halfwidth;
  for (int attempt = 0; attempt < 2; ++attempt, w *= 2.0) {
    const double lo = eta_guess * (1.0 - w);
    const double hi = eta_guess * (1.0 + w);
    const auto best = bracketed_minimize(f, lo, hi, opts.eta_grid, 1e-15 * hi);
    out.eta = best.x;
    out.transmittance = record(best.x).t;
    if (1.0 - out.transmittance <= opts.pair_unity_tol) return out;
  }
  std::ostringstream msg;
  msg << "best pair transmittance 1 - " << 1.0 - out.transmittance << " at eta=" << out.eta;
  throw Error(ErrorKind::NoUnityTransmittance, msg.str());
}

double align_odd_mode(const Incidence& inc, double beta, double eta_guess, const TruncationPolicy& policy,
                      const SteeringOptions& opts) {
  if (!(eta_guess > 0.0)) throw Error(ErrorKind::InvalidArgument, "eta guess must be positive");
  const SpectralPoint p = inc.point(beta);
  const cplx g00 = greens(p, 0.0, 0.0, policy).value;
  const Objective f = [&](double eta) {
    return guarded([&] { return std::abs(g00 - greens(p, 0.0, 2.0 * eta * p.d, policy).value) / std::abs(g00); });
  };
  const double w = opts.eta_rel_halfwidth;
  return bracketed_minimize(f, eta_guess * (1.0 - w), eta_guess * (1.0 + w), opts.eta_grid, 1e-15 * eta_guess).x;
}

ModeLocation locate_mode(const Incidence& inc, const StackGeometry& g, ModeParity parity, double lo, double hi,
                         const TruncationPolicy& policy, int grid, std::optional<double> prefer) {
  return locate(inc, g, parity, lo, hi, policy, grid, prefer).mode;
}

XiEdit find_xi_edit(const Incidence& inc, double beta_g, double eta, const TruncationPolicy& policy,
                    const SteeringOptions& opts) {
  if (!(opts.xi_hi > opts.xi_lo) || !(opts.xi_step > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "xi bracket must satisfy lo < hi with a positive step");
  }
  const double ll = inc.first_lightline();
  const double lo = beta_g * (1.0 - opts.mode_window);
  const double hi = std::min(beta_g * (1.0 + opts.mode_window), ll * (1.0 - 1e-4));

  // The odd mode does not see the centre pin, so it is located once.
  XiEdit out;
  out.beta_odd = locate_mode(inc, {eta, 0.0, inc.d}, ModeParity::Odd, lo, hi, policy, opts.mode_grid, beta_g).beta;

  auto even_near = [&](double xi, double center, double half) {
    for (int grow = 0; grow < 6; ++grow, half *= 4.0) {
      const auto l = locate(inc, {eta, xi, inc.d}, ModeParity::Even, std::max(lo, center - half),
                            std::min(hi, center + half), policy, 81, center);
      if (!l.at_edge) return l.mode.beta;
    }
    std::ostringstream msg;
    msg << "lost track of the even mode at xi=" << xi;
    throw Error(ErrorKind::ModesDidNotMerge, msg.str());
  };

  const int steps = static_cast<int>(std::floor((opts.xi_hi - opts.xi_lo) / opts.xi_step + 1e-9));
  std::vector<double> xs;
  std::vector<double> even;
  xs.push_back(opts.xi_lo);
  even.push_back(
      locate_mode(inc, {eta, opts.xi_lo, inc.d}, ModeParity::Even, lo, hi, policy, opts.mode_grid, out.beta_odd)
          .beta);
  double closest = std::abs(out.beta_odd - even.back());
  double closest_xi = opts.xi_lo;
  std::optional<std::size_t> bracket;
  for (int k = 1; k <= steps; ++k) {
    const double xi = std::min(opts.xi_lo + k * opts.xi_step, opts.xi_hi);
    const double shift = even.size() > 1 ? std::abs(even.back() - even[even.size() - 2]) : 0.0;
    even.push_back(even_near(xi, even.back() + (even.size() > 1 ? even.back() - even[even.size() - 2] : 0.0),
                             std::max(3.0 * shift, 1e-4 * beta_g)));
    xs.push_back(xi);
    const double gap = out.beta_odd - even.back();
    if (std::abs(gap) < closest) {
      closest = std::abs(gap);
      closest_xi = xi;
    }
    const double prev_gap = out.beta_odd - even[even.size() - 2];
    if (gap == 0.0 || (gap > 0.0) != (prev_gap > 0.0)) {
      bracket = xs.size() - 2;
      break;
    }
  }
  if (!bracket) {
    std::ostringstream msg;
    msg << "closest approach " << closest << " at xi=" << closest_xi;
    throw Error(ErrorKind::ModesDidNotMerge, msg.str());
  }

  const std::size_t k = *bracket;
  const double x0 = xs[k];
  const double x1 = xs[k + 1];
  const double e0 = even[k];
  const double e1 = even[k + 1];
  const double half = std::max(2.0 * std::abs(e1 - e0), 1e-5 * beta_g);
  auto even_at = [&](double xi) { return even_near(xi, e0 + (e1 - e0) * (xi - x0) / (x1 - x0), half); };
  out.xi = bracketed_root([&](double xi) { return out.beta_odd - even_at(xi); }, x0, x1, 1e-12);
  out.beta_even = even_at(out.xi);
  out.beta_edit = 0.5 * (out.beta_odd + out.beta_even);
  if (!(std::abs(out.beta_odd - out.beta_even) <= opts.merge_tol)) {
    std::ostringstream msg;
    msg << "closest approach " << std::abs(out.beta_odd - out.beta_even) << " at xi=" << out.xi;
    throw Error(ErrorKind::ModesDidNotMerge, msg.str());
  }
  return out;
}

ResonancePeak q_factor(std::span<const SpectrumRecord> spectrum, Feature feature, int min_points) {
  const auto c = find_crossings(spectrum, feature);
  if (!c.left || !c.right) throw Error(ErrorKind::Unresolved, "half-level crossing outside the scanned range");
  ResonancePeak out;
  out.feature = feature;
  out.beta_center = spectrum[c.extremum].beta;
  out.fwhm = *c.right - *c.left;
  for (const auto& r : spectrum) {
    if (r.beta >= *c.left && r.beta <= *c.right) ++out.points_in_width;
  }
  if (out.points_in_width < min_points) {
    std::ostringstream msg;
    msg << "only " << out.points_in_width << " points across the width, need " << min_points;
    throw Error(ErrorKind::Unresolved, msg.str());
  }
  if (!(out.fwhm > 0.0)) throw Error(ErrorKind::Unresolved, "zero width");
  out.q = out.beta_center / out.fwhm;
  return out;
}

ResonancePeak measure_resonance(const PinStack& stack, const Incidence& inc, double beta_center, double halfwidth,
                                Feature feature, const TruncationPolicy& policy, unsigned threads,
                                std::optional<std::pair<double, double>> exclude) {
  constexpr int kPoints = 801;
  double c = beta_center;
  double w = halfwidth;
  for (int it = 0; it < 40; ++it) {
    auto spec = inc.scan(c - w, c + w, kPoints);
    spec.threads = threads;
    auto recs = spectrum_scan(stack, spec, policy);
    if (exclude) {
      std::erase_if(recs, [&](const SpectrumRecord& r) { return r.beta >= exclude->first && r.beta <= exclude->second; });
    }
    const auto cr = find_crossings(recs, feature);
    const double step = 2.0 * w / (kPoints - 1);
    if (cr.left && cr.right) {
      const double fwhm = *cr.right - *cr.left;
      if (fwhm >= 40.0 * step) return q_factor(recs, feature);
      c = 0.5 * (*cr.left + *cr.right);
      w = 4.0 * fwhm;
    } else if (cr.first_in == 0 || cr.last_in + 1 == recs.size()) {
      c = recs[cr.extremum].beta;
      w *= 4.0;
    } else {
      c = recs[cr.extremum].beta;
      w /= 20.0;
    }
    if (!(w > 4.0 * std::numeric_limits<double>::epsilon() * c * kPoints)) break;
  }
  throw Error(ErrorKind::Unresolved, "resonance width could not be resolved by zooming");
}

SteeringResult steer_angle(double theta_i, const TruncationPolicy& policy, const SteeringOptions& opts) {
  SteeringResult res;
  res.theta_i = theta_i;
  res.edit_supported = theta_i != 0.0;
  try {
    if (!(theta_i >= 0.0) || !(theta_i < kPi / 2.0)) {
      throw Error(ErrorKind::DomainError, "steering needs 0 <= theta_i < 90 degrees");
    }
    const Incidence inc = Incidence::angle(theta_i);
    const auto bg = find_beta_g(inc, std::nullopt, policy, opts);
    res.beta_g = bg.beta;
    res.alpha0_g = bg.alpha0;
    res.one_minus_rg = bg.one_minus_r;
    res.eta_guess = slab_guess(bg.beta, bg.alpha0, 1);
    const auto es = find_eta_star(inc, bg.beta, res.eta_guess, policy, opts);
    res.eta_star = es.eta;
    res.pair_transmittance = es.transmittance;
    res.m_eff = es.eta * std::sqrt((bg.beta - bg.alpha0) * (bg.beta + bg.alpha0)) / kPi;

    res.eta_triplet = align_odd_mode(inc, bg.beta, res.eta_guess, policy, opts);
    const double lo = bg.beta * (1.0 - opts.mode_window);
    const double hi = std::min(bg.beta * (1.0 + opts.mode_window), inc.first_lightline() * (1.0 - 1e-4));
    const StackGeometry g0{res.eta_triplet, 0.0};
    res.beta_odd = locate_mode(inc, g0, ModeParity::Odd, lo, hi, policy, opts.mode_grid, bg.beta).beta;
    res.beta_even = locate_mode(inc, g0, ModeParity::Even, lo, hi, policy, opts.mode_grid, res.beta_odd).beta;

    if (opts.measure_q) {
      res.q_outer_isolated = measure_resonance(PinStack::pair(2.0 * res.eta_triplet), inc, res.beta_odd,
                                               1e-4 * res.beta_odd, Feature::Peak, policy, opts.scan_threads)
                                 .q;
    }
    if (res.edit_supported) {
      const auto xe = find_xi_edit(inc, bg.beta, res.eta_triplet, policy, opts);
      res.xi_edit = xe.xi;
      res.beta_edit = xe.beta_edit;
      if (opts.measure_q) {
        const auto triplet = PinStack::triplet({res.eta_triplet, xe.xi});
        const auto notch = measure_resonance(triplet, inc, xe.beta_edit, 1e-7 * xe.beta_edit, Feature::Notch, policy,
                                             opts.scan_threads);
        res.q_notch = notch.q;
        const double mask = 50.0 * notch.fwhm;
        res.q_pair = measure_resonance(triplet, inc, xe.beta_edit, 1e-4 * xe.beta_edit, Feature::Peak, policy,
                                       opts.scan_threads, std::pair{notch.beta_center - mask, notch.beta_center + mask})
                         .q;
      }
    }
  } catch (const Error& e) {
    res.status = e.what();
  }
  return res;
}

std::vector<SteeringResult> steer(std::span<const double> theta_list, const TruncationPolicy& policy,
                                  const SteeringOptions& opts) {
  SteeringOptions inner = opts;
  if (theta_list.size() > 1) inner.scan_threads = 1;
  return parallel_map(
      theta_list.size(), [&](std::size_t i) { return steer_angle(theta_list[i], policy, inner); }, opts.threads);
}

std::vector<double> standard_angles_deg() { return {0, 3, 6, 9, 12, 15, 18, 21, 24, 27, 30, 33, 36, 45, 60}; }

}  // namespace platonic
