#include "platonic/optimize.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "platonic/errors.hpp"

namespace platonic {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // 1 / golden ratio

}  // namespace

ScalarMinimum golden_section_minimize(const Objective& f, double a, double b, double abs_tol, int max_iter) {
  if (a > b) std::swap(a, b);
  ScalarMinimum out;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  out.evaluations = 2;
  for (int it = 0; it < max_iter && (b - a) > abs_tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      if (!(c > a && c < d)) break;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      if (!(d < b && d > c)) break;
      fd = f(d);
    }
    ++out.evaluations;
  }
  if (fc <= fd) {
    out.x = c;
    out.fx = fc;
  } else {
    out.x = d;
    out.fx = fd;
  }
  return out;
}

GridSample sample_grid(const Objective& f, double lo, double hi, int points) {
  if (points < 3 || !(hi > lo)) {
    throw Error(ErrorKind::InvalidArgument, "grid search needs hi > lo and at least three points");
  }
  GridSample s;
  s.x.resize(static_cast<std::size_t>(points));
  s.fx.resize(static_cast<std::size_t>(points));
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const auto k = static_cast<std::size_t>(i);
    s.x[k] = lo + (hi - lo) * i / (points - 1);
    s.fx[k] = f(s.x[k]);
    if (s.fx[k] < best) {
      best = s.fx[k];
      s.argmin = k;
    }
  }
  return s;
}

ScalarMinimum bracketed_minimize(const Objective& f, double lo, double hi, int points, double abs_tol) {
  const auto grid = sample_grid(f, lo, hi, points);
  const std::size_t i = grid.argmin;
  const double a = grid.x[i == 0 ? 0 : i - 1];
  const double b = grid.x[std::min(i + 1, grid.x.size() - 1)];
  auto refined = golden_section_minimize(f, a, b, abs_tol);
  refined.evaluations += points;
  if (grid.fx[i] < refined.fx) {
    refined.x = grid.x[i];
    refined.fx = grid.fx[i];
  }
  return refined;
}

ScalarMinimum polish_modulus_minimum(const std::function<cplx(double)>& g, double x0, double step, int max_iter) {
  ScalarMinimum out;
  out.x = x0;
  cplx gx = g(x0);
  out.fx = std::abs(gx);
  out.evaluations = 1;
  double h = step;
  for (int it = 0; it < max_iter; ++it) {
    const cplx slope = (g(out.x + h) - g(out.x - h)) / (2.0 * h);
    out.evaluations += 2;
    const double s2 = std::norm(slope);
    if (!(s2 > 0.0)) break;
    const double shift = -(std::conj(slope) * gx).real() / s2;
    const double candidate = out.x + shift;
    const cplx gc = g(candidate);
    ++out.evaluations;
    if (!(std::abs(gc) <= out.fx)) break;
    out.x = candidate;
    gx = gc;
    out.fx = std::abs(gc);
    if (std::abs(shift) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.x)) break;
    h = std::max(std::abs(shift), 64.0 * std::numeric_limits<double>::epsilon() * std::abs(out.x));
  }
  return out;
}

double bracketed_root(const Objective& f, double a, double b, double abs_tol) {
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw Error(ErrorKind::InvalidArgument, "root bracket does not change sign");
  std::uintmax_t max_iter = 200;
  auto tol = [abs_tol](double lo, double hi) { return std::abs(hi - lo) <= abs_tol; };
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, max_iter);
  return 0.5 * (lo + hi);
}

}  // namespace platonic
