#include "platonic/dispersion_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "platonic/errors.hpp"
#include "platonic/format.hpp"
#include "platonic/parallel.hpp"

namespace platonic {

std::vector<DispersionCell> dispersion_grid(const GridAxis& alpha0, const GridAxis& beta,
                                            const StackGeometry& g, const TruncationPolicy& policy,
                                            unsigned threads) {
  if (alpha0.steps < 1 || beta.steps < 1) {
    throw Error(ErrorKind::InvalidArgument, "grid axes need at least one sample");
  }
  policy.validate();
  g.validate();
  const auto nb = static_cast<std::size_t>(beta.steps);
  const auto total = static_cast<std::size_t>(alpha0.steps) * nb;
  return parallel_map(
      total,
      [&](std::size_t k) {
        DispersionCell cell;
        cell.alpha0 = alpha0.at(static_cast<int>(k / nb));
        cell.beta = beta.at(static_cast<int>(k % nb));
        try {
          const auto m = assemble({cell.alpha0, cell.beta, g.d}, g, policy);
          const auto r = dispersion_residual(m);
          cell.log10_abs_odd = r.log10_abs_odd;
          cell.log10_abs_even = r.log10_abs_even;
        } catch (const Error& e) {
          cell.log10_abs_odd = std::numeric_limits<double>::quiet_NaN();
          cell.log10_abs_even = std::numeric_limits<double>::quiet_NaN();
          cell.status = std::string(to_string(e.kind()));
        }
        return cell;
      },
      threads);
}

void write_dispersion_csv(std::ostream& os, const std::vector<DispersionCell>& cells) {
  os << "alpha0,beta,log10_abs_odd,log10_abs_even,status\n";
  for (const auto& c : cells) {
    os << fmt_double(c.alpha0) << ',' << fmt_double(c.beta) << ',' << fmt_double(c.log10_abs_odd) << ','
       << fmt_double(c.log10_abs_even) << ',' << c.status << '\n';
  }
}

namespace {

// Vertex of the parabola through three equally spaced samples, as an offset
// in units of the spacing from the middle one.
double parabolic_offset(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (!(denom > 0.0)) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

double column_argmin(const std::vector<DispersionCell>& cells, std::size_t base, std::size_t nb,
                     const GridAxis& beta, double DispersionCell::*field) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nb; ++j) {
    const double v = cells[base + j].*field;
    if (std::isfinite(v) && v < best_value) {
      best_value = v;
      best = j;
    }
  }
  double offset = 0.0;
  if (best > 0 && best + 1 < nb) {
    offset = parabolic_offset(cells[base + best - 1].*field, best_value, cells[base + best + 1].*field);
  }
  const double step = nb > 1 ? (beta.hi - beta.lo) / static_cast<double>(nb - 1) : 0.0;
  return beta.at(static_cast<int>(best)) + offset * step;
}

}  // namespace

BranchMinima branch_minima(const std::vector<DispersionCell>& cells, const GridAxis& alpha0, const GridAxis& beta) {
  const auto nb = static_cast<std::size_t>(beta.steps);
  BranchMinima out;
  for (int i = 0; i < alpha0.steps; ++i) {
    const std::size_t base = static_cast<std::size_t>(i) * nb;
    out.alpha0.push_back(alpha0.at(i));
    out.beta_odd.push_back(column_argmin(cells, base, nb, beta, &DispersionCell::log10_abs_odd));
    out.beta_even.push_back(column_argmin(cells, base, nb, beta, &DispersionCell::log10_abs_even));
  }
  return out;
}

std::optional<CrossingEstimate> locate_crossing(const BranchMinima& minima) {
  for (std::size_t i = 0; i + 1 < minima.alpha0.size(); ++i) {
    const double g0 = minima.beta_odd[i] - minima.beta_even[i];
    const double g1 = minima.beta_odd[i + 1] - minima.beta_even[i + 1];
    if (g0 == 0.0) return CrossingEstimate{minima.alpha0[i], minima.beta_odd[i]};
    if (g0 * g1 < 0.0) {
      const double t = g0 / (g0 - g1);
      const double a = minima.alpha0[i] + t * (minima.alpha0[i + 1] - minima.alpha0[i]);
      const double b_odd = minima.beta_odd[i] + t * (minima.beta_odd[i + 1] - minima.beta_odd[i]);
      const double b_even = minima.beta_even[i] + t * (minima.beta_even[i + 1] - minima.beta_even[i]);
      return CrossingEstimate{a, 0.5 * (b_odd + b_even)};
    }
  }
  return std::nullopt;
}

}  // namespace platonic
