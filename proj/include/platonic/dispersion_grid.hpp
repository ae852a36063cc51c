#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "platonic/mode_matrix.hpp"

namespace platonic {

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;  // number of samples; 1 means the single value lo

  double at(int i) const { return steps <= 1 ? lo : lo + (hi - lo) * i / (steps - 1); }
};

struct DispersionCell {
  double alpha0 = 0.0;
  double beta = 0.0;
  double log10_abs_odd = 0.0;
  double log10_abs_even = 0.0;
  std::string status = "ok";  // error kind when the cell could not be evaluated
};

/// Residual grid over an (alpha0, beta) box; rows ordered alpha0-major.
/// Cells that fail carry NaN residuals and the error kind in `status`.
std::vector<DispersionCell> dispersion_grid(const GridAxis& alpha0, const GridAxis& beta,
                                            const StackGeometry& g, const TruncationPolicy& policy,
                                            unsigned threads = 0);

void write_dispersion_csv(std::ostream& os, const std::vector<DispersionCell>& cells);

/// Per-column minima of the two residuals and the point where the odd and
/// even trajectories cross, interpolated between the bracketing alpha0 columns.
struct CrossingEstimate {
  double alpha0 = 0.0;
  double beta = 0.0;
};

struct BranchMinima {
  std::vector<double> alpha0;
  std::vector<double> beta_odd;
  std::vector<double> beta_even;
};

BranchMinima branch_minima(const std::vector<DispersionCell>& cells, const GridAxis& alpha0, const GridAxis& beta);
std::optional<CrossingEstimate> locate_crossing(const BranchMinima& minima);

}  // namespace platonic
