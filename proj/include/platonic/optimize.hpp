#pragma once

// One-dimensional bracketed searches used by the steering stages. Objectives
// are smooth but very sharply peaked, so every search starts from a coarse
// grid that brackets the feature before a derivative-free refinement.

#include <functional>
#include <vector>

#include "platonic/greens.hpp"

namespace platonic {

using Objective = std::function<double(double)>;

struct ScalarMinimum {
  double x = 0.0;
  double fx = 0.0;
  int evaluations = 0;
};

/// Golden-section search for a minimum of a unimodal f on [a, b]; stops when
/// the bracket is narrower than abs_tol or stops shrinking in floating point.
ScalarMinimum golden_section_minimize(const Objective& f, double a, double b, double abs_tol,
                                      int max_iter = 400);

struct GridSample {
  std::vector<double> x;
  std::vector<double> fx;
  std::size_t argmin = 0;
};

GridSample sample_grid(const Objective& f, double lo, double hi, int points);

/// Grid search followed by golden-section refinement between the neighbours
/// of the best grid point.
ScalarMinimum bracketed_minimize(const Objective& f, double lo, double hi, int points, double abs_tol);

/// Refine a local minimum of |g| on the real axis for analytic g by fitting
/// g(x + s) ~ g(x) + g'(x) s and stepping to the closest approach. Starting
/// point should already be close (e.g. from a golden-section search).
ScalarMinimum polish_modulus_minimum(const std::function<cplx(double)>& g, double x0, double step,
                                     int max_iter = 8);

/// Root of f on [a, b] with f(a), f(b) of opposite sign.
double bracketed_root(const Objective& f, double a, double b, double abs_tol);

}  // namespace platonic
