#pragma once

#include <complex>
#include <random>

#include "platonic/greens.hpp"

namespace testing {

using platonic::cplx;

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Spectral point at least `margin` (relative to beta) away from every light line.
inline platonic::SpectralPoint random_point(std::mt19937_64& rng, double beta_max = 12.0, double margin = 1e-3) {
  std::uniform_real_distribution<double> ua(-platonic::kPi, platonic::kPi);
  std::uniform_real_distribution<double> ub(0.2, beta_max);
  for (;;) {
    platonic::SpectralPoint p{ua(rng), ub(rng), 1.0};
    if (platonic::lightline_distance(p) > margin) return p;
  }
}

// Point with only the zeroth order propagating.
inline platonic::SpectralPoint random_single_order_point(std::mt19937_64& rng, double margin = 1e-3) {
  std::uniform_real_distribution<double> ua(-1.5, 1.5);
  std::uniform_real_distribution<double> ub(0.2, 6.0);
  for (;;) {
    const double a = ua(rng);
    const double b = ub(rng);
    if (b <= std::abs(a) || b >= platonic::kTwoPi - std::abs(a)) continue;
    platonic::SpectralPoint p{a, b, 1.0};
    if (platonic::lightline_distance(p) > margin) return p;
  }
}

}  // namespace testing
