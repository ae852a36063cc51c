#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "platonic/greens.hpp"

namespace platonic {

/// One pin per grating per period; coordinates in units of d.
struct Pin {
  double x = 0.0;
  double y = 0.0;
};

/// Matrix of Green's-function samples M(m, j) = G(a_m - a_j) over the pins of
/// one elementary cell. Entries on the same grating line (dy == 0) use the
/// on-line truncation of the policy, all others the off-line one.
Eigen::MatrixXcd pin_matrix(const SpectralPoint& p, std::span<const Pin> pins,
                            const TruncationPolicy& policy);

}  // namespace platonic
