#pragma once

// Green's-function matrix of a (possibly shifted) triplet of pinned gratings
// and its closed-form spectral analysis.
//
// Pin order within the elementary cell is top, centre, bottom:
//   a(+1) = (0, eta d), a(0) = (xi d, 0), a(-1) = (0, -eta d),
// which gives the structure
//
//        | M11 M12 M13 |
//   M =  | M21 M11 M21 |
//        | M13 M12 M11 |
//
// with M12 = G(-xi d, eta d), M21 = G(xi d, -eta d), M13 = G(0, 2 eta d).

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "platonic/greens.hpp"
#include "platonic/pins.hpp"

namespace platonic {

using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;

/// eta and xi are in units of d. Only the triplet (n_mirror == 1) is assembled
/// here; longer mirror stacks go through the scattering solver.
struct StackGeometry {
  double eta = 1.0;
  double xi = 0.0;
  double d = 1.0;
  int n_mirror = 1;

  void validate() const;
  std::vector<Pin> pins() const;
};

struct ModeMatrix {
  Mat3c entries;
  SpectralPoint point;
  StackGeometry geometry;

  cplx m11() const { return entries(0, 0); }
  cplx m12() const { return entries(0, 1); }
  cplx m13() const { return entries(0, 2); }
  cplx m21() const { return entries(1, 0); }

  /// Build directly from the four independent entries (synthetic matrices).
  static ModeMatrix from_entries(cplx m11, cplx m12, cplx m21, cplx m13);
};

/// Closed-form eigenpairs. The square root in lambda_pm is the principal
/// branch, so which even pair is labelled "minus" depends on the branch.
struct EigenSystem {
  cplx lambda1;
  cplx lambda_minus;
  cplx lambda_plus;
  Vec3c v_odd;
  Vec3c v_e_minus;
  Vec3c v_e_plus;
};

struct DispersionResidual {
  cplx odd;   // M11 - M13
  cplx even;  // 2 M12 M21 - M11 (M11 + M13)
  double log10_abs_odd = 0.0;
  double log10_abs_even = 0.0;
};

struct LightLineSpectrum {
  std::array<cplx, 3> eigenvalues;
  std::array<Vec3c, 3> eigenvectors;
};

struct CoincidenceReport {
  double even_even_diag = 0.0;      // |M13 + 2 M11|
  double even_even_coupling = 0.0;  // |M21 + M11^2 / (2 M12)|
  double even_odd = 0.0;            // |M12 M21 - M11^2|
  double odd = 0.0;                 // |M11 - M13|
  /// Eigenvalues (0, 0, 3 M11) and eigenvectors (-1,0,1), (-M12/M11,1,0),
  /// (1, M11/M12, 1); present when both even_odd and odd are below tolerance.
  std::optional<std::pair<std::array<cplx, 3>, std::array<Vec3c, 3>>> even_odd_eigenset;
};

ModeMatrix assemble(const SpectralPoint& p, const StackGeometry& g, const TruncationPolicy& policy);

/// Throws DegenerateFormula when |M12| vanishes but |M21| does not; when both
/// vanish the centre pin decouples and the eigenvectors are (1,0,1), (0,1,0).
EigenSystem eigensystem(const ModeMatrix& m);

DispersionResidual dispersion_residual(const ModeMatrix& m);

/// Eigen-structure of the light-line matrix [[1,X,X^2],[X,1,X],[X^2,X,1]],
/// eigenvalues ordered 1 - X^2, then the minus and plus even branches.
LightLineSpectrum lightline_matrix(cplx x);
Mat3c lightline_matrix_entries(cplx x);

CoincidenceReport coincidence_conditions(const ModeMatrix& m, double tol = 1e-6);

/// v^T M v with a plain transpose. v must have unit Euclidean norm.
cplx project(const ModeMatrix& m, const Vec3c& v);

/// v_A = (1, A, 1) / sqrt(A^2 + 2).
Vec3c even_family_vector(double a);

struct EvenFamilySurface {
  std::vector<double> beta;
  std::vector<double> a;
  std::vector<double> log10_abs;  // row-major: beta index outer, A inner

  double at(std::size_t i_beta, std::size_t i_a) const { return log10_abs[i_beta * a.size() + i_a]; }
  /// (beta, A) of the global minimum.
  std::pair<double, double> argmin() const;
};

EvenFamilySurface scan_even_family(std::span<const ModeMatrix> matrices, std::span<const double> a_grid);

}  // namespace platonic
