#include "platonic/mode_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "platonic/errors.hpp"

namespace platonic {

namespace {

constexpr double kDegenerate = 1e-300;

double log10_abs(cplx z) {
  const double a = std::abs(z);
  return a > 0.0 ? std::log10(a) : -std::numeric_limits<double>::infinity();
}

}  // namespace

void StackGeometry::validate() const {
  if (!(eta > 0.0) || !(d > 0.0) || !std::isfinite(eta) || !std::isfinite(xi) || n_mirror < 1) {
    std::ostringstream msg;
    msg << "stack geometry requires eta > 0, d > 0, n_mirror >= 1 (got eta=" << eta
        << ", xi=" << xi << ", d=" << d << ", n_mirror=" << n_mirror << ")";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

std::vector<Pin> StackGeometry::pins() const {
  validate();
  // Mirror gratings repeat at multiples of eta above and below the centre one.
  std::vector<Pin> out;
  for (int k = n_mirror; k >= 1; --k) out.push_back({0.0, k * eta});
  out.push_back({xi, 0.0});
  for (int k = 1; k <= n_mirror; ++k) out.push_back({0.0, -k * eta});
  return out;
}

ModeMatrix ModeMatrix::from_entries(cplx m11, cplx m12, cplx m21, cplx m13) {
  ModeMatrix m;
  m.entries << m11, m12, m13,
               m21, m11, m21,
               m13, m12, m11;
  return m;
}

ModeMatrix assemble(const SpectralPoint& p, const StackGeometry& g, const TruncationPolicy& policy) {
  p.validate();
  g.validate();
  if (g.n_mirror != 1) {
    throw Error(ErrorKind::InvalidArgument, "mode matrix analysis covers the triplet only (n_mirror = 1)");
  }
  if (std::abs(g.d - p.d) > 1e-15 * p.d) {
    throw Error(ErrorKind::InvalidArgument, "geometry and spectral point disagree on the period d");
  }
  const auto pins = g.pins();
  ModeMatrix m;
  m.entries = pin_matrix(p, pins, policy);
  m.point = p;
  m.geometry = g;
  return m;
}

EigenSystem eigensystem(const ModeMatrix& m) {
  const cplx m11 = m.m11();
  const cplx m12 = m.m12();
  const cplx m21 = m.m21();
  const cplx m13 = m.m13();

  EigenSystem es;
  es.lambda1 = m11 - m13;
  const cplx disc = std::sqrt(8.0 * m12 * m21 + m13 * m13);
  es.lambda_minus = 0.5 * (2.0 * m11 + m13 - disc);
  es.lambda_plus = 0.5 * (2.0 * m11 + m13 + disc);
  es.v_odd << -1.0, 0.0, 1.0;

  const bool m12_zero = std::abs(m12) <= kDegenerate;
  const bool m21_zero = std::abs(m21) <= kDegenerate;
  if (m12_zero && m21_zero) {
    // Decoupled centre pin: outer pair (1,0,1) with M11 + M13, centre (0,1,0) with M11.
    const Vec3c outer(1.0, 0.0, 1.0);
    const Vec3c centre(0.0, 1.0, 0.0);
    const cplx outer_value = m11 + m13;
    const bool plus_is_outer = std::abs(es.lambda_plus - outer_value) <= std::abs(es.lambda_plus - m11);
    es.v_e_plus = plus_is_outer ? outer : centre;
    es.v_e_minus = plus_is_outer ? centre : outer;
    return es;
  }
  if (m12_zero) {
    throw Error(ErrorKind::DegenerateFormula,
                "M12 vanishes while M21 does not; the even eigenvectors are defective");
  }
  es.v_e_minus << 1.0, (-m13 - disc) / (2.0 * m12), 1.0;
  es.v_e_plus << 1.0, (-m13 + disc) / (2.0 * m12), 1.0;
  return es;
}

DispersionResidual dispersion_residual(const ModeMatrix& m) {
  DispersionResidual r;
  r.odd = m.m11() - m.m13();
  r.even = 2.0 * m.m12() * m.m21() - m.m11() * (m.m11() + m.m13());
  r.log10_abs_odd = log10_abs(r.odd);
  r.log10_abs_even = log10_abs(r.even);
  return r;
}

Mat3c lightline_matrix_entries(cplx x) {
  Mat3c m;
  m << 1.0, x, x * x,
       x, 1.0, x,
       x * x, x, 1.0;
  return m;
}

LightLineSpectrum lightline_matrix(cplx x) {
  const cplx root = std::sqrt(8.0 + x * x);
  LightLineSpectrum s;
  s.eigenvalues = {1.0 - x * x, 0.5 * (2.0 + x * x - x * root), 0.5 * (2.0 + x * x + x * root)};
  s.eigenvectors[0] = Vec3c(-1.0, 0.0, 1.0);
  s.eigenvectors[1] = Vec3c(1.0, 0.5 * (-x - root), 1.0);
  s.eigenvectors[2] = Vec3c(1.0, 0.5 * (-x + root), 1.0);
  return s;
}

CoincidenceReport coincidence_conditions(const ModeMatrix& m, double tol) {
  const cplx m11 = m.m11();
  const cplx m12 = m.m12();
  const cplx m21 = m.m21();
  const cplx m13 = m.m13();

  CoincidenceReport r;
  r.even_even_diag = std::abs(m13 + 2.0 * m11);
  r.even_even_coupling = std::abs(m12) > kDegenerate ? std::abs(m21 + m11 * m11 / (2.0 * m12))
                                                     : std::numeric_limits<double>::infinity();
  r.even_odd = std::abs(m12 * m21 - m11 * m11);
  r.odd = std::abs(m11 - m13);
  if (r.even_odd <= tol && r.odd <= tol && std::abs(m12) > kDegenerate && std::abs(m11) > kDegenerate) {
    std::array<cplx, 3> values{0.0, 0.0, 3.0 * m11};
    std::array<Vec3c, 3> vectors{Vec3c(-1.0, 0.0, 1.0), Vec3c(-m12 / m11, 1.0, 0.0),
                                 Vec3c(1.0, m11 / m12, 1.0)};
    r.even_odd_eigenset = std::make_pair(values, vectors);
  }
  return r;
}

cplx project(const ModeMatrix& m, const Vec3c& v) {
  if (std::abs(v.norm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::DomainError, "projection vector must have unit norm");
  }
  return v.transpose() * m.entries * v;
}

Vec3c even_family_vector(double a) {
  return Vec3c(1.0, a, 1.0) / std::sqrt(a * a + 2.0);
}

std::pair<double, double> EvenFamilySurface::argmin() const {
  const auto it = std::min_element(log10_abs.begin(), log10_abs.end());
  const auto k = static_cast<std::size_t>(it - log10_abs.begin());
  return {beta[k / a.size()], a[k % a.size()]};
}

EvenFamilySurface scan_even_family(std::span<const ModeMatrix> matrices, std::span<const double> a_grid) {
  EvenFamilySurface s;
  s.a.assign(a_grid.begin(), a_grid.end());
  s.beta.reserve(matrices.size());
  s.log10_abs.reserve(matrices.size() * a_grid.size());
  std::vector<Vec3c> vectors;
  vectors.reserve(a_grid.size());
  for (const double a : a_grid) vectors.push_back(even_family_vector(a));
  for (const auto& m : matrices) {
    s.beta.push_back(m.point.beta);
    for (const auto& v : vectors) s.log10_abs.push_back(log10_abs(project(m, v)));
  }
  return s;
}

}  // namespace platonic
