#pragma once

// Quasi-periodic Green's function of the biharmonic operator (Delta^2 - beta^4)
// for a single grating of point sources with period d, in plane-wave form.
//
// The spectral parameter beta relates to the angular frequency through
// beta^2 = omega * sqrt(rho h / D); time dependence exp(-i omega t) is implied,
// so exp(+i chi_n |y|) is outgoing.

#include <complex>

namespace platonic {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Coordinate of every scan and search: Bloch parameter, spectral parameter
/// and grating period. alpha0 is stored as given (no zone reduction).
struct SpectralPoint {
  double alpha0 = 0.0;
  double beta = 1.0;
  double d = 1.0;

  /// Throws InvalidArgument unless beta > 0 and d > 0 (all finite).
  void validate() const;
};

struct OrderQuantities {
  int n = 0;
  double alpha_n = 0.0;
  cplx chi_n;  // real >= 0 for propagating orders, i*|.| for evanescent ones
  double tau_n = 0.0;
};

/// Number of plane-wave orders kept each side of n = 0.
///
/// n_self is used on the source grating line (y == 0), n_far elsewhere; off
/// the line the count is raised automatically when |y| is so small that the
/// exp(-2 pi n |y| / d) decay has not set in by n_far. With tail_correction the
/// on-line sum is completed by the asymptotic expansion of the discarded
/// orders whenever x is a whole number of periods.
struct TruncationPolicy {
  int n_self = 1000;
  int n_far = 20;
  double lightline_tol = 1e-8;
  bool tail_correction = true;

  void validate() const;
};

struct GreensValue {
  cplx value;
  int terms = 0;  // N in the symmetric window [-N, N]
  bool tail_corrected = false;
};

OrderQuantities order_quantities(const SpectralPoint& p, int n);

/// G(x, y; alpha0, beta) with the propagating and evanescent series summed
/// order by order.
///
/// Throws LightLineProximity when a retained |chi_n| <= lightline_tol * beta
/// and NonFinite if the accumulated value is not finite.
GreensValue greens(const SpectralPoint& p, double x, double y, const TruncationPolicy& policy);

/// Same sum with an explicit symmetric truncation N (no automatic choice).
GreensValue greens_truncated(const SpectralPoint& p, double x, double y, int terms,
                             double lightline_tol, bool tail_correction);

/// Smallest |chi_n| / beta over all orders; zero exactly on a light line.
double lightline_distance(const SpectralPoint& p);

}  // namespace platonic
