#pragma once

// Plane flexural wave incident on a finite stack of pinned gratings.
//
// The scattered field is sum_j A_j G(x - x_j d, y - y_j d); pinning u = 0 at
// every pin of the elementary cell gives M A = -U_incident. Plane-wave
// amplitudes are read from the propagating part of each translated Green's
// function, with phases referenced to the origin:
//
//   above the stack  u = sum_n r_n exp(i(alpha_n x + chi_n y))   (incidence from above)
//   below the stack  u = sum_n t_n exp(i(alpha_n x - chi_n y))
//
// and order energies normalised by the flux ratio chi_n / chi_0.

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "platonic/greens.hpp"
#include "platonic/mode_matrix.hpp"
#include "platonic/pins.hpp"

namespace platonic {

enum class Side { Above, Below };

struct IncidentWave {
  double theta_i = 0.0;
  double alpha0 = 0.0;
  double chi0 = 0.0;
  double beta = 0.0;
  cplx amplitude{1.0, 0.0};
  Side from = Side::Above;

  static IncidentWave from_angle(double beta, double theta_i, cplx amplitude = 1.0, Side from = Side::Above);
  /// Throws DomainError when |alpha0| >= beta (no propagating incident wave).
  static IncidentWave from_alpha0(double beta, double alpha0, cplx amplitude = 1.0, Side from = Side::Above);

  SpectralPoint point(double d = 1.0) const { return {alpha0, beta, d}; }
  cplx at(double x, double y) const;
};

struct PinStack {
  std::vector<Pin> pins;
  double d = 1.0;

  static PinStack empty(double d = 1.0) { return {{}, d}; }
  static PinStack single(double d = 1.0) { return {{{0.0, 0.0}}, d}; }
  /// Two aligned gratings at y = +-separation/2.
  static PinStack pair(double separation, double d = 1.0);
  static PinStack triplet(const StackGeometry& g);
};

struct Coefficients {
  std::vector<cplx> a;
  double condition = 1.0;
};

struct OrderAmplitude {
  int n = 0;
  double chi = 0.0;
  cplx r;
  cplx t;
};

struct SpectrumRecord {
  double alpha0 = 0.0;
  double beta = 0.0;
  std::map<int, double> r_orders;
  std::map<int, double> t_orders;
  double r = 0.0;
  double t = 0.0;
  double energy_residual = 0.0;
  std::string status = "ok";
  std::vector<OrderAmplitude> amplitudes;

  bool ok() const { return status == "ok"; }
};

/// Solve M A = -U_incident. Throws SingularSystem when cond(M) > 1e14.
Coefficients solve_coefficients(const SpectralPoint& p, const PinStack& stack, const IncidentWave& inc,
                                const TruncationPolicy& policy);

/// Total field (incident plus scattered) at a point given in units of d.
cplx total_field(const SpectralPoint& p, const PinStack& stack, const IncidentWave& inc,
                 const Coefficients& coeffs, double x, double y, const TruncationPolicy& policy);

std::vector<OrderAmplitude> plane_wave_amplitudes(const Coefficients& coeffs, const SpectralPoint& p,
                                                  const PinStack& stack, const IncidentWave& inc,
                                                  const TruncationPolicy& policy);

/// Solve and reduce to order-resolved energies at one point. Errors propagate.
SpectrumRecord evaluate(const PinStack& stack, const IncidentWave& inc, const TruncationPolicy& policy);

enum class ScanMode { FixedAngle, FixedAlpha0 };

struct ScanSpec {
  ScanMode mode = ScanMode::FixedAngle;
  double theta_i = 0.0;  // FixedAngle: alpha0 = beta sin(theta_i) at every beta
  double alpha0 = 0.0;   // FixedAlpha0
  double beta_lo = 1.0;
  double beta_hi = 2.0;
  int points = 201;
  bool refine = false;
  double refine_threshold = 0.1;  // bisect where |T_i+1 - T_i| exceeds this
  double step_floor = 1e-12;
  int max_points = 200000;
  std::vector<double> anchors;  // extra beta values always sampled
  Side from = Side::Above;
  bool keep_amplitudes = false;
  unsigned threads = 0;
};

IncidentWave incident_for(const ScanSpec& spec, double beta);

/// Records sorted by beta. Per-point failures are stored in the record status
/// (with NaN energies) instead of aborting the scan.
std::vector<SpectrumRecord> spectrum_scan(const PinStack& stack, const ScanSpec& spec,
                                          const TruncationPolicy& policy);

/// |r_0|^2 of a single grating.
double single_grating_reflectance(const SpectralPoint& p, const TruncationPolicy& policy);

/// Fabry-Perot pair transmittance 1 / (1 + F sin^2(delta/2)), F = 4 R / (1 - R)^2.
/// Qualitative model only. Throws DomainError unless 0 <= R_g < 1.
double fabry_perot_model(double r_g, double delta);

}  // namespace platonic
