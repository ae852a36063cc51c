#pragma once

// Three-stage steering of the EDIT resonance for a chosen incidence:
//   1. beta_g where a single grating reflects all energy (R_g = |r_0|^2 = 1);
//   2. the pair separation eta* giving unit pair transmittance at beta_g, and
//      the triplet spacing that puts the odd (outer-pair) mode at beta_g;
//   3. the central-grating shift xi that moves the even mode onto the odd one.
// Q-factors of the resulting notch and of the outer pair are then measured
// from zoomed transmittance scans.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "platonic/greens.hpp"
#include "platonic/mode_matrix.hpp"
#include "platonic/scattering.hpp"

namespace platonic {

/// How alpha0 follows beta: fixed angle of incidence or fixed Bloch parameter.
struct Incidence {
  ScanMode mode = ScanMode::FixedAngle;
  double value = 0.0;  // theta_i in radians, or alpha0
  double d = 1.0;

  static Incidence angle(double theta_i, double d = 1.0) { return {ScanMode::FixedAngle, theta_i, d}; }
  static Incidence bloch(double alpha0, double d = 1.0) { return {ScanMode::FixedAlpha0, alpha0, d}; }

  double alpha0_at(double beta) const;
  SpectralPoint point(double beta) const { return {alpha0_at(beta), beta, d}; }
  IncidentWave wave(double beta) const;
  ScanSpec scan(double beta_lo, double beta_hi, int points) const;
  /// Lowest beta at which a diffraction order other than n = 0 starts to propagate.
  double first_lightline() const;
};

struct SteeringOptions {
  int beta_grid = 400;
  double reflectance_tol = 1e-10;
  int eta_grid = 2001;
  double eta_rel_halfwidth = 0.1;
  double pair_unity_tol = 1e-8;
  double mode_window = 0.01;  // relative half-width of the beta window for mode searches
  int mode_grid = 401;
  double xi_lo = 0.15;
  double xi_hi = 0.30;
  double xi_step = 1e-3;
  double merge_tol = 1e-7;
  bool measure_q = true;
  unsigned threads = 0;       // angles evaluated concurrently by steer()
  unsigned scan_threads = 0;  // workers inside each Q scan
};

struct BetaG {
  double beta = 0.0;
  double alpha0 = 0.0;
  double one_minus_r = 1.0;
};

/// Throws NoUnityReflectance if 1 - R_g stays above options.reflectance_tol.
/// Default bracket runs from just above the grazing limit to just below the
/// first light line.
BetaG find_beta_g(const Incidence& inc, std::optional<std::pair<double, double>> bracket,
                  const TruncationPolicy& policy, const SteeringOptions& opts = {});

/// pi m / sqrt(beta^2 - alpha0^2) in units of d. Throws DomainError if beta <= |alpha0| or m < 1.
double slab_guess(double beta, double alpha0, int m, double d = 1.0);

struct EtaStar {
  double eta = 0.0;
  double transmittance = 0.0;
};

/// Pair separation with unit transmittance at beta, searched within
/// +-eta_rel_halfwidth of the guess (widened once). Throws NoUnityTransmittance.
EtaStar find_eta_star(const Incidence& inc, double beta, double eta_guess, const TruncationPolicy& policy,
                      const SteeringOptions& opts = {});

/// Triplet spacing eta minimising |M11 - M13| at beta, i.e. the outer pair
/// (separation 2 eta) holds its odd mode at beta.
double align_odd_mode(const Incidence& inc, double beta, double eta_guess, const TruncationPolicy& policy,
                      const SteeringOptions& opts = {});

struct ModeLocation {
  double beta = 0.0;
  double residual = 0.0;  // |residual| at beta
};

enum class ModeParity { Odd, Even };

/// Minimum of |M11 - M13| (odd) or |2 M12 M21 - M11 (M11 + M13)| (even) over
/// beta in [lo, hi]; with several local minima, the one nearest `prefer`.
ModeLocation locate_mode(const Incidence& inc, const StackGeometry& g, ModeParity parity, double lo, double hi,
                         const TruncationPolicy& policy, int grid, std::optional<double> prefer = std::nullopt);

struct XiEdit {
  double xi = 0.0;
  double beta_edit = 0.0;
  double beta_odd = 0.0;
  double beta_even = 0.0;
};

/// Tracks the even-mode minimum as xi steps across [xi_lo, xi_hi] and solves
/// beta_odd - beta_even(xi) = 0. Throws ModesDidNotMerge with the closest approach.
XiEdit find_xi_edit(const Incidence& inc, double beta_g, double eta, const TruncationPolicy& policy,
                    const SteeringOptions& opts = {});

enum class Feature { Peak, Notch };

struct ResonancePeak {
  double beta_center = 0.0;
  double fwhm = 0.0;
  double q = 0.0;
  ModeParity kind = ModeParity::Even;
  Feature feature = Feature::Peak;
  int points_in_width = 0;
};

/// Q = beta_center / FWHM; half height for peaks, half depth below the lower
/// flanking maximum for notches. Throws Unresolved unless both half-level
/// crossings are inside the scan and at least min_points samples lie within
/// the width.
ResonancePeak q_factor(std::span<const SpectrumRecord> spectrum, Feature feature, int min_points = 20);

/// Zooms a uniform scan around `beta_center` until q_factor succeeds. Samples
/// inside `exclude` are dropped (e.g. a notch sitting on a broad peak).
ResonancePeak measure_resonance(const PinStack& stack, const Incidence& inc, double beta_center,
                                double halfwidth, Feature feature, const TruncationPolicy& policy,
                                unsigned threads = 0,
                                std::optional<std::pair<double, double>> exclude = std::nullopt);

struct SteeringResult {
  double theta_i = 0.0;
  double beta_g = 0.0;
  double alpha0_g = 0.0;
  double one_minus_rg = 0.0;
  double eta_guess = 0.0;
  double eta_star = 0.0;
  double pair_transmittance = 0.0;
  double m_eff = 0.0;
  double eta_triplet = 0.0;        // adjacent spacing of the EDIT triplet
  double beta_odd = 0.0;           // unshifted triplet modes at eta_triplet
  double beta_even = 0.0;
  bool edit_supported = true;      // false at exactly normal incidence
  std::optional<double> xi_edit;
  std::optional<double> beta_edit;
  std::optional<double> q_notch;
  std::optional<double> q_pair;           // broad transmission peak carrying the notch
  std::optional<double> q_outer_isolated;  // outer pair alone (separation 2 eta_triplet)
  std::string status = "ok";
};

SteeringResult steer_angle(double theta_i, const TruncationPolicy& policy, const SteeringOptions& opts = {});

/// Full pipeline per angle (radians); failures are recorded per angle.
std::vector<SteeringResult> steer(std::span<const double> theta_list, const TruncationPolicy& policy,
                                  const SteeringOptions& opts = {});

/// The fifteen incidence angles, in degrees, of the published steering table.
std::vector<double> standard_angles_deg();

}  // namespace platonic
