"""Pinned gratings in a thin elastic plate."""

from ._platonic import (
    PlatonicError,
    dispersion_residual,
    eigensystem,
    fabry_perot_model,
    find_beta_g,
    find_eta_star,
    greens,
    greens_truncated,
    mode_matrix,
    order_quantities,
    single_grating_reflectance,
    slab_guess,
    spectrum_scan,
    steer,
    standard_angles_deg,
)

__all__ = [
    "PlatonicError",
    "dispersion_residual",
    "eigensystem",
    "fabry_perot_model",
    "find_beta_g",
    "find_eta_star",
    "greens",
    "greens_truncated",
    "mode_matrix",
    "order_quantities",
    "single_grating_reflectance",
    "slab_guess",
    "spectrum_scan",
    "steer",
    "standard_angles_deg",
]
