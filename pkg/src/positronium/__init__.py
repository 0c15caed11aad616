"""Semiclassical and variational binding-energy models for an
electron-positron pair, from point charges to flux-quantized current rings.

The package is organized bottom-up:

* quadrature - deterministic adaptive integration (embedded 15-point rule)
* elliptic   - complete elliptic integrals K, E by the AGM
* optimize   - bracketed scalar minimization, log-grid scans, root finding
* models     - the potential family zoo and its tuning operations
* flux       - the flux-quantization constraint linking regulator and radius
* variational - hydrogenic trial-state upper bound on the ground state
* acceptance - the reproduction suite behind `positronium reproduce`
* cli        - command-line verbs (scan, minimize, tune, flux-solve,
               variational, reproduce)

All quantities are dimensionless: energies in units of the electron rest
energy, lengths in reduced Compton lengths.
"""

__version__ = "1.0.0"

from .elliptic import ellip_E, ellip_K, ellip_KE
from .flux import (
    FluxError,
    FluxSolution,
    flux_constraint_integral,
    flux_rhs,
    solve_R_given_kappa,
    tune_bltp,
)
from .models import (
    ALPHA_FS,
    BIOT_SAVART_WINDOW,
    COULOMB_WINDOW,
    ZERO_ENERGY_RADIUS_COEFF,
    EnergyCurve,
    PhysicalConfig,
    PotentialModel,
    RingParams,
    bohr_energy,
    bohr_expansion_coeffs,
    binding_v1,
    binding_v2,
    binding_v3,
    binding_v4,
    coulomb_dipole,
    coulomb_point,
    kinetic_excess,
    kinetic_term,
    potential_scaling_law,
    potential_v1,
    potential_v2,
    potential_v3,
    potential_v4,
    ring_bltp,
    ring_energy_lines,
    ring_ml,
    ring_pair_energy_ML,
    sample_curve,
    scaled_ring_radius,
    scaling_model,
    tune_ring_radius,
)
from .optimize import (
    Bracket,
    OptimizeError,
    StationaryPoint,
    find_local_minima,
    find_root,
    minimize_scalar,
)
from .quadrature import (
    Integral,
    QuadratureError,
    QuadratureResult,
    integrate,
    integrate_semi_infinite,
)
from .variational import (
    TrialScale,
    VariationalResult,
    energy_expectation,
    kinetic_expectation,
    minimize_over_a,
    potential_expectation,
)

__all__ = [
    "__version__",
    # elliptic
    "ellip_E",
    "ellip_K",
    "ellip_KE",
    # quadrature
    "Integral",
    "QuadratureError",
    "QuadratureResult",
    "integrate",
    "integrate_semi_infinite",
    # optimize
    "Bracket",
    "OptimizeError",
    "StationaryPoint",
    "find_local_minima",
    "find_root",
    "minimize_scalar",
    # models
    "ALPHA_FS",
    "BIOT_SAVART_WINDOW",
    "COULOMB_WINDOW",
    "ZERO_ENERGY_RADIUS_COEFF",
    "EnergyCurve",
    "PhysicalConfig",
    "PotentialModel",
    "RingParams",
    "bohr_energy",
    "bohr_expansion_coeffs",
    "binding_v1",
    "binding_v2",
    "binding_v3",
    "binding_v4",
    "coulomb_dipole",
    "coulomb_point",
    "kinetic_excess",
    "kinetic_term",
    "potential_scaling_law",
    "potential_v1",
    "potential_v2",
    "potential_v3",
    "potential_v4",
    "ring_bltp",
    "ring_energy_lines",
    "ring_ml",
    "ring_pair_energy_ML",
    "sample_curve",
    "scaled_ring_radius",
    "scaling_model",
    "tune_ring_radius",
    # flux
    "FluxError",
    "FluxSolution",
    "flux_constraint_integral",
    "flux_rhs",
    "solve_R_given_kappa",
    "tune_bltp",
    # variational
    "TrialScale",
    "VariationalResult",
    "energy_expectation",
    "kinetic_expectation",
    "minimize_over_a",
    "potential_expectation",
]
