"""Exact and asymptotic activity statistics of a pair-deposition ring process.

The package computes the scaled cumulant generating function of the jump
activity for the bond-flip lattice gas on a ring (pair deposition at rate mu,
nearest-neighbor jumps at rate w, instantaneous pair annihilation), its exact
finite-size cumulants at the dynamical critical point, and their universal
large-size asymptotics, cross-validated by dense diagonalization and kinetic
Monte Carlo.
"""

from .model import (
    ModelParams,
    Sector,
    TiltedParams,
    critical_dispersion,
    critical_point,
    dispersion,
    stationary_density,
    tilted_params,
)
from .cgf import (
    CumulantReport,
    cgf,
    critical_cgf,
    critical_cumulant,
    lambda_derivative,
    mean_activity,
)
from .asymptotics import (
    CENTRAL_CHARGE,
    CUMULANT_SERIES_CALIBRATION,
    UniversalCoeffs,
    alpha_coefficient,
    beta_coefficient,
    cumulant_report,
    g_scaling,
    h_scaling,
    k0_scaled,
    k0_tilde,
    kappa0_star,
    kappa1_star,
    kappa_star,
    sound_velocity,
    universal_coeffs,
    variance_slope,
)
from .combinatorics import phi_asymptotic, phi_definition, phi_exact
from .oracles import build_hamiltonian, cgf_from_ed, fd_cumulants, fd_dispersion_derivative
from .mc import LatticeState, SimulationResult, TrajectoryStats, simulate, step

__version__ = "0.1.0"

__all__ = [
    "CENTRAL_CHARGE",
    "CUMULANT_SERIES_CALIBRATION",
    "CumulantReport",
    "LatticeState",
    "ModelParams",
    "Sector",
    "SimulationResult",
    "TiltedParams",
    "TrajectoryStats",
    "UniversalCoeffs",
    "alpha_coefficient",
    "beta_coefficient",
    "build_hamiltonian",
    "cgf",
    "cgf_from_ed",
    "critical_cgf",
    "critical_cumulant",
    "critical_dispersion",
    "critical_point",
    "cumulant_report",
    "dispersion",
    "fd_cumulants",
    "fd_dispersion_derivative",
    "g_scaling",
    "h_scaling",
    "k0_scaled",
    "k0_tilde",
    "kappa0_star",
    "kappa1_star",
    "kappa_star",
    "lambda_derivative",
    "mean_activity",
    "phi_asymptotic",
    "phi_definition",
    "phi_exact",
    "simulate",
    "sound_velocity",
    "stationary_density",
    "step",
    "tilted_params",
    "universal_coeffs",
    "variance_slope",
    "__version__",
]
