"""Exact and integrated classical orbits in the complexified Scarf II potential."""

from .analysis import OrbitClass, classify_orbit, detect_period, min_orbit_separation, turning_point_pairing
from .exact import (
    SolutionSpec,
    momentum_at,
    position_at,
    sample_trajectory,
    solution_from_position,
    solution_from_state,
    solution_from_theta0,
)
from .factorization import c_of_E, ladder_values, q_values, scarf_scheme, theta0_from_initial, verify_scheme
from .numerics import BranchContext, PhasePoint, asinh_principal, asinh_tracked, poisson_bracket
from .oracle import IntegratorConfig, energy_drift, integrate, pt_partner
from .scarf import PTPhase, ScarfParams, classify_phase, energy_window, eval_dV, eval_V, turning_points
from .trajectory import Source, Trajectory

__version__ = "0.1.0"

__all__ = [
    "asinh_principal",
    "asinh_tracked",
    "BranchContext",
    "c_of_E",
    "classify_orbit",
    "classify_phase",
    "detect_period",
    "energy_drift",
    "energy_window",
    "eval_dV",
    "eval_V",
    "integrate",
    "IntegratorConfig",
    "ladder_values",
    "min_orbit_separation",
    "momentum_at",
    "OrbitClass",
    "PhasePoint",
    "poisson_bracket",
    "position_at",
    "pt_partner",
    "PTPhase",
    "q_values",
    "sample_trajectory",
    "scarf_scheme",
    "ScarfParams",
    "solution_from_position",
    "solution_from_state",
    "solution_from_theta0",
    "SolutionSpec",
    "Source",
    "theta0_from_initial",
    "Trajectory",
    "turning_point_pairing",
    "turning_points",
    "verify_scheme",
]
