"""Identity suite run by ``ptorbit verify``: scheme residuals plus invariants along motion."""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedCase
from .factorization import (
    PRODUCT_TOL,
    FactorizationScheme,
    ResidualReport,
    c_of_E,
    product_identity_residual,
    scarf_scheme,
    verify_scheme,
)
from .numerics import PhasePoint
from .oracle import IntegratorConfig, energy_drift, integrate
from .scarf import ScarfParams, energy_window
from .trajectory import Trajectory

STANDARD_X = tuple(np.linspace(-2.0, 2.0, 21))
STANDARD_E = (-1.0, -2.0, -3.0)
Q_TOL = 1e-6
DRIFT_TOL = 1e-8
ENDPOINT_TOL = 1e-9


def ladder_along(scheme: FactorizationScheme, traj: Trajectory, E):
    """A+ and A- at every sample of a trajectory, energy parts taken at E."""
    E = complex(E)
    f = np.array([scheme.f(v) for v in traj.x.tolist()])
    B = np.array([scheme.B(v, E) for v in traj.x.tolist()])
    return -1j * f * traj.p + B, 1j * f * traj.p + B


def q_deviation(params: ScarfParams, traj: Trajectory) -> float:
    """Max drift of Q+- = A+- exp(-+ i alpha t) from their initial values."""
    E = complex(traj.energy)
    scheme = scarf_scheme(params)
    alpha = scheme.alphaH(E)
    a_plus, a_minus = ladder_along(scheme, traj, E)
    q_plus = a_plus * np.exp(-1j * alpha * traj.t)
    q_minus = a_minus * np.exp(1j * alpha * traj.t)
    return float(max(np.max(np.abs(q_plus - q_plus[0])), np.max(np.abs(q_minus - q_minus[0]))))


def identity_suite(params: ScarfParams, E, initial: PhasePoint | None = None,
                   n_product: int = 100, n_bracket: int = 50, t_max: float = 10.0) -> ResidualReport:
    E = complex(E)
    scheme = scarf_scheme(params)
    energies = list(STANDARD_E) + ([E] if E not in STANDARD_E else [])
    report = verify_scheme(scheme, params, STANDARD_X, [E], n_bracket=n_bracket)
    # determining equations over the full standard energy grid
    report.rows[:2] = verify_scheme(scheme, params, STANDARD_X, energies, n_bracket=0).rows[:2]
    report.add("A+ A- = E + gamma0 - delta^2/E (relative)",
               product_identity_residual(scheme, params, E, n_product), PRODUCT_TOL, n_product)
    try:
        window = energy_window(params)
    except UnsupportedCase:
        window = None
    if window is not None:
        ends = [e for e in (window.lower, window.upper) if e != 0]
        report.add("c(E) at window endpoints", max(abs(c_of_E(params, e)) for e in ends), ENDPOINT_TOL, len(ends))
    if initial is not None:
        traj = integrate(params, initial, IntegratorConfig(t_max=t_max))
        report.add("Q+- constancy along ODE trajectory", q_deviation(params, traj), Q_TOL, len(traj))
        report.add("ODE energy drift", energy_drift(traj, params, traj.energy), DRIFT_TOL, len(traj))
    return report
