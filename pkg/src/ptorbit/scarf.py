"""The complexified Scarf II well.

    V(x) = -gamma0 sech^2(alpha0 x / 2) + 2 delta sech(alpha0 x / 2) tanh(alpha0 x / 2)

Real ``delta`` gives the ordinary real well, purely imaginary ``delta`` the
PT-symmetric well, and anything else a generic complex potential.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, InvalidArgument, PoleProximityError, UnsupportedCase
from .numerics import asinh_candidate, asinh_principal, check_finite

POLE_GUARD = 1e-12
DEFAULT_TP_WINDOW = 3


@dataclass(frozen=True)
class ScarfParams:
    alpha0: float
    gamma0: float
    delta: complex = 0j

    def __post_init__(self):
        if not (math.isfinite(self.alpha0) and self.alpha0 > 0):
            raise InvalidArgument(f"alpha0 must be positive, got {self.alpha0}")
        if not (math.isfinite(self.gamma0) and self.gamma0 > 0):
            raise InvalidArgument(f"gamma0 must be positive, got {self.gamma0}")
        object.__setattr__(self, "alpha0", float(self.alpha0))
        object.__setattr__(self, "gamma0", float(self.gamma0))
        object.__setattr__(self, "delta", check_finite(self.delta, "delta"))

    @property
    def delta_r(self) -> float:
        return self.delta.real

    @property
    def delta_i(self) -> float:
        return self.delta.imag


class PTPhase(enum.Enum):
    RealPotential = "RealPotential"
    PTUnbroken = "PTUnbroken"
    PTBroken = "PTBroken"
    NonPTSymmetric = "NonPTSymmetric"


class WindowKind(enum.Enum):
    RealInterval = "RealInterval"
    ComplexConjugatePair = "ComplexConjugatePair"


@dataclass(frozen=True)
class EnergyWindow:
    lower: complex
    upper: complex
    kind: WindowKind

    def contains(self, E, tol=0.0) -> bool:
        """True if ``E`` lies in the window, including its boundary within ``tol``."""
        E = complex(E)
        if self.kind is WindowKind.RealInterval:
            return abs(E.imag) <= tol and self.lower.real - tol <= E.real <= self.upper.real + tol
        # the pair bounds the vertical segment Re E = -gamma0/2
        lo, hi = sorted((self.lower.imag, self.upper.imag))
        return abs(E.real - self.lower.real) <= tol and lo - tol <= E.imag <= hi + tol

    @property
    def midpoint(self) -> complex:
        return 0.5 * (self.lower + self.upper)


@dataclass(frozen=True)
class TurningPoint:
    location: complex
    u_root: int
    branch: int


@dataclass(frozen=True)
class TurningPointSet:
    points: tuple
    energy: complex
    double_root: bool = False
    u_roots: tuple = field(default=())

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def locations(self) -> np.ndarray:
        return np.array([tp.location for tp in self.points], dtype=complex)


def _half_arg(params: ScarfParams, x):
    return 0.5 * params.alpha0 * x


def _guard(ch):
    if np.any(np.abs(ch) < POLE_GUARD):
        raise PoleProximityError("x is within the pole guard of V (cosh(alpha0 x/2) ~ 0)")


def eval_V(params: ScarfParams, x):
    """Potential at complex ``x`` (scalar or array)."""
    y = _half_arg(params, np.asarray(x, dtype=complex))
    ch = np.cosh(y)
    _guard(ch)
    sech = 1.0 / ch
    val = -params.gamma0 * sech**2 + 2.0 * params.delta * sech * np.tanh(y)
    return complex(val) if val.ndim == 0 else val


def eval_dV(params: ScarfParams, x):
    """Analytic derivative dV/dx."""
    y = _half_arg(params, np.asarray(x, dtype=complex))
    ch = np.cosh(y)
    _guard(ch)
    sech = 1.0 / ch
    th = np.tanh(y)
    a = params.alpha0
    val = params.gamma0 * a * sech**2 * th + params.delta * a * sech * (sech**2 - th**2)
    return complex(val) if val.ndim == 0 else val


def hamiltonian(params: ScarfParams, x, p):
    return p * p + eval_V(params, x)


def classify_phase(params: ScarfParams) -> PTPhase:
    d = params.delta
    if d.imag == 0:
        return PTPhase.RealPotential
    if d.real != 0:
        return PTPhase.NonPTSymmetric
    if params.gamma0 >= 2 * abs(d.imag):
        return PTPhase.PTUnbroken
    return PTPhase.PTBroken


def energy_window(params: ScarfParams) -> EnergyWindow:
    """Classically allowed energies, where c(E) is real."""
    phase = classify_phase(params)
    g = params.gamma0
    if phase is PTPhase.RealPotential:
        dr = params.delta.real
        return EnergyWindow(complex(0.5 * (-g - math.sqrt(g * g + 4 * dr * dr))), 0j, WindowKind.RealInterval)
    if phase is PTPhase.NonPTSymmetric:
        raise UnsupportedCase("energy window is only defined for real or purely imaginary delta")
    di = params.delta.imag
    disc = g * g - 4 * di * di
    if phase is PTPhase.PTUnbroken:
        r = math.sqrt(disc)
        return EnergyWindow(complex(0.5 * (-g - r)), complex(0.5 * (-g + r)), WindowKind.RealInterval)
    r = math.sqrt(-disc)
    # upper = conj(lower) by construction
    return EnergyWindow(complex(-0.5 * g, -0.5 * r), complex(-0.5 * g, 0.5 * r), WindowKind.ComplexConjugatePair)


def turning_point_u_roots(params: ScarfParams, E):
    """Roots of E u^2 - 2 delta u + (E + gamma0) = 0 with u = sinh(alpha0 x / 2)."""
    E = check_finite(E, "E")
    if E == 0:
        raise DegenerateError("E = 0 makes the turning-point quadratic degenerate")
    d = params.delta
    disc = d * d - E * (E + params.gamma0)
    sq = cmath.sqrt(disc)
    return (d + sq) / E, (d - sq) / E, abs(disc) < 1e-12


def turning_points(params: ScarfParams, E, branch_window: int = DEFAULT_TP_WINDOW) -> TurningPointSet:
    """All roots of E - V(x) = 0 on branches |n| <= ``branch_window``.

    Sorted by |Im x| then Re x.
    """
    u1, u2, double = turning_point_u_roots(params, E)
    scale = 2.0 / params.alpha0
    points = []
    roots = ((1, u1),) if double else ((1, u1), (2, u2))
    for k, u in roots:
        w0 = asinh_principal(u)
        for n in range(-branch_window, branch_window + 1):
            points.append(TurningPoint(scale * asinh_candidate(w0, n), k, n))
    points.sort(key=lambda tp: (round(abs(tp.location.imag), 12), round(tp.location.real, 12)))
    return TurningPointSet(tuple(points), complex(E), double, (u1, u2))
