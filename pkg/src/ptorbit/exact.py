"""Closed-form motion in the Scarf II well.

Adding and subtracting A+- = c exp(+- i Theta), Theta = theta0 + alpha t, gives

    sinh(alpha0 x / 2) = (delta - c sqrt(-E) cos Theta) / E
    p = -c sin Theta / cosh(alpha0 x / 2)

The inverse sinh is continued along the path with branch tracking, so x(t)
stays continuous when the argument loops around the branch points u = +-i.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchStepError, DegenerateError, InvalidArgument, PoleProximityError
from .factorization import c_of_E, scarf_scheme, theta0_from_initial
from .numerics import BranchContext, PhasePoint, asinh_principal, asinh_tracked
from .scarf import POLE_GUARD, ScarfParams, eval_V, hamiltonian
from .trajectory import MAX_POSITION_JUMP, Source, Trajectory

MAX_REFINEMENTS = 10


@dataclass(frozen=True)
class SolutionSpec:
    params: ScarfParams
    E: complex
    theta0: complex
    c: complex
    alpha: complex
    seed: complex | None = None  # alpha0 x0 / 2 on the branch of the initial state

    @property
    def root(self) -> complex:
        return cmath.sqrt(-self.E)

    @property
    def trig_period(self) -> float:
        """2 pi / |alpha|: period of Theta, not necessarily of x."""
        return 2 * math.pi / abs(self.alpha)

    def default_dt(self) -> float:
        return 1e-3 * self.trig_period


def solution_from_theta0(params: ScarfParams, E, theta0) -> SolutionSpec:
    E = complex(E)
    if E == 0:
        raise DegenerateError("E = 0 is not a bound-state energy")
    return SolutionSpec(params, E, complex(theta0), c_of_E(params, E), params.alpha0 * cmath.sqrt(-E))


def solution_from_state(params: ScarfParams, x0, p0, E=None) -> SolutionSpec:
    """Solution through (x0, p0); E defaults to H(x0, p0), otherwise it is checked."""
    x0, p0 = complex(x0), complex(p0)
    if E is None:
        E = hamiltonian(params, x0, p0)
    E = complex(E)
    spec = solution_from_theta0(params, E, 0)
    theta0 = theta0_from_initial(scarf_scheme(params), params, PhasePoint(x0, p0), E)
    return SolutionSpec(params, E, theta0, spec.c, spec.alpha, 0.5 * params.alpha0 * x0)


def solution_from_position(params: ScarfParams, E, x0, p_sign: str = "+") -> SolutionSpec:
    """Start at x0 with p0 = +-sqrt(E - V(x0)) (principal root)."""
    if p_sign not in ("+", "-"):
        raise InvalidArgument(f"p_sign must be '+' or '-', got {p_sign!r}")
    E, x0 = complex(E), complex(x0)
    p0 = cmath.sqrt(E - eval_V(params, x0))
    return solution_from_state(params, x0, p0 if p_sign == "+" else -p0, E)


def theta_at(spec: SolutionSpec, t):
    return spec.theta0 + spec.alpha * t


def u_at(spec: SolutionSpec, t):
    """sinh(alpha0 x / 2) along the solution; works on arrays."""
    theta = theta_at(spec, np.asarray(t, dtype=float))
    u = (spec.params.delta - spec.c * spec.root * np.cos(theta)) / spec.E
    return complex(u) if np.ndim(u) == 0 else u


def initial_context(spec: SolutionSpec) -> BranchContext:
    if spec.seed is not None:
        return BranchContext.seeded(spec.seed)
    return BranchContext.seeded(asinh_principal(u_at(spec, 0.0)))


def position_at(spec: SolutionSpec, t: float, ctx: BranchContext):
    """x(t) on the branch continuing ``ctx``; returns (x, new_ctx)."""
    w, ctx = asinh_tracked(u_at(spec, t), ctx)
    return 2.0 * w / spec.params.alpha0, ctx


def momentum_at(spec: SolutionSpec, t: float, x_t) -> complex:
    ch = cmath.cosh(0.5 * spec.params.alpha0 * complex(x_t))
    if abs(ch) < POLE_GUARD:
        raise PoleProximityError(f"momentum undefined at pole, x = {x_t!r}")
    return -spec.c * cmath.sin(theta_at(spec, t)) / ch


def _time_grid(t_max: float, dt: float) -> np.ndarray:
    if t_max == 0:
        return np.zeros(1)
    n = max(1, math.ceil(t_max / dt - 1e-9))
    return np.linspace(0.0, t_max, n + 1)


def _track(spec: SolutionSpec, t: np.ndarray) -> np.ndarray:
    u = u_at(spec, t)
    u = np.atleast_1d(u)
    ctx = initial_context(spec)
    w = np.empty(len(u), dtype=complex)
    for k, uk in enumerate(u.tolist()):
        w[k], ctx = asinh_tracked(uk, ctx)
    return w


def sample_trajectory(spec: SolutionSpec, t_max: float, dt: float | None = None) -> Trajectory:
    """Exact samples on t = 0, dt, ..., t_max.

    ``dt`` is halved (up to 10 times) when branch tracking becomes ambiguous or
    consecutive positions jump; the step actually used is in ``meta["dt"]``.
    """
    if t_max < 0:
        raise InvalidArgument("t_max must be non-negative")
    dt = spec.default_dt() if dt is None else float(dt)
    if dt <= 0:
        raise InvalidArgument("dt must be positive")
    for refinement in range(MAX_REFINEMENTS + 1):
        t = _time_grid(t_max, dt)
        try:
            w = _track(spec, t)
        except BranchStepError:
            if refinement == MAX_REFINEMENTS:
                raise
            dt *= 0.5
            continue
        x = 2.0 * w / spec.params.alpha0
        if len(x) > 1 and np.max(np.abs(np.diff(x))) >= MAX_POSITION_JUMP:
            if refinement == MAX_REFINEMENTS:
                raise BranchStepError("position jumps persist after maximal grid refinement")
            dt *= 0.5
            continue
        break
    ch = np.cosh(w)
    if np.any(np.abs(ch) < POLE_GUARD):
        raise PoleProximityError("trajectory passes through a pole of V")
    p = -spec.c * np.sin(theta_at(spec, t)) / ch
    shell = float(np.max(np.abs(hamiltonian(spec.params, x, p) - spec.E)))
    meta = {
        "dt": float(t[1] - t[0]) if len(t) > 1 else float(dt),
        "refinements": refinement,
        "theta0": spec.theta0,
        "shell_residual": shell,
    }
    return Trajectory(t, x, p, Source.ExactFormula, spec.params, spec.E, meta)


def real_split_solution(params: ScarfParams, E, theta0: float, t, sign: int = 1):
    """Position and momentum transcribed from the real-split closed form.

    c = c_R + i c_I is split into real and imaginary parts and theta0 is real;
    ``sign`` picks the upper (+1) or lower (-1) choice of the +- symbols.
    Only the real-delta, real-E case agrees with the solution: there x matches
    and p has the opposite overall sign to the one the equations of motion
    require (see tests). Kept as a cross-check; :func:`sample_trajectory` is
    the shipped solver.
    """
    E = complex(E)
    c = c_of_E(params, E)
    s = cmath.sqrt(-E)
    th = float(theta0) + params.alpha0 * s * np.asarray(t, dtype=float)
    dr, di = params.delta.real, params.delta.imag
    num = dr - c.real * s * np.cos(th) + sign * c.imag * s * np.sin(th)
    x = (2.0 / params.alpha0) * np.arcsinh(num / E)
    pn = E * (-c.real * np.sin(th) + sign * c.imag * np.cos(th) + sign * di / s)
    p = pn / np.sqrt(E * E + num * num)
    return x, p
