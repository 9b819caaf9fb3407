"""Independent integration of Hamilton's equations x' = 2p, p' = -V'(x).

Time is real, so the complex state is integrated as the real 4-vector
(Re x, Im x, Re p, Im p) with an adaptive 8th-order Dormand-Prince scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DivergenceError, IntegrationHalt, InvalidArgument, UnsupportedCase
from .numerics import PhasePoint
from .scarf import ScarfParams, eval_dV, hamiltonian
from .trajectory import Source, Trajectory


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-10
    max_step: float = 1e-2
    t_max: float = 10.0
    dt: float = 1e-3  # spacing of the resampled output grid

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol"):
            v = getattr(self, name)
            if not (0 < v <= 1e-2):
                raise InvalidArgument(f"{name} must lie in (0, 1e-2], got {v}")
        if not self.t_max > 0:
            raise InvalidArgument("t_max must be positive")
        if not (self.max_step > 0 and self.dt > 0):
            raise InvalidArgument("max_step and dt must be positive")


def _rhs(params: ScarfParams):
    def f(t, y):
        x = complex(y[0], y[1])
        dV = eval_dV(params, x)
        return [2 * y[2], 2 * y[3], -dV.real, -dV.imag]

    return f


def integrate(params: ScarfParams, initial: PhasePoint, cfg: IntegratorConfig = IntegratorConfig(),
              backward: bool = False) -> Trajectory:
    """Integrate from ``initial`` over ``cfg.t_max`` (towards negative time if ``backward``)."""
    x0, p0 = complex(initial.x), complex(initial.p)
    if not all(math.isfinite(v) for v in (x0.real, x0.imag, p0.real, p0.imag)):
        raise InvalidArgument("initial state must be finite")
    E = hamiltonian(params, x0, p0)  # also rejects starts at a pole
    t0 = float(initial.t)
    sign = -1.0 if backward else 1.0
    n = max(1, math.ceil(cfg.t_max / cfg.dt - 1e-9))
    t_eval = t0 + sign * np.linspace(0.0, cfg.t_max, n + 1)
    sol = solve_ivp(
        _rhs(params),
        (t0, t0 + sign * cfg.t_max),
        [x0.real, x0.imag, p0.real, p0.imag],
        method="DOP853",
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
        t_eval=t_eval,
    )
    t, y = sol.t, sol.y
    if backward:
        t, y = t[::-1], y[:, ::-1]
    meta = {"rel_tol": cfg.rel_tol, "abs_tol": cfg.abs_tol, "max_step": cfg.max_step, "nfev": int(sol.nfev)}

    def build():
        return Trajectory(t, y[0] + 1j * y[1], y[2] + 1j * y[3], Source.OdeIntegration, params, E, meta,
                          check_continuity=False)

    if not np.all(np.isfinite(y)):
        raise DivergenceError("integration produced a non-finite state")
    if sol.status != 0:
        partial = build() if len(t) else None
        raise IntegrationHalt(f"integration halted at t={sol.t[-1] if len(sol.t) else t0}: {sol.message}", partial)
    return build()


def energy_drift(traj: Trajectory, params: ScarfParams, E) -> float:
    """max |p^2 + V(x) - E| over the samples."""
    return float(np.max(np.abs(hamiltonian(params, traj.x, traj.p) - complex(E))))


def ode_residual(traj: Trajectory, params: ScarfParams) -> float:
    """Max residual of x' = 2p, p' = -V'(x) with 4th-order central differences.

    Needs a uniform grid with at least five samples; endpoints are excluded.
    """
    if len(traj) < 5 or not traj.is_uniform():
        raise InvalidArgument("residual needs a uniform grid with >= 5 samples")
    h = traj.dt

    def d(z):
        return (z[:-4] - 8 * z[1:-3] + 8 * z[3:-1] - z[4:]) / (12 * h)

    xi, pi = traj.x[2:-2], traj.p[2:-2]
    rx = np.abs(d(traj.x) - 2 * pi)
    rp = np.abs(d(traj.p) + eval_dV(params, xi))
    return float(max(rx.max(), rp.max()))


def pt_partner(traj: Trajectory) -> Trajectory:
    """Parity-time image y(t) = -conj(x(-t)), q(t) = conj(p(-t))."""
    params = traj.params
    if params is None or params.delta.real != 0:
        raise UnsupportedCase("PT partner requires a purely imaginary (or zero) delta")
    energy = None if traj.energy is None else complex(traj.energy).conjugate()
    return Trajectory(
        -traj.t[::-1],
        -np.conj(traj.x[::-1]),
        np.conj(traj.p[::-1]),
        traj.source,
        params,
        energy,
        {**traj.meta, "pt_partner": not traj.meta.get("pt_partner", False)},
        check_continuity=traj.check_continuity,
    )

