"""Sampled trajectories shared by the exact solver, the ODE oracle and analysis."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument
from .scarf import ScarfParams, hamiltonian

MAX_POSITION_JUMP = 0.5


class Source(enum.Enum):
    ExactFormula = "ExactFormula"
    OdeIntegration = "OdeIntegration"


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time-ordered samples (t, x, p) plus the scenario they came from."""

    t: np.ndarray
    x: np.ndarray
    p: np.ndarray
    source: Source
    params: ScarfParams | None = None
    energy: complex | None = None
    meta: dict = field(default_factory=dict)
    check_continuity: bool = True

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        x = np.asarray(self.x, dtype=complex)
        p = np.asarray(self.p, dtype=complex)
        if not (t.ndim == x.ndim == p.ndim == 1 and len(t) == len(x) == len(p)):
            raise InvalidArgument("t, x and p must be 1-D arrays of equal length")
        if len(t) == 0:
            raise InvalidArgument("trajectory must contain at least one sample")
        if np.any(np.diff(t) <= 0):
            raise InvalidArgument("sample times must be strictly increasing")
        if self.check_continuity and len(x) > 1 and np.max(np.abs(np.diff(x))) >= MAX_POSITION_JUMP:
            raise InvalidArgument("consecutive positions jump by >= 0.5; refine the time grid")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)

    def __len__(self):
        return len(self.t)

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0]) if len(self.t) > 1 else 0.0

    def is_uniform(self, rtol=1e-9) -> bool:
        if len(self.t) < 3:
            return True
        d = np.diff(self.t)
        return bool(np.max(np.abs(d - d[0])) <= rtol * abs(d[0]) + 1e-12)

    def hamiltonian_values(self) -> np.ndarray:
        if self.params is None:
            raise InvalidArgument("trajectory carries no parameters")
        return hamiltonian(self.params, self.x, self.p)

    def window(self, t_lo: float, t_hi: float) -> "Trajectory":
        keep = (self.t >= t_lo - 1e-12) & (self.t <= t_hi + 1e-12)
        return Trajectory(
            self.t[keep], self.x[keep], self.p[keep], self.source, self.params, self.energy, dict(self.meta)
        )
