"""Closed/open classification over a (gamma0, delta_I) grid.

Energy rule per cell: the real part of the energy-window midpoint (-gamma0/2);
broken-phase cells add an imaginary shift of -0.3, as in the open-orbit
example E = -1.5 - 0.3i at gamma0 = 3. Each cell starts from the real phase
theta0 = THETA0, whose u-path is a horizontal segment that cannot touch the
branch points u = +-i.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import classify_orbit
from .errors import InvalidArgument, PtorbitError
from .exact import sample_trajectory, solution_from_theta0
from .scarf import PTPhase, ScarfParams, classify_phase, energy_window

BROKEN_SHIFT = -0.3j
THETA0 = 0.3
AXES = ("gamma0", "delta_I")

ENERGY_RULE = (
    "E = Re(window midpoint) = -gamma0/2 in unbroken cells; "
    "E = -gamma0/2 - 0.3i in broken cells; start theta0 = 0.3 (real)"
)


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    count: int

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


def parse_grid(spec: str) -> dict:
    """Parse ``"gamma0=2:8:13,delta_I=0.5:4:15"`` (inclusive ranges with counts)."""
    axes = {}
    for part in filter(None, (s.strip() for s in spec.split(","))):
        try:
            name, rng = part.split("=")
            lo, hi, count = rng.split(":")
            axis = Axis(name.strip(), float(lo), float(hi), int(count))
        except ValueError:
            raise InvalidArgument(f"bad grid axis {part!r}; expected name=lo:hi:count") from None
        if axis.name not in AXES:
            raise InvalidArgument(f"unknown grid axis {axis.name!r}; expected one of {AXES}")
        if axis.count < 1:
            raise InvalidArgument(f"axis {axis.name} needs a positive count")
        axes[axis.name] = axis
    missing = [a for a in AXES if a not in axes]
    if missing:
        raise InvalidArgument(f"grid is missing axes {missing}")
    return axes


def cell_energy(params: ScarfParams) -> complex:
    window = energy_window(params)
    E = complex(window.midpoint.real)
    if classify_phase(params) is PTPhase.PTBroken:
        E += BROKEN_SHIFT
    return E


def run_cell(args) -> dict:
    i, j, alpha0, gamma0, delta_i, t_max, dt, tol = args
    params = ScarfParams(alpha0, gamma0, 1j * delta_i)
    phase = classify_phase(params)
    row = {"i": i, "j": j, "gamma0": gamma0, "delta_I": delta_i, "phase": phase.value,
           "E_re": float("nan"), "E_im": float("nan"), "classification": "Undetermined", "period": float("nan"), "note": ""}
    try:
        E = cell_energy(params)
        row["E_re"], row["E_im"] = E.real, E.imag
        spec = solution_from_theta0(params, E, THETA0)
        traj = sample_trajectory(spec, t_max, dt)
        report = classify_orbit(traj, tol)
        row["classification"] = report.classification.value
        if report.period is not None:
            row["period"] = report.period
    except PtorbitError as exc:
        # at gamma0 = 2|delta_I| the double turning point sits on a pole of V
        row["note"] = f"{type(exc).__name__}: {exc}"
    return row


def thread_cap() -> int:
    env = os.environ.get("PTORBIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidArgument(f"PTORBIT_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def run_sweep(axes: dict, alpha0: float = 2.0, t_max: float = 20.0, dt: float = 2e-3, tol: float = 1e-3,
              workers: int | None = None) -> list:
    """Rows ordered by grid index (gamma0 outer, delta_I inner) whatever the completion order."""
    jobs = [
        (i, j, alpha0, float(g), float(d), t_max, dt, tol)
        for i, g in enumerate(axes["gamma0"].values)
        for j, d in enumerate(axes["delta_I"].values)
    ]
    workers = thread_cap() if workers is None else workers
    if workers <= 1 or len(jobs) == 1:
        return [run_cell(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(run_cell, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


SWEEP_COLUMNS = ["i", "j", "gamma0", "delta_I", "phase", "E_re", "E_im", "classification", "period", "note"]
