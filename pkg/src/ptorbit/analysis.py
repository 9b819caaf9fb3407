"""Orbit diagnostics: recurrence period, closed/open verdict, curve symmetry, separation."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar
from scipy.spatial import cKDTree
from shapely.geometry import LineString

from .errors import InsufficientData, InvalidArgument
from .scarf import PTPhase, TurningPointSet
from .trajectory import Trajectory

CLOSURE_TOL = 1e-3
MIN_SAMPLES = 8


class OrbitClass(enum.Enum):
    Closed = "Closed"
    Open = "Open"
    Undetermined = "Undetermined"


@dataclass
class SymmetryFlags:
    x_imag_axis_symmetric: bool
    p_real_axis_symmetric: bool
    x_distance: float = float("nan")
    p_distance: float = float("nan")


@dataclass
class OrbitReport:
    classification: OrbitClass
    period: float | None
    closure_residual: float
    symmetry_flags: SymmetryFlags
    degenerate: bool = False

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["classification"] = self.classification.value
        return rec


def _state(traj: Trajectory) -> np.ndarray:
    return np.stack([traj.x, traj.p], axis=1)


def _lag_mean_square(z: np.ndarray, max_lag: int) -> np.ndarray:
    """S[k] = mean_n |z[n+k] - z[n]|^2 for k = 0..max_lag, via FFT correlation."""
    n = len(z)
    size = 1 << int(np.ceil(np.log2(2 * n)))
    sq = np.sum(np.abs(z) ** 2, axis=1)
    csum = np.concatenate([[0.0], np.cumsum(sq)])
    cross = np.zeros(max_lag + 1)
    for col in range(z.shape[1]):
        fz = np.fft.fft(z[:, col], size)
        cross += np.real(np.fft.ifft(np.conj(fz) * fz))[: max_lag + 1]
    k = np.arange(max_lag + 1)
    head = csum[n - k] - csum[0]  # sum_{n < N-k} |z[n]|^2
    tail = csum[n] - csum[k]  # sum_{n >= k} |z[n]|^2
    s = (head + tail - 2 * cross) / (n - k)
    return np.maximum(s, 0.0)


class _Recurrence:
    """Continuous-lag recurrence distances from a spline through the samples."""

    def __init__(self, traj: Trajectory):
        z = _state(traj)
        self.t = traj.t
        self.z = z
        self.spline = CubicSpline(traj.t, np.column_stack([z.real, z.imag]))

    def _shifted(self, T):
        keep = self.t + T <= self.t[-1]
        v = self.spline(self.t[keep] + T)
        return v[:, :2] + 1j * v[:, 2:], self.z[keep]

    def mean_square(self, T):
        a, b = self._shifted(T)
        return float(np.mean(np.sum(np.abs(a - b) ** 2, axis=1)))

    def max_distance(self, T):
        a, b = self._shifted(T)
        return float(np.max(np.abs(a[:, 0] - b[:, 0]) + np.abs(a[:, 1] - b[:, 1])))


def _scan(traj: Trajectory, tol: float):
    """(period or None, best residual, degenerate?)"""
    if len(traj) < MIN_SAMPLES:
        raise InsufficientData(f"need at least {MIN_SAMPLES} samples, got {len(traj)}")
    if not traj.is_uniform():
        raise InvalidArgument("period detection needs a uniformly sampled trajectory")
    z = _state(traj)
    spread = float(np.max(np.abs(z[:, 0] - z[0, 0]) + np.abs(z[:, 1] - z[0, 1])))
    if spread < tol:
        return traj.dt, spread, True
    n = len(z)
    max_lag = (2 * n) // 3
    s = _lag_mean_square(z, max_lag)
    speed = float(np.max(np.abs(np.diff(z, axis=0)).sum(axis=1)))  # per sample
    # lags inside the first excursion cannot be recurrences
    departed = np.nonzero(np.sqrt(s) > 2 * tol + speed)[0]
    if len(departed) == 0:
        raise InsufficientData("trajectory never leaves the neighbourhood of its start")
    k0 = departed[0]
    rec = _Recurrence(traj)
    dt = traj.dt
    best = float(np.sqrt(s[k0:].min()))
    for k in range(max(k0, 1), max_lag):
        if not (s[k] <= s[k - 1] and s[k] <= s[k + 1]):
            continue
        if np.sqrt(s[k]) > tol + speed:
            continue
        res = minimize_scalar(rec.mean_square, bounds=((k - 1) * dt, (k + 1) * dt), method="bounded",
                              options={"xatol": 1e-12 * max(1.0, k * dt)})
        T = float(res.x)
        d = rec.max_distance(T)
        best = min(best, d)
        if d < tol:
            return T, d, False
    return None, best, False


def detect_period(traj: Trajectory, tol: float = CLOSURE_TOL) -> float | None:
    """Smallest T > 0 with max_t |x(t+T) - x(t)| + |p(t+T) - p(t)| < tol.

    Candidates are local minima of the lagged mean-square distance, refined on
    a cubic spline through the samples. A stationary trajectory returns the
    grid step (see :func:`classify_orbit`, which flags it as degenerate).
    """
    return _scan(traj, tol)[0]


def _polyline_distances(points: np.ndarray, line: np.ndarray, k: int = 8) -> np.ndarray:
    """Distance from each point to the polyline through ``line`` (both (N, 2))."""
    if len(line) == 1:
        return np.linalg.norm(points - line[0], axis=1)
    tree = cKDTree(line)
    k = min(k, len(line))
    _, idx = tree.query(points, k=k)
    idx = np.atleast_2d(idx.T).T if idx.ndim == 1 else idx
    best = np.full(len(points), np.inf)
    for j in range(idx.shape[1]):
        for shift in (0, -1):
            i0 = np.clip(idx[:, j] + shift, 0, len(line) - 2)
            a, b = line[i0], line[i0 + 1]
            ab = b - a
            denom = np.maximum(np.sum(ab * ab, axis=1), 1e-300)
            u = np.clip(np.sum((points - a) * ab, axis=1) / denom, 0.0, 1.0)
            proj = a + u[:, None] * ab
            best = np.minimum(best, np.linalg.norm(points - proj, axis=1))
    return best


def _xy(z: np.ndarray) -> np.ndarray:
    return np.column_stack([z.real, z.imag])


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two sampled complex curves (as polylines)."""
    pa, pb = _xy(np.asarray(a)), _xy(np.asarray(b))
    return float(max(_polyline_distances(pa, pb).max(), _polyline_distances(pb, pa).max()))


def classify_orbit(traj: Trajectory, tol: float = CLOSURE_TOL) -> OrbitReport:
    period, residual, degenerate = _scan(traj, tol)
    if degenerate:
        cls = OrbitClass.Undetermined
    elif period is None:
        cls = OrbitClass.Open
    else:
        cls = OrbitClass.Closed
    dx = hausdorff(traj.x, -np.conj(traj.x))
    dp = hausdorff(traj.p, np.conj(traj.p))
    flags = SymmetryFlags(bool(dx < tol), bool(dp < tol), dx, dp)
    return OrbitReport(cls, period if cls is not OrbitClass.Open else None, float(residual), flags, degenerate)


def min_orbit_separation(a: Trajectory, b: Trajectory) -> float:
    """Minimum distance between the x-curves of two trajectories, as planar polylines."""
    pa, pb = _xy(a.x), _xy(b.x)
    if len(pa) > 1 and len(pb) > 1 and LineString(pa).intersects(LineString(pb)):
        return 0.0
    # for disjoint polylines the minimum is attained at a vertex of one of them
    return float(min(_polyline_distances(pa, pb).min(), _polyline_distances(pb, pa).min()))


@dataclass
class PairingReport:
    fraction_paired: float
    pairs: list = field(default_factory=list)
    unpaired: list = field(default_factory=list)
    sign_flip_pairs: list = field(default_factory=list)  # (z, w) with Re w = -Re z, Im w != Im z
    distinct_re_magnitudes: list = field(default_factory=list)

    @property
    def fully_paired(self) -> bool:
        return self.fraction_paired == 1.0


def turning_point_pairing(tps: TurningPointSet, phase: PTPhase, tol: float = 1e-6) -> PairingReport:
    """Greedy (z, -conj z) matching of turning points, plus the Re-sign-flip structure."""
    pts = [tp.location for tp in tps]
    if not pts:
        raise InvalidArgument("empty turning-point set")
    free = list(range(len(pts)))
    pairs = []
    unpaired = []
    while free:
        i = free.pop(0)
        target = -pts[i].conjugate()
        match = None
        if abs(pts[i] - target) < tol:
            match = i
        else:
            for j in free:
                if abs(pts[j] - target) < tol:
                    match = j
                    break
        if match is None:
            unpaired.append(pts[i])
        else:
            if match != i:
                free.remove(match)
            pairs.append((pts[i], pts[match]))
    paired_count = sum(1 if a == b else 2 for a, b in pairs)
    flips = []
    free = list(range(len(unpaired)))
    while free:
        i = free.pop(0)
        z = unpaired[i]
        for j in free:
            w = unpaired[j]
            if abs(w.real + z.real) < tol and abs(w.imag - z.imag) > tol:
                flips.append((z, w))
                free.remove(j)
                break
    mags = sorted({round(abs(z.real), 6) for pair in flips for z in pair})
    return PairingReport(paired_count / len(pts), pairs, unpaired, flips, mags)
