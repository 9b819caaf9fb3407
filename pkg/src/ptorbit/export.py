"""File formats: trajectory CSV, JSON records, SVG curve plots."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import InvalidArgument
from .scarf import ScarfParams, hamiltonian
from .trajectory import Source, Trajectory

CSV_HEADER = ["t", "x_re", "x_im", "p_re", "p_im", "H_re", "H_im"]


def _num(v: float) -> str:
    # repr is the shortest string that round-trips a double (<= 17 significant digits)
    return repr(float(v))


def trajectory_csv(traj: Trajectory) -> str:
    H = hamiltonian(traj.params, traj.x, traj.p) if traj.params is not None else np.full(len(traj), np.nan + 0j)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for t, x, p, h in zip(traj.t.tolist(), traj.x.tolist(), traj.p.tolist(), np.atleast_1d(H).tolist()):
        w.writerow([_num(t), _num(x.real), _num(x.imag), _num(p.real), _num(p.imag), _num(h.real), _num(h.imag)])
    return buf.getvalue()


def write_trajectory_csv(traj: Trajectory, path) -> Path:
    path = Path(path)
    path.write_text(trajectory_csv(traj))
    return path


def read_trajectory_csv(path, params: ScarfParams | None = None, source: Source = Source.ExactFormula,
                        energy=None) -> Trajectory:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != CSV_HEADER:
        raise InvalidArgument(f"{path}: header must be {','.join(CSV_HEADER)}")
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    return Trajectory(
        data[:, 0], data[:, 1] + 1j * data[:, 2], data[:, 3] + 1j * data[:, 4], source, params, energy,
        check_continuity=False,
    )


def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if hasattr(obj, "value") and hasattr(obj, "name"):  # enum members
        return obj.value
    return obj


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, complex as {re, im}, non-finite as null."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def params_record(params: ScarfParams) -> dict:
    return {"alpha0": params.alpha0, "gamma0": params.gamma0, "delta": params.delta}


PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"]


def svg_curves(curves, xlabel: str, ylabel: str, title: str = "", size: int = 600) -> str:
    """One polyline per curve; each curve is a pair of real arrays (horizontal, vertical)."""
    curves = [(np.asarray(a, float), np.asarray(b, float)) for a, b in curves]
    if not curves:
        raise InvalidArgument("nothing to plot")
    xs = np.concatenate([a for a, _ in curves])
    ys = np.concatenate([b for _, b in curves])
    x0, x1, y0, y1 = xs.min(), xs.max(), ys.min(), ys.max()
    span = max(x1 - x0, y1 - y0, 1e-12)
    mx, my = 0.05 * max(x1 - x0, span * 1e-3), 0.05 * max(y1 - y0, span * 1e-3)
    x0, x1, y0, y1 = x0 - mx, x1 + mx, y0 - my, y1 + my
    pad = 50
    plot = size - 2 * pad
    sx, sy = plot / (x1 - x0), plot / (y1 - y0)

    def px(v):
        return pad + (v - x0) * sx

    def py(v):
        return pad + (y1 - v) * sy

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="{pad}" y="{pad}" width="{plot}" height="{plot}" fill="white" stroke="black" stroke-width="1"/>',
    ]
    if x0 < 0 < x1:
        out.append(f'<line x1="{px(0):.2f}" y1="{pad}" x2="{px(0):.2f}" y2="{pad + plot}" stroke="#bbbbbb"/>')
    if y0 < 0 < y1:
        out.append(f'<line x1="{pad}" y1="{py(0):.2f}" x2="{pad + plot}" y2="{py(0):.2f}" stroke="#bbbbbb"/>')
    for k, (a, b) in enumerate(curves):
        pts = " ".join(f"{px(u):.2f},{py(v):.2f}" for u, v in zip(a.tolist(), b.tolist()))
        out.append(f'<polyline fill="none" stroke="{PALETTE[k % len(PALETTE)]}" stroke-width="1.2" points="{pts}"/>')
    out.append(f'<text x="{size / 2:.0f}" y="{size - 12}" text-anchor="middle" font-size="14">{_esc(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{size / 2:.0f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 16 {size / 2:.0f})">{_esc(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{size / 2:.0f}" y="28" text-anchor="middle" font-size="15">{_esc(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


PLOT_KINDS = {
    "orbit": (lambda tr: (tr.x.real, tr.x.imag), "Re x", "Im x"),
    "momentum": (lambda tr: (tr.p.real, tr.p.imag), "Re p", "Im p"),
    "phase-space": (lambda tr: (tr.x.real, tr.p.real), "Re x", "Re p"),
}


def svg_for_trajectories(trajs, kind: str, title: str = "") -> str:
    if kind not in PLOT_KINDS:
        raise InvalidArgument(f"unknown plot kind {kind!r}")
    get, xl, yl = PLOT_KINDS[kind]
    return svg_curves([get(tr) for tr in trajs], xl, yl, title)
