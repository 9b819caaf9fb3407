"""Command line entry point: ``ptorbit <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 malformed input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
import warnings
from pathlib import Path

import numpy as np

from . import analysis, export, sweep
from .checks import identity_suite
from .config import ConfigError, Scenario
from .errors import InvalidArgument, PtorbitError
from .exact import sample_trajectory
from .numerics import PhasePoint
from .oracle import IntegratorConfig, energy_drift, integrate
from .scarf import classify_phase, energy_window, turning_points

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


def _fmt(z: complex) -> str:
    return f"{z.real:.6f}{z.imag:+.6f}i"


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", label) or "scenario"


def cmd_phase(args):
    sc = Scenario.load(args.config)
    print(classify_phase(sc.params).value)


def cmd_energy_window(args):
    sc = Scenario.load(args.config)
    w = energy_window(sc.params)
    print(f"kind={w.kind.value} lower={_fmt(w.lower)} upper={_fmt(w.upper)}")


def cmd_turning_points(args):
    sc = Scenario.load(args.config)
    tps = turning_points(sc.params, sc.energy, args.branch_window)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "u_root", "branch", "re", "im"])
        for k, tp in enumerate(tps):
            w.writerow([k, tp.u_root, tp.branch, repr(tp.location.real), repr(tp.location.imag)])
        if tps.double_root:
            print("# double root", file=sys.stderr)
    finally:
        if args.out:
            out.close()


def cmd_trajectory(args):
    sc = Scenario.load(args.config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    spec = sc.solution()
    exact = sample_trajectory(spec, sc.t_max, sc.step)
    name = _slug(sc.label)
    export.write_trajectory_csv(exact, out / f"{name}_exact.csv")
    report = analysis.classify_orbit(exact, args.tol)
    record = {
        "label": sc.label,
        "params": export.params_record(sc.params),
        "energy": sc.energy,
        "phase": classify_phase(sc.params).value,
        "theta0": spec.theta0,
        "dt": exact.meta["dt"],
        "t_max": sc.t_max,
        "shell_residual": exact.meta["shell_residual"],
        "exact": report.to_record(),
    }
    if args.oracle:
        cfg = IntegratorConfig(t_max=max(sc.t_max, 1e-12), dt=exact.meta["dt"])
        ode = integrate(sc.params, PhasePoint(exact.x[0], exact.p[0]), cfg)
        export.write_trajectory_csv(ode, out / f"{name}_ode.csv")
        n = min(len(ode), len(exact))
        record["oracle"] = {
            "sup_distance_x": float(np.max(np.abs(ode.x[:n] - exact.x[:n]))),
            "sup_distance_p": float(np.max(np.abs(ode.p[:n] - exact.p[:n]))),
            "energy_drift": energy_drift(ode, sc.params, sc.energy),
        }
    (out / f"{name}_report.json").write_text(export.dumps(record))
    print(f"{sc.label}: {report.classification.value}"
          + (f" period={report.period:.6f}" if report.period is not None else ""))


def cmd_verify(args):
    sc = Scenario.load(args.config)
    spec = sc.solution()
    exact = sample_trajectory(spec, 0.0)
    initial = PhasePoint(exact.x[0], exact.p[0])
    report = identity_suite(sc.params, sc.energy, initial, t_max=min(10.0, sc.t_max) or 10.0)
    print(report.to_table())
    if args.json:
        Path(args.json).write_text(export.dumps(report.to_records()))
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_sweep(args):
    axes = sweep.parse_grid(args.grid)
    rows = sweep.run_sweep(axes, alpha0=args.alpha0, t_max=args.t_max, dt=args.dt, tol=args.tol)
    meta = {
        "alpha0": args.alpha0,
        "axes": {k: {"lo": a.lo, "hi": a.hi, "count": a.count} for k, a in axes.items()},
        "energy_rule": sweep.ENERGY_RULE,
        "t_max": args.t_max,
        "dt": args.dt,
        "closure_tol": args.tol,
    }
    buf = []
    for r in rows:
        buf.append([r[c] if not isinstance(r[c], float) else repr(r[c]) for c in sweep.SWEEP_COLUMNS])
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "sweep.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(sweep.SWEEP_COLUMNS)
            w.writerows(buf)
        (out / "sweep_meta.json").write_text(export.dumps(meta))
    else:
        print(f"# {sweep.ENERGY_RULE}")
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(sweep.SWEEP_COLUMNS)
        w.writerows(buf)


def cmd_plot(args):
    sc = Scenario.load(args.config)
    trajs = [sample_trajectory(spec, sc.t_max, sc.step) for spec in sc.solutions()]
    svg = export.svg_for_trajectories(trajs, args.kind, sc.label)
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ptorbit", description="Classical orbits in the complex Scarf II well")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trajectory", help="exact (and optionally ODE) trajectory as CSV plus an orbit report")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--oracle", action="store_true", help="also integrate Hamilton's equations numerically")
    p.add_argument("--tol", type=float, default=analysis.CLOSURE_TOL, help="closure tolerance")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("turning-points", help="roots of E - V(x) = 0 as a record table")
    p.add_argument("--config", required=True)
    p.add_argument("--branch-window", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_turning_points)

    for name, fn, text in (("energy-window", cmd_energy_window, "classically allowed energies"),
                           ("phase", cmd_phase, "PT phase of the parameters")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", help="factorization residuals and identity checks")
    p.add_argument("--config", required=True)
    p.add_argument("--json", help="also write the residual records here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="closed/open classification over a (gamma0, delta_I) grid")
    p.add_argument("--grid", required=True, help='e.g. "gamma0=2:8:13,delta_I=0.5:4:15"')
    p.add_argument("--alpha0", type=float, default=2.0)
    p.add_argument("--t-max", type=float, default=20.0)
    p.add_argument("--dt", type=float, default=2e-3)
    p.add_argument("--tol", type=float, default=analysis.CLOSURE_TOL)
    p.add_argument("--out", help="output directory (default: CSV on stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="SVG of orbits, momenta or real phase-space curves")
    p.add_argument("--config", required=True)
    p.add_argument("--kind", choices=sorted(export.PLOT_KINDS), default="orbit")
    p.add_argument("--out")
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            status = args.func(args)
    except (ConfigError, InvalidArgument, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PtorbitError as exc:
        print(f"numerical failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
