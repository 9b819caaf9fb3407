"""Locate the closed/open boundary empirically over a (gamma0, delta_I) grid.

    python scripts/phase_sweep.py --grid "gamma0=2:8:13,delta_I=0.5:4:15" --out sweep

Writes sweep.csv and sweep_meta.json and prints a character map
(C closed, O open, ? undetermined) next to the predicted line gamma0 = 2 delta_I.
"""

import argparse
import csv
from pathlib import Path

from ptorbit import export, sweep

SYMBOL = {"Closed": "C", "Open": "O", "Undetermined": "?"}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", default="gamma0=2:8:13,delta_I=0.5:4:15")
    ap.add_argument("--t-max", type=float, default=20.0)
    ap.add_argument("--dt", type=float, default=2e-3)
    ap.add_argument("--tol", type=float, default=1e-3)
    ap.add_argument("--workers", type=int, default=None, help="default: PTORBIT_THREADS or all cores")
    ap.add_argument("--out", default="sweep")
    args = ap.parse_args(argv)

    axes = sweep.parse_grid(args.grid)
    rows = sweep.run_sweep(axes, t_max=args.t_max, dt=args.dt, tol=args.tol, workers=args.workers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "sweep.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, sweep.SWEEP_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows({k: repr(v) if isinstance(v, float) else v for k, v in r.items()} for r in rows)
    meta = {"grid": args.grid, "energy_rule": sweep.ENERGY_RULE, "t_max": args.t_max, "dt": args.dt,
            "closure_tol": args.tol}
    (out / "sweep_meta.json").write_text(export.dumps(meta))

    by_cell = {(r["i"], r["j"]): r for r in rows}
    gammas, deltas = axes["gamma0"].values, axes["delta_I"].values
    print("delta_I ->  " + " ".join(f"{d:4.2f}" for d in deltas))
    for i, g in enumerate(gammas):
        cells = "".join(f"{SYMBOL[by_cell[i, j]['classification']]:>5}" for j in range(len(deltas)))
        print(f"gamma0 {g:4.2f} {cells}")
    mismatched = [
        r for r in rows
        if r["classification"] != "Undetermined"
        and (r["classification"] == "Closed") != (r["gamma0"] >= 2 * abs(r["delta_I"]))
    ]
    print(f"{len(mismatched)} of {len(rows)} cells disagree with gamma0 >= 2|delta_I|")


if __name__ == "__main__":
    main()
