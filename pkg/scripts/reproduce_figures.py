"""Regenerate the four reference plots and their trajectory tables.

    python scripts/reproduce_figures.py --out figures

Figures 1-3 use the unbroken-phase config (orbits, momenta, real phase-space
curves); figure 4 uses the broken-phase config (open orbits). Alongside each
SVG the script writes one CSV per curve and a summary.json with the orbit
reports.
"""

import argparse
from pathlib import Path

from ptorbit import export
from ptorbit.analysis import classify_orbit
from ptorbit.config import Scenario
from ptorbit.exact import sample_trajectory

ROOT = Path(__file__).resolve().parents[1]

FIGURES = [
    ("fig1_orbits", "fig1.json", "orbit"),
    ("fig2_momenta", "fig1.json", "momentum"),
    ("fig3_phase_space", "fig1.json", "phase-space"),
    ("fig4_open_orbits", "fig4.json", "orbit"),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--configs", default=str(ROOT / "configs"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    cache = {}
    summary = {}
    for name, config, kind in FIGURES:
        if config not in cache:
            sc = Scenario.load(Path(args.configs) / config)
            trajs = [sample_trajectory(spec, sc.t_max, sc.step) for spec in sc.solutions()]
            cache[config] = (sc, trajs)
            tol = 1e-2 if "fig4" in config else 1e-3
            summary[sc.label] = [classify_orbit(tr, tol).to_record() for tr in trajs]
            for k, tr in enumerate(trajs):
                export.write_trajectory_csv(tr, out / f"{sc.label}_curve{k}.csv")
        sc, trajs = cache[config]
        (out / f"{name}.svg").write_text(export.svg_for_trajectories(trajs, kind, sc.label))
        print(f"wrote {out / name}.svg ({len(trajs)} curves)")
    (out / "summary.json").write_text(export.dumps(summary))
    for label, reports in summary.items():
        for k, rec in enumerate(reports):
            period = rec["period"]
            print(f"{label} curve {k}: {rec['classification']}"
                  + (f", period {period:.6f}" if period is not None else f", best recurrence {rec['closure_residual']:.3g}"))


if __name__ == "__main__":
    main()
