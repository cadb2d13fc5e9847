#!/usr/bin/env python3
"""Generate the three standard datasets behind the study's plots.

Each dataset is a CSV sweep over the squeezing parameter:

  entanglement_vs_squeezing.csv   heralded-state entanglement against the
                                  input baseline at phi = 0.1 and 0.01,
                                  ideal detectors
  success_probability.csv         herald probability for phi = 0.1, 0.05,
                                  0.01 (the S column is the payload)
  detector_efficiency.csv         entanglement at phi = 0.1 for detector
                                  efficiencies 1, 0.8, 0.5, 0.2

The same grids are available as config files next to this script for the
``spindistill sweep`` command; this script just runs all three in one go.
"""
import argparse
import os
import sys

from spindistill.sweep import SweepSpec, run_sweep, write_rows

RECIPES = {
    "entanglement_vs_squeezing.csv": dict(phi_values=(0.1, 0.01), eta_values=(1.0,)),
    "success_probability.csv": dict(phi_values=(0.1, 0.05, 0.01), eta_values=(1.0,)),
    "detector_efficiency.csv": dict(phi_values=(0.1,), eta_values=(1.0, 0.8, 0.5, 0.2)),
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="data", help="directory for the CSV files")
    parser.add_argument("--nmax", type=int, default=100)
    parser.add_argument("--steps", type=int, default=19, help="lambda grid points")
    args = parser.parse_args(argv)

    os.makedirs(args.outdir, exist_ok=True)
    for name, grids in RECIPES.items():
        spec = SweepSpec(
            lambda_min=0.05,
            lambda_max=0.95,
            lambda_steps=args.steps,
            n_max=args.nmax,
            **grids,
        )
        rows = run_sweep(spec)
        path = os.path.join(args.outdir, name)
        write_rows(rows, path)
        print(f"{path}: {len(rows)} rows")
    return 0


if __name__ == "__main__":
    sys.exit(main())
