#!/usr/bin/env python3
"""Tabulate heralded-state entanglement against the Fock cutoff.

Prints one line per (lambda, n_max) pair with the change relative to the
previous cutoff in the list. Use it to decide how large n_max has to be
before trusting a sweep at high squeezing; the default grid shows the
cutoff requirement growing sharply past lambda = 0.7.
"""
import argparse
import sys

from spindistill.sweep import evaluate_point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--lambda",
        dest="lambdas",
        type=float,
        action="append",
        help="squeezing value, repeatable (default: 0.5 0.7 0.9)",
    )
    parser.add_argument("--phi", type=float, default=0.1)
    parser.add_argument("--eta", type=float, default=1.0)
    parser.add_argument(
        "--cutoffs",
        default="25,50,100,150,200",
        help="comma-separated n_max values, ascending",
    )
    args = parser.parse_args(argv)

    lambdas = args.lambdas or [0.5, 0.7, 0.9]
    cutoffs = [int(tok) for tok in args.cutoffs.split(",")]
    if cutoffs != sorted(cutoffs):
        parser.error("cutoffs must be ascending")

    print(f"{'lambda':>8} {'n_max':>6} {'E_N_out':>18} {'delta_vs_prev':>14}")
    for lam in lambdas:
        prev = None
        for n_max in cutoffs:
            row = evaluate_point(
                lam, args.phi, args.eta, n_max,
                with_convergence=False, with_baseline=False,
            )
            value = row.E_N_out
            if value is None:
                print(f"{lam:8.3f} {n_max:6d} {'null':>18} {'':>14}")
                continue
            delta = "" if prev is None else f"{abs(value - prev):.3e}"
            print(f"{lam:8.3f} {n_max:6d} {value:18.12f} {delta:>14}")
            prev = value
    return 0


if __name__ == "__main__":
    sys.exit(main())
