"""Tabulate psi(p) over a grid of Bernoulli parameters and report its maximum.

    python3 scripts/lower_bound_curve.py --steps 999 [--csv out.csv]
"""

import argparse
import csv

import numpy as np

from meanclt.harness import lower_bound_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=999)
    ap.add_argument("--csv", help="write the full table here")
    args = ap.parse_args()

    ps = np.linspace(0, 1, args.steps + 2)[1:-1]
    table = lower_bound_sweep(ps)
    p_best, v_best = max(table, key=lambda row: row[1])
    print(f"max psi = {v_best:.9f} at p = {p_best:.6f}")
    print(f"psi(1/2) = {lower_bound_sweep([0.5])[0][1]:.9f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["p", "psi"])
            w.writerows(table)


if __name__ == "__main__":
    main()
