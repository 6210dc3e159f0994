"""Follow sqrt(n) ||F_n - Phi||_1 toward A(G) for a few standard laws.

    python3 scripts/esseen_sweep.py [--max-power 12]
"""

import argparse
import math

import numpy as np

from meanclt.dist import FiniteDist, rademacher, standardize, standardized_bernoulli, two_point
from meanclt.harness import asymptotic_sweep, c_envelope


def laws():
    a, b = math.sqrt(2) - 1, math.pi / 2
    A = np.array([[1, 1, 1], [-1, a, b], [-1, a**3, b**3]])
    return {
        "rademacher": rademacher(),
        "two-point(-1,2)": standardize(two_point(-1.0, 2.0)),
        "bernoulli(0.2)": standardized_bernoulli(0.2),
        "zero-skew nonlattice": standardize(FiniteDist([-1, a, b], np.linalg.solve(A, [1, 0, 0]))),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-power", type=int, default=12)
    args = ap.parse_args()
    for name, g in laws().items():
        lattice = name != "zero-skew nonlattice"
        top = args.max_power if lattice else min(args.max_power, 10)
        reps = asymptotic_sweep(g, [2**k for k in range(top + 1)])
        env = dict(c_envelope(reps, g))
        print(f"\n{name}: A(G) = {reps[0].a_value:.6f}")
        print(f"{'n':>6} {'sqrt(n) W1':>12} {'ratio_be':>9} {'c envelope':>11}")
        for r in reps:
            print(f"{r.n:>6} {r.sqrtn_w1:>12.6f} {r.ratio_be:>9.4f} {env[r.n]:>11.6f}")


if __name__ == "__main__":
    main()
