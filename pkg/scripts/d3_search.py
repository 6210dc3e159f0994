"""Scan three-point laws for B > 1 on a configurable grid, plus the zero-middle limit.

    python3 scripts/d3_search.py [--grid x=-3:-0.05:50,z=0.05:3:50,alpha=0:1:50] [--threads auto]
"""

import argparse
import json
import os

from meanclt.harness import D3GridSpec, search_d3, zero_middle_sequence


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid")
    ap.add_argument("--threads", default="1")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    threads = (os.cpu_count() or 1) if args.threads == "auto" else int(args.threads)

    grid = D3GridSpec.parse(args.grid) if args.grid else D3GridSpec()
    res = search_d3(grid, threads=threads, seed=args.seed)
    print(json.dumps(res.to_json(), indent=2))

    for x, z, q in [(-1.0, 2.0, 0.4), (-3.0, 3.0, 0.5)]:
        seq, limit = zero_middle_sequence(x, z, q)
        body = ", ".join(f"n={n}: {b:.6f}" for n, b in seq)
        print(f"zero middle x={x}, z={z}, q={q}: {body}; B(X) = {limit:.6f}")


if __name__ == "__main__":
    main()
