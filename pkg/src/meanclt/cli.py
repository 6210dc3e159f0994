"""Command line interface: ``meanclt <subcommand> ...``.

Exit status is 0 on success, 1 when a checked inequality fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import tolerances
from .dist import FiniteDist, iid_sum, load, moments, standardize
from .errors import InvariantViolation, MeanCLTError
from .functionals import a_functional, a_parameters, functional_report, zolotarev_ratio
from .harness import (
    BoundReport,
    D3GridSpec,
    asymptotic_sweep,
    axis_values,
    lower_bound_sweep,
    parse_axis,
    search_d3,
    verify_iid,
)
from .mixtures import reduce_to_d3
from .wasserstein import w1_step_pwl
from .zerobias import zero_bias

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _load(path: str, recenter: bool) -> FiniteDist:
    d = load(path)
    if recenter:
        d = FiniteDist(d.support - moments(d).mean, d.probs)
    return d


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_bfun(args) -> int:
    _emit(functional_report(_load(args.dist, args.recenter)).to_json())
    return EXIT_OK


def cmd_afun(args) -> int:
    d = _load(args.dist, args.recenter)
    sigma, omega, h, info = a_parameters(d)
    ratio = zolotarev_ratio(d)
    _emit({
        "a_value": a_functional(d),
        "omega": omega,
        "h": h,
        "sigma": sigma,
        "zolotarev_ratio": ratio,
        "lattice": info.to_json(),
    })
    return EXIT_VIOLATION if ratio > 0.5 + 1e-9 else EXIT_OK


def cmd_zb(args) -> int:
    d = _load(args.dist, args.recenter)
    z = zero_bias(d)
    _emit({"zero_bias": z.to_json(), "w1": w1_step_pwl(d, z)}, args.output)
    return EXIT_OK


def _print_reports(reports: list[BoundReport], fmt: str):
    if fmt == "json":
        _emit([r.to_json() for r in reports])
    else:
        print(",".join(BoundReport.CSV_FIELDS))
        for r in reports:
            print(r.csv_row())


def cmd_verify(args) -> int:
    g = _load(args.dist, args.recenter)
    if args.n_schedule:
        ns = [int(t) for t in args.n_schedule.split(",") if t.strip()]
        reports = asymptotic_sweep(g, ns)
    else:
        reports = [verify_iid(g, args.n, a_functional(g), law_sum=iid_sum(g, args.n))]
    _print_reports(reports, args.format)
    return EXIT_VIOLATION if any(r.violations() for r in reports) else EXIT_OK


def cmd_search_d3(args) -> int:
    grid = D3GridSpec.parse(args.grid) if args.grid else D3GridSpec()
    res = search_d3(grid, threads=args.threads, seed=args.seed)
    _emit(res.to_json())
    return EXIT_VIOLATION if res.violations else EXIT_OK


def cmd_lower_bound(args) -> int:
    ps = axis_values(parse_axis(args.p_grid))
    table = lower_bound_sweep(ps)
    print("p,psi")
    for p, v in table:
        print(f"{p!r},{v!r}")
    return EXIT_OK


def cmd_reduce_d3(args) -> int:
    d = load(args.dist)
    if args.standardize:
        d = standardize(d)
    _emit(reduce_to_d3(d).to_json())
    return EXIT_OK


def _threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="meanclt", description=__doc__.splitlines()[0])
    ap.add_argument("--tol-report", action="store_true", help="print the tolerances in use to stderr")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=_threads, default=1, metavar="N|auto")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_dist(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("dist", help="distribution JSON {support, probs}")
        p.add_argument("--recenter", action="store_true", help="shift the law to mean zero first")
        p.set_defaults(func=fn)
        return p

    with_dist("bfun", cmd_bfun, "B(G), A(G) and moments as JSON")
    with_dist("afun", cmd_afun, "A(G), omega, span and the Zolotarev ratio")
    p = with_dist("zb", cmd_zb, "zero-bias law and its L1 distance to G")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="check ||F_n - Phi||_1 against the bounds for iid sums")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--n-schedule", help="comma separated increasing n values")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--recenter", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-d3", help="scan three-point laws for B > 1")
    p.add_argument("--grid", help="x=lo:hi:steps,z=lo:hi:steps,alpha=lo:hi:steps[,y=...][,py=...]")
    p.set_defaults(func=cmd_search_d3)

    p = sub.add_parser("lower-bound", help="tabulate psi(p) for standardized Bernoulli laws")
    p.add_argument("--p-grid", required=True, help="lo:hi:steps")
    p.set_defaults(func=cmd_lower_bound)

    p = sub.add_parser("reduce-d3", help="decompose a standardized law into three-point laws")
    p.add_argument("dist")
    p.add_argument("--standardize", action="store_true")
    p.set_defaults(func=cmd_reduce_d3)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.tol_report:
        for k, v in tolerances.as_dict().items():
            print(f"{k}={v}", file=sys.stderr)
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (MeanCLTError, OSError, ValueError, json.JSONDecodeError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
