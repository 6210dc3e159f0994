"""End-to-end checks of the L1 Berry-Esseen bound and its supporting facts.

``verify_bound`` builds the exact law F_n of a normalized sum and compares
||F_n - Phi||_1 with sigma^-3 sum E|X_i|^3 and with the sharper
sigma^-3 sum B(G_i) E|X_i|^3.  ``asymptotic_sweep`` follows sqrt(n) ||F_n - Phi||_1
toward A(G), ``search_d3`` scans three-point laws for B > 1 and
``lower_bound_sweep`` tabulates psi(p).
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tolerances as tol
from .dist import (
    FiniteDist,
    check_centered,
    convolve,
    iid_sum,
    lattice_span,
    moments,
    normalized_sum,
    scale,
    standardize,
)
from .errors import DegenerateDistribution, DomainError, EmptyGrid, InvariantViolation
from .functionals import a_functional, b_functional, b_functional_batch, psi_lower_bound
from .wasserstein import w1_step_normal

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundReport:
    n: int
    w1: float
    be_bound: float
    bg_bound: float
    ratio_be: float
    ratio_bg: float
    sqrtn_w1: float
    a_value: float | None = None

    CSV_FIELDS = ("n", "w1", "be_bound", "bg_bound", "ratio_be", "ratio_bg", "sqrtn_w1", "a_value")

    def violations(self) -> list[str]:
        out = []
        if self.ratio_be > 1 + tol.BOUND_SLACK:
            out.append(f"n={self.n}: ||F_n - Phi||_1 exceeds the moment bound (ratio {self.ratio_be:.12g})")
        if self.ratio_bg > 1 + tol.BOUND_SLACK:
            out.append(f"n={self.n}: ||F_n - Phi||_1 exceeds the B(G) bound (ratio {self.ratio_bg:.12g})")
        if self.bg_bound > self.be_bound + 1e-12:
            out.append(f"n={self.n}: B(G) bound {self.bg_bound} above moment bound {self.be_bound}")
        return out

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.CSV_FIELDS}

    def csv_row(self) -> str:
        return ",".join("" if getattr(self, k) is None else repr(getattr(self, k)) for k in self.CSV_FIELDS)


def _report(n, law, be_bound, bg_bound, a_value=None) -> BoundReport:
    w = w1_step_normal(law)
    rep = BoundReport(
        n=n,
        w1=w,
        be_bound=be_bound,
        bg_bound=bg_bound,
        ratio_be=w / be_bound,
        ratio_bg=w / bg_bound,
        sqrtn_w1=math.sqrt(n) * w,
        a_value=a_value,
    )
    for msg in rep.violations():
        log.warning(msg)
    return rep


def verify_bound(components: Sequence[FiniteDist], strict: bool = False) -> BoundReport:
    """Exact ||F_n - Phi||_1 for independent centered components and both upper bounds."""
    if not components:
        raise DegenerateDistribution("no components")
    stats = [check_centered(c) for c in components]
    sigma2 = sum(m.variance for m in stats)
    if sigma2 <= 0:
        raise DegenerateDistribution("total variance is zero")
    law = normalized_sum(components)
    b_cache: dict[int, float] = {}
    bg = 0.0
    for c, m in zip(components, stats):
        if m.variance > 0:
            if id(c) not in b_cache:
                b_cache[id(c)] = b_functional(c)
            bg += b_cache[id(c)] * m.abs_third
    be = sum(m.abs_third for m in stats) / sigma2**1.5
    bg /= sigma2**1.5
    first = components[0]
    iid = all(c is first or c.same_as(first) for c in components)
    a_value = a_functional(first) if iid and stats[0].variance > 0 else None
    rep = _report(len(components), law, be, bg, a_value)
    if strict and rep.violations():
        raise InvariantViolation("; ".join(rep.violations()))
    return rep


def verify_iid(g: FiniteDist, n: int, a_value: float | None = None, law_sum: FiniteDist | None = None) -> BoundReport:
    """verify_bound for n iid copies of g, with the sum built by powering."""
    m = check_centered(g)
    if m.variance <= 0:
        raise DegenerateDistribution("g has zero variance")
    s = law_sum if law_sum is not None else iid_sum(g, n)
    law = scale(s, 1.0 / math.sqrt(n * m.variance))
    be = m.abs_third / (m.variance**1.5 * math.sqrt(n))
    return _report(n, law, be, b_functional(g) * be, a_value)


def asymptotic_sweep(g: FiniteDist, n_schedule: Sequence[int]) -> list[BoundReport]:
    """BoundReports along n_schedule, each carrying A(g)."""
    m = moments(g)
    if abs(m.mean) > tol.CENTER_TOL or abs(m.variance - 1) > tol.STANDARD_TOL:
        g = standardize(g)
    ns = list(n_schedule)
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n_schedule must be increasing")
    a_val = a_functional(g)
    lattice = lattice_span(g).is_lattice
    sums: dict[int, FiniteDist] = {}
    out = []
    for n in ns:
        if lattice and n % 2 == 0 and n // 2 in sums:
            s = convolve(sums[n // 2], sums[n // 2])
        else:
            s = iid_sum(g, n)
        sums[n] = s
        out.append(verify_iid(g, n, a_val, law_sum=s))
    return out


def c_envelope(reports: Sequence[BoundReport], g: FiniteDist) -> list[tuple[int, float]]:
    """(m, max over n >= m of sqrt(n) sigma^3 ||F_n - Phi||_1 / E|X|^3) along a sweep."""
    mo = moments(g)
    scale_ = mo.variance**1.5 / mo.abs_third
    vals = [r.sqrtn_w1 * scale_ for r in reports]
    env = np.maximum.accumulate(np.array(vals)[::-1])[::-1]
    return [(r.n, float(e)) for r, e in zip(reports, env)]


# ------------------------------------------------------------- D3 search

def parse_axis(text: str) -> tuple[float, float, int]:
    """'lo:hi:steps' -> (lo, hi, steps)."""
    try:
        lo, hi, steps = text.split(":")
        return float(lo), float(hi), int(steps)
    except ValueError as e:
        raise ValueError(f"axis must look like lo:hi:steps, got {text!r}") from e


def axis_values(axis: tuple[float, float, int]) -> np.ndarray:
    lo, hi, steps = axis
    if steps < 1:
        raise EmptyGrid("axis with no steps")
    return np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])


@dataclass(frozen=True)
class D3GridSpec:
    """Grid over three-point laws.

    Mixture mode (default): for x < y < 0 < z and alpha in [0, 1] the law is
    alpha m1 + (1 - alpha) m0 with m1, m0 the mean-zero laws on {x, z} and
    {y, z}.  The middle point comes from the absolute ``y`` axis when given,
    otherwise from y = t x for t in ``y_fracs``.

    Direct mode (``py`` axis given): support (x, y, z) with P(y) from the axis and
    the two outer masses fixed by total mass one and mean zero; y may be any
    point strictly between x and z.
    """

    x: tuple[float, float, int] = (-3.0, -0.05, 50)
    z: tuple[float, float, int] = (0.05, 3.0, 50)
    alpha: tuple[float, float, int] = (0.0, 1.0, 50)
    y: tuple[float, float, int] | None = None
    y_fracs: tuple[float, ...] = (0.5,)
    py: tuple[float, float, int] | None = None

    @classmethod
    def parse(cls, text: str) -> "D3GridSpec":
        kw = {}
        for part in text.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in ("x", "y", "z", "alpha", "py"):
                raise ValueError(f"unknown grid axis {key!r}")
            kw[key] = parse_axis(val)
        return cls(**kw)

    def laws(self) -> tuple[np.ndarray, np.ndarray]:
        """(support, probs) arrays of shape (N, 3) for every admissible grid point."""
        xs, zs = axis_values(self.x), axis_values(self.z)
        if self.py is not None:
            return self._direct(xs, zs)
        al = axis_values(self.alpha)
        if self.y is not None:
            X, Y, Z, A = np.meshgrid(xs, axis_values(self.y), zs, al, indexing="ij")
        else:
            X, T, Z, A = np.meshgrid(xs, np.asarray(self.y_fracs, float), zs, al, indexing="ij")
            Y = T * X
        X, Y, Z, A = (v.ravel() for v in (X, Y, Z, A))
        ok = (X < Y) & (Y < 0) & (Z > 0) & (A >= 0) & (A <= 1)
        X, Y, Z, A = X[ok], Y[ok], Z[ok], A[ok]
        p1x, p1z = Z / (Z - X), -X / (Z - X)
        p0y, p0z = Z / (Z - Y), -Y / (Z - Y)
        support = np.column_stack([X, Y, Z])
        probs = np.column_stack([A * p1x, (1 - A) * p0y, A * p1z + (1 - A) * p0z])
        return support, probs

    def _direct(self, xs, zs):
        ys = axis_values(self.y) if self.y is not None else None
        pys = axis_values(self.py)
        if ys is None:
            X, T, Z, P = np.meshgrid(xs, np.asarray(self.y_fracs, float), zs, pys, indexing="ij")
            Y = T * X
        else:
            X, Y, Z, P = np.meshgrid(xs, ys, zs, pys, indexing="ij")
        X, Y, Z, P = (v.ravel() for v in (X, Y, Z, P))
        px = (Z * (1 - P) + Y * P) / (Z - X)
        pz = 1 - P - px
        ok = (X < Y) & (Y < Z) & (P > 0) & (px > 0) & (pz > 0)
        support = np.column_stack([X[ok], Y[ok], Z[ok]])
        probs = np.column_stack([px[ok], P[ok], pz[ok]])
        return support, probs


@dataclass(frozen=True)
class SearchResult:
    best_b: float
    argmax: FiniteDist
    grid_size: int
    violations: int
    spot_checks: int = 0
    spot_check_max_diff: float = 0.0

    def to_json(self) -> dict:
        return {
            "best_b": self.best_b,
            "argmax": self.argmax.to_json(),
            "grid_size": self.grid_size,
            "violations": self.violations,
            "spot_checks": self.spot_checks,
            "spot_check_max_diff": float(self.spot_check_max_diff),
        }


def _batch(args):
    support, probs = args
    return b_functional_batch(support, probs)


def search_d3(grid: D3GridSpec, threads: int = 1, spot_checks: int = 200, seed: int = 0) -> SearchResult:
    """Evaluate B over every law of the grid.

    B is computed row-wise in bulk; a random subsample is recomputed with the
    scalar :func:`b_functional` and the largest disagreement is reported.
    """
    support, probs = grid.laws()
    n = support.shape[0]
    if n == 0:
        raise EmptyGrid("grid contains no admissible three-point law")
    if threads > 1 and n > 10_000:
        chunks = np.array_split(np.arange(n), threads * 4)
        with ProcessPoolExecutor(threads) as ex:
            parts = ex.map(_batch, [(support[c], probs[c]) for c in chunks])
            b = np.concatenate(list(parts))
    else:
        b = b_functional_batch(support, probs)
    k = int(np.argmax(b))
    rng = np.random.default_rng(seed)
    picks = rng.choice(n, size=min(spot_checks, n), replace=False)
    diff = 0.0
    for i in picks:
        d = FiniteDist.from_points(support[i], probs[i])
        diff = max(diff, abs(b_functional(standardize(d)) - b[i]))
    return SearchResult(
        best_b=float(b[k]),
        argmax=standardize(FiniteDist.from_points(support[k], probs[k])),
        grid_size=n,
        violations=int(np.count_nonzero(b > 1 + tol.BOUND_SLACK)),
        spot_checks=len(picks),
        spot_check_max_diff=diff,
    )


def zero_middle_sequence(x: float, z: float, q: float, ns: Sequence[int] = (10, 100, 1000)):
    """B along X_n = Y_n - E Y_n, Y_n = X + 1(X = 0)/n, for X on {x, 0, z} with P(X = 0) = q.

    Returns (list of (n, B(X_n)), B(X)).
    """
    if not (x < 0 < z and 0 < q < 1):
        raise DomainError("need x < 0 < z and q in (0, 1)")
    px, pz = (1 - q) * z / (z - x), (1 - q) * -x / (z - x)
    base = FiniteDist([x, 0.0, z], [px, q, pz])
    seq = []
    for n in ns:
        if 1 / n >= z:
            continue
        y = FiniteDist([x, 1 / n, z], [px, q, pz])
        y = FiniteDist(y.support - moments(y).mean, y.probs)
        seq.append((n, b_functional(y)))
    return seq, b_functional(base)


# ---------------------------------------------------------- lower bound

def lower_bound_sweep(p_grid: Sequence[float]) -> list[tuple[float, float]]:
    """(p, psi(p)) for each grid point."""
    ps = [float(p) for p in p_grid]
    if not ps:
        raise EmptyGrid("empty p grid")
    table = [(p, psi_lower_bound(p)) for p in ps]
    if any(abs(p - 0.5) < 1e-15 for p in ps):
        best = max(v for _, v in table)
        if best < 0.535377 - 1e-5:
            raise InvariantViolation(f"max psi {best} below 0.535377")
    return table


# -------------------------------------------------- random law generator

def random_centered_law(rng: np.random.Generator, m: int, standardized: bool = True) -> FiniteDist:
    """Law on m points drawn uniformly from [-5, 5] with Dirichlet(1) masses, shifted to mean zero."""
    while True:
        s = np.sort(rng.uniform(-5, 5, m))
        if m > 1 and np.min(np.diff(s)) < 1e-3:
            continue
        p = rng.dirichlet(np.ones(m))
        s = s - np.dot(p, s)
        d = FiniteDist.from_points(s, p)
        if len(d) != m:
            continue
        if m > 1 and moments(d).variance < 1e-6:
            continue
        if standardized and m > 1:
            d = standardize(d)
        return d


def random_two_point(rng: np.random.Generator) -> FiniteDist:
    from .dist import two_point

    x = -(10 ** rng.uniform(-2, 2))
    y = 10 ** rng.uniform(-2, 2)
    return two_point(x, y)
