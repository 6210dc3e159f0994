"""Finite-support real distributions.

A :class:`FiniteDist` is an immutable pair of arrays (sorted support, positive
probabilities).  Everything here is exact up to double rounding: moments are
weighted sums, convolution enumerates pairwise sums and merges coincident
points.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from . import tolerances as tol
from .errors import (
    DegenerateDistribution,
    InvalidDistribution,
    NonCenteredInput,
    SupportBlowup,
    ZeroScale,
)


def merge_tolerance(lo: float, hi: float) -> float:
    return tol.MERGE_REL * max(1.0, hi - lo)


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteDist:
    """Law of a random variable taking finitely many values.

    ``support`` is strictly increasing, ``probs`` strictly positive and sums
    to one.  Use :meth:`from_points` to build from unsorted or duplicated
    points; the plain constructor only validates.
    """

    support: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        s = _readonly(self.support).reshape(-1)
        p = _readonly(self.probs).reshape(-1)
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "probs", p)
        if s.size == 0 or s.size != p.size:
            raise InvalidDistribution("support and probs must be nonempty and of equal length")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(p))):
            raise InvalidDistribution("support and probs must be finite")
        if np.any(p <= 0):
            raise InvalidDistribution("probabilities must be strictly positive")
        if abs(p.sum() - 1.0) > tol.MASS_TOL:
            raise InvalidDistribution(f"total mass {p.sum()!r} differs from 1")
        if s.size > 1 and np.any(np.diff(s) <= merge_tolerance(s[0], s[-1])):
            raise InvalidDistribution("support must be strictly increasing and separated")

    @classmethod
    def from_points(cls, support, probs) -> "FiniteDist":
        """Sort, merge near-coincident points, drop zero masses and renormalize."""
        s = np.asarray(support, dtype=float).reshape(-1)
        p = np.asarray(probs, dtype=float).reshape(-1)
        if s.size != p.size:
            raise InvalidDistribution("support and probs must have equal length")
        keep = p > 0
        s, p = s[keep], p[keep]
        if s.size == 0:
            raise InvalidDistribution("no positive mass")
        order = np.argsort(s, kind="stable")
        s, p = _merge_sorted(s[order], p[order])
        p = p / p.sum()
        # subnormal masses can round to zero on normalization
        keep = p > 0
        if not keep.all():
            s, p = s[keep], p[keep] / p[keep].sum()
        return cls(s, p)

    def __len__(self) -> int:
        return self.support.size

    def __repr__(self) -> str:
        if len(self) <= 6:
            return f"FiniteDist(support={self.support.tolist()}, probs={self.probs.tolist()})"
        return f"FiniteDist(<{len(self)} points on [{self.support[0]:.6g}, {self.support[-1]:.6g}]>)"

    def cdf_levels(self) -> np.ndarray:
        """F at each support point, i.e. P(X <= support[k])."""
        c = np.cumsum(self.probs)
        c[-1] = 1.0
        return c

    def survival_levels(self) -> np.ndarray:
        """P(X > support[k]) computed from the right, accurate in the upper tail."""
        s = np.cumsum(self.probs[::-1])[::-1]
        out = np.empty_like(s)
        out[:-1] = s[1:]
        out[-1] = 0.0
        return out

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.support, x, side="right")
        return np.concatenate(([0.0], self.cdf_levels()))[idx]

    def expect(self, f) -> float:
        return float(np.dot(self.probs, f(self.support)))

    def same_as(self, other: "FiniteDist", atol: float = 0.0) -> bool:
        return (
            len(self) == len(other)
            and np.allclose(self.support, other.support, rtol=0, atol=atol)
            and np.allclose(self.probs, other.probs, rtol=0, atol=atol)
        )

    def to_json(self) -> dict:
        return {"support": self.support.tolist(), "probs": self.probs.tolist()}


def _merge_sorted(s: np.ndarray, p: np.ndarray):
    """Collapse runs of sorted points closer than the merge tolerance.

    A merged point sits at the probability-weighted mean of its run.
    """
    if s.size <= 1:
        return s, p
    eps = merge_tolerance(s[0], s[-1])
    starts = np.flatnonzero(np.concatenate(([True], np.diff(s) > eps)))
    if starts.size == s.size:
        return s, p
    mass = np.add.reduceat(p, starts)
    loc = np.add.reduceat(s * p, starts) / mass
    return loc, mass


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    third: float
    abs_third: float
    omega: float | None

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class LatticeInfo:
    is_lattice: bool
    span: float
    offset: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def moments(d: FiniteDist) -> MomentSummary:
    s, p = d.support, d.probs
    mean = float(np.dot(p, s))
    var = float(np.dot(p, (s - mean) ** 2))
    third = float(np.dot(p, s**3))
    abs_third = float(np.dot(p, np.abs(s) ** 3))
    omega = abs(third) / (3 * var) if var > 0 else None
    return MomentSummary(mean, var, third, abs_third, omega)


def _check_variance(d: FiniteDist) -> MomentSummary:
    m = moments(d)
    if m.variance <= merge_tolerance(d.support[0], d.support[-1]) ** 2 or len(d) < 2:
        raise DegenerateDistribution("distribution has zero variance")
    return m


def check_centered(d: FiniteDist, exc=NonCenteredInput) -> MomentSummary:
    m = moments(d)
    if abs(m.mean) > tol.CENTER_TOL:
        raise exc(f"mean {m.mean:.3e} is not zero")
    return m


def standardize(d: FiniteDist) -> FiniteDist:
    m = _check_variance(d)
    return FiniteDist((d.support - m.mean) / math.sqrt(m.variance), d.probs)


def scale(d: FiniteDist, a: float) -> FiniteDist:
    """Law of ``a * X``."""
    if a == 0:
        raise ZeroScale("scale factor must be nonzero")
    if a > 0:
        return FiniteDist(a * d.support, d.probs)
    return FiniteDist(a * d.support[::-1], d.probs[::-1])


def shift(d: FiniteDist, b: float) -> FiniteDist:
    return FiniteDist(d.support + b, d.probs)


def point_mass(a: float = 0.0) -> FiniteDist:
    return FiniteDist([a], [1.0])


def rademacher() -> FiniteDist:
    return FiniteDist([-1.0, 1.0], [0.5, 0.5])


def two_point(x: float, y: float) -> FiniteDist:
    """The unique mean-zero law supported on {x, y}, x < 0 < y."""
    if not x < 0 < y:
        raise InvalidDistribution("need x < 0 < y")
    return FiniteDist([x, y], [y / (y - x), -x / (y - x)])


def standardized_bernoulli(p: float) -> FiniteDist:
    """Law of (xi - p)/sqrt(pq) for xi ~ Bernoulli(p)."""
    q = 1.0 - p
    return FiniteDist([-math.sqrt(p / q), math.sqrt(q / p)], [q, p])


def mix(weights: Sequence[float], components: Sequence[FiniteDist]) -> FiniteDist:
    """The weighted mixture sum_s w_s m_s as a single FiniteDist."""
    w = np.asarray(weights, dtype=float)
    if w.size != len(components) or w.size == 0:
        raise InvalidDistribution("weights and components must match")
    if np.any(w < 0) or abs(w.sum() - 1.0) > tol.MASS_TOL:
        raise InvalidDistribution("mixture weights must be nonnegative and sum to 1")
    s = np.concatenate([c.support for c in components])
    p = np.concatenate([wi * c.probs for wi, c in zip(w, components)])
    return FiniteDist.from_points(s, p)


# ---------------------------------------------------------------- lattice

def _real_gcd(a: float, b: float, eps: float) -> float | None:
    a, b = max(a, b), min(a, b)
    for _ in range(tol.LATTICE_MAX_ITER):
        if b <= eps:
            return a
        r = math.fmod(a, b)
        if b - r <= eps:
            r = 0.0
        a, b = b, r
    return None


def lattice_span(d: FiniteDist) -> LatticeInfo:
    s = d.support
    if s.size == 1:
        return LatticeInfo(True, 0.0, float(s[0]))
    gaps = np.sort(np.diff(s))
    big = gaps[-1]
    eps = tol.LATTICE_REL * big
    # distinct gaps only; runs closer than eps are one gap
    uniq = gaps[np.concatenate(([True], np.diff(gaps) > eps))]
    h = uniq[-1]
    for g in uniq[:-1][::-1]:
        h = _real_gcd(h, g, eps)
        if h is None or (s[-1] - s[0]) / h > tol.LATTICE_MAX_STEPS:
            return LatticeInfo(False, 0.0, float(s[0]))
    k = np.round((s - s[0]) / h)
    if np.max(np.abs(s - s[0] - k * h)) > tol.LATTICE_REL * max(h, 1e-300) * max(1.0, k[-1]):
        return LatticeInfo(False, 0.0, float(s[0]))
    return LatticeInfo(True, float(h), float(s[0]))


def _lattice_indices(d: FiniteDist, info: LatticeInfo, h: float) -> np.ndarray:
    return np.round((d.support - info.offset) / h).astype(np.int64)


# ------------------------------------------------------------ convolution

_GENERIC_PAIR_CAP = 50_000_000


def convolve(d1: FiniteDist, d2: FiniteDist) -> FiniteDist:
    """Law of X1 + X2 for independent X1 ~ d1, X2 ~ d2."""
    if len(d1) == 1:
        return shift(d2, d1.support[0])
    if len(d2) == 1:
        return shift(d1, d2.support[0])
    l1, l2 = lattice_span(d1), lattice_span(d2)
    if l1.is_lattice and l2.is_lattice:
        h = _real_gcd(l1.span, l2.span, tol.LATTICE_REL * max(l1.span, l2.span))
        if h is not None and max(l1.span, l2.span) / h <= 64:
            return _convolve_lattice(d1, d2, l1, l2, h)
    if len(d1) * len(d2) > _GENERIC_PAIR_CAP:
        raise SupportBlowup(f"{len(d1)} x {len(d2)} pairwise sums exceed the enumeration cap")
    s = np.add.outer(d1.support, d2.support).ravel()
    p = np.multiply.outer(d1.probs, d2.probs).ravel()
    out = FiniteDist.from_points(s, p)
    if len(out) > tol.SUPPORT_GUARD:
        raise SupportBlowup(f"convolution support has {len(out)} points")
    return out


def _convolve_lattice(d1, d2, l1, l2, h) -> FiniteDist:
    k1 = _lattice_indices(d1, l1, h)
    k2 = _lattice_indices(d2, l2, h)
    n = int(k1[-1] + k2[-1] + 1)
    if n > 4 * tol.SUPPORT_GUARD:
        raise SupportBlowup(f"lattice convolution spans {n} cells")
    a = np.zeros(k1[-1] + 1)
    a[k1] = d1.probs
    b = np.zeros(k2[-1] + 1)
    b[k2] = d2.probs
    c = np.convolve(a, b)
    idx = np.flatnonzero(c > 0)
    if idx.size > tol.SUPPORT_GUARD:
        raise SupportBlowup(f"convolution support has {idx.size} points")
    support = (l1.offset + l2.offset) + idx * h
    probs = c[idx]
    return FiniteDist(support, probs / probs.sum())


def normalized_sum(components: Sequence[FiniteDist]) -> FiniteDist:
    """Law of (X_1 + ... + X_n)/sigma, sigma^2 = sum of the component variances."""
    if not components:
        raise DegenerateDistribution("no components")
    total_var = 0.0
    for c in components:
        m = check_centered(c)
        if m.variance <= 0:
            raise DegenerateDistribution("component with zero variance")
        total_var += m.variance
    acc = components[0]
    for c in components[1:]:
        acc = convolve(acc, c)
    return scale(acc, 1.0 / math.sqrt(total_var))


def iid_sum(g: FiniteDist, n: int) -> FiniteDist:
    """Law of X_1 + ... + X_n for iid X_i ~ g (not normalized).

    Lattice laws go through binary powering of index convolutions.  Otherwise
    the multinomial law of the occupation counts is enumerated when it has at
    most ``SUPPORT_GUARD`` cells, falling back to binary powering.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1 or len(g) == 1:
        return FiniteDist.from_points(n * g.support, g.probs)
    if not lattice_span(g).is_lattice:
        m = len(g)
        if math.comb(n + m - 1, m - 1) <= tol.SUPPORT_GUARD:
            return _multinomial_sum(g, n)
    result = None
    base = g
    while n:
        if n & 1:
            result = base if result is None else convolve(result, base)
        n >>= 1
        if n:
            base = convolve(base, base)
    return result


def _compositions(n: int, m: int) -> np.ndarray:
    """All nonnegative integer vectors of length m summing to n, one per row."""
    if m == 1:
        return np.array([[n]], dtype=np.int64)
    rows = []
    for k in range(n + 1):
        rest = _compositions(n - k, m - 1)
        rows.append(np.column_stack([np.full(len(rest), k, dtype=np.int64), rest]))
    return np.vstack(rows)


def _multinomial_sum(g: FiniteDist, n: int) -> FiniteDist:
    if len(g) == 2:
        k = np.arange(n + 1)
        counts = np.column_stack([n - k, k])
    elif len(g) == 3:
        i, j = np.triu_indices(n + 1)
        # i + (j - i) + (n - j) = n
        counts = np.column_stack([i, j - i, n - j])
    else:
        counts = _compositions(n, len(g))
    logp = gammaln(n + 1) - gammaln(counts + 1).sum(axis=1) + counts @ np.log(g.probs)
    values = counts @ g.support
    return FiniteDist.from_points(values, np.exp(logp - logp.max()))


# -------------------------------------------------------------------- I/O

def from_json(obj: dict) -> FiniteDist:
    """Build from ``{"support": [...], "probs": [...]}`` with the loader's checks."""
    try:
        s = np.asarray(obj["support"], dtype=float)
        p = np.asarray(obj["probs"], dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidDistribution(f"malformed distribution JSON: {e}") from e
    if s.ndim != 1 or s.shape != p.shape or s.size == 0:
        raise InvalidDistribution("support and probs must be equal-length nonempty lists")
    if not (np.all(np.isfinite(s)) and np.all(np.isfinite(p))):
        raise InvalidDistribution("NaN or Inf in distribution")
    if np.any(p <= 0):
        raise InvalidDistribution("probabilities must be strictly positive")
    if abs(p.sum() - 1.0) > tol.LOAD_MASS_TOL:
        raise InvalidDistribution(f"total mass {p.sum()!r} is not 1")
    return FiniteDist.from_points(s, p)


def load(path) -> FiniteDist:
    with open(path) as fh:
        return from_json(json.load(fh))
