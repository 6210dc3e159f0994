"""Mixture decompositions of finite-support mean-zero laws.

* :func:`reduce_to_d3` splits a standardized law on m > 3 points into a
  mixture of standardized laws on at most three points by moving along null
  vectors of the moment matrix.
* :func:`two_point_mixture` writes a law without an atom at zero as a mixture
  of mean-zero two-point laws.
* :func:`three_point_split` is the special case for three points x < y < 0 < z,
  and :func:`qp_inequality_gap` / :func:`coupling_bound_check` evaluate the
  distance comparisons behind the bound B <= 1 on three-point laws.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .dist import FiniteDist, check_centered, merge_tolerance, mix, moments, scale, two_point
from .errors import (
    AtomAtZero,
    InvalidDistribution,
    InvariantViolation,
    MixtureBlowup,
    NotStandardized,
    OneSidedSupport,
    OrderingViolation,
    WrongSupportSize,
    ZeroMiddlePoint,
)
from .wasserstein import w1_step_pwl
from .zerobias import zero_bias, zero_bias_mixture


@dataclass(frozen=True, eq=False)
class MixtureDecomposition:
    weights: np.ndarray
    components: list[FiniteDist]

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if w.size != len(self.components) or w.size == 0:
            raise InvalidDistribution("weights and components must match")
        if np.any(w <= 0) or abs(w.sum() - 1) > tol.MASS_TOL:
            raise InvalidDistribution("weights must be positive and sum to 1")

    def __len__(self):
        return len(self.components)

    def recompose(self) -> FiniteDist:
        return mix(self.weights, self.components)

    def to_json(self) -> dict:
        return {"weights": self.weights.tolist(), "components": [c.to_json() for c in self.components]}


# ------------------------------------------------------------ D3 reduction

def null_vector(A: np.ndarray) -> np.ndarray:
    """Nonzero v with A v = 0 by Gaussian elimination with partial pivoting.

    The last non-pivot column is set to 1 and the other free variables to 0.
    """
    R = np.array(A, dtype=float)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = r + int(np.argmax(np.abs(R[r:, c])))
        if abs(R[i, c]) <= 1e-13 * max(1.0, np.abs(R[:, c]).max()):
            continue
        R[[r, i]] = R[[i, r]]
        R[r] /= R[r, c]
        for k in range(rows):
            if k != r:
                R[k] -= R[k, c] * R[r]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    if not free:
        raise ValueError("matrix has trivial null space")
    v = np.zeros(cols)
    v[free[-1]] = 1.0
    for row, c in enumerate(pivots):
        v[c] = -R[row, free[-1]]
    return v


def _split(p: np.ndarray, v: np.ndarray):
    """Hitting times t1, t2 of the simplex boundary along +v and -v, and the endpoints."""
    up = np.full(p.shape, np.inf)
    down = np.full(p.shape, np.inf)
    up[v < 0] = p[v < 0] / -v[v < 0]
    down[v > 0] = p[v > 0] / v[v > 0]
    t1, t2 = up.min(), down.min()
    p1 = p + t1 * v
    p2 = p - t2 * v
    # coordinates that hit zero are set exactly
    p1[up <= t1 * (1 + 1e-12)] = 0.0
    p2[down <= t2 * (1 + 1e-12)] = 0.0
    return t1, t2, np.clip(p1, 0, None), np.clip(p2, 0, None)


def reduce_to_d3(d: FiniteDist) -> MixtureDecomposition:
    """Decompose a standardized law into a mixture of standardized laws on <= 3 points."""
    m = moments(d)
    if abs(m.mean) > tol.STANDARD_TOL or abs(m.variance - 1) > tol.STANDARD_TOL:
        raise NotStandardized(f"mean {m.mean:.3e}, variance {m.variance:.12f}")
    a = d.support
    pieces: dict[tuple, list] = {}

    def recurse(idx: np.ndarray, p: np.ndarray, weight: float, depth: int):
        if weight < tol.MIN_WEIGHT:
            return
        if depth > tol.MIXTURE_MAX_DEPTH:
            raise MixtureBlowup("recursion depth exceeded")
        keep = p > 0
        idx, p = idx[keep], p[keep] / p[keep].sum()
        if idx.size <= 3:
            acc = pieces.setdefault(tuple(idx.tolist()), [0.0, np.zeros(idx.size)])
            acc[0] += weight
            acc[1] += weight * p
            return
        x = a[idx]
        A = np.vstack([np.ones_like(x), x, x * x])
        t1, t2, p1, p2 = _split(p, null_vector(A))
        recurse(idx, p1, weight * t2 / (t1 + t2), depth + 1)
        recurse(idx, p2, weight * t1 / (t1 + t2), depth + 1)

    recurse(np.arange(len(d)), d.probs.copy(), 1.0, 0)
    keys = sorted(pieces)
    w = np.array([pieces[k][0] for k in keys])
    comps = [FiniteDist(a[list(k)], pieces[k][1] / pieces[k][0]) for k in keys]
    return MixtureDecomposition(w / w.sum(), comps)


# ------------------------------------------------------- two-point mixtures

_EXHAUSTED = 1e-13


def two_point_mixture(d: FiniteDist) -> MixtureDecomposition:
    """Greedy pairing of the most negative and most positive remaining points."""
    check_centered(d)
    a = d.support
    eps = merge_tolerance(a[0], a[-1])
    if np.any(np.abs(a) < eps):
        raise AtomAtZero("law has an atom at zero")
    if a[0] > 0 or a[-1] < 0:
        raise OneSidedSupport("need support points on both sides of zero")
    resid = d.probs.copy()
    lo, hi = 0, len(a) - 1
    weights, comps = [], []
    while lo < hi and a[lo] < 0 < a[hi]:
        x, z = a[lo], a[hi]
        px, pz = z / (z - x), -x / (z - x)
        w = min(resid[lo] / px, resid[hi] / pz)
        weights.append(w)
        comps.append(two_point(x, z))
        resid[lo] -= w * px
        resid[hi] -= w * pz
        # a side whose leftover is rounding noise counts as exhausted
        if resid[lo] <= _EXHAUSTED:
            lo += 1
        if resid[hi] <= _EXHAUSTED:
            hi -= 1
    w = np.array(weights)
    return MixtureDecomposition(w / w.sum(), comps)


# -------------------------------------------------------- three-point split

@dataclass(frozen=True, eq=False)
class ThreePointSplit:
    """X = alpha m1 + (1 - alpha) m0 on x < y < 0 < z (canonical orientation).

    m1 is the mean-zero law on {x, z}, m0 the one on {y, z}.  When the source
    law had its middle point above zero it was reflected first; ``reflected``
    records that and :meth:`source` maps back.
    """

    alpha: float
    beta: float
    m1: FiniteDist
    m0: FiniteDist
    reflected: bool = False
    points: tuple = field(default=())

    @classmethod
    def from_points(cls, x: float, y: float, z: float, alpha: float, reflected: bool = False):
        if not x < y < 0 < z:
            raise OrderingViolation("need x < y < 0 < z")
        if not 0 <= alpha <= 1:
            raise InvalidDistribution("alpha must lie in [0, 1]")
        denom = alpha * x + (1 - alpha) * y
        beta = alpha * x / denom
        return cls(alpha, beta, two_point(x, z), two_point(y, z), reflected, (x, y, z))

    def mixture(self) -> FiniteDist:
        """The law alpha m1 + (1 - alpha) m0 in canonical orientation."""
        w = [self.alpha, 1 - self.alpha]
        pairs = [(wi, c) for wi, c in zip(w, (self.m1, self.m0)) if wi > 0]
        return mix([p[0] for p in pairs], [p[1] for p in pairs])

    def source(self) -> FiniteDist:
        law = self.mixture()
        return scale(law, -1.0) if self.reflected else law


def three_point_split(d: FiniteDist) -> ThreePointSplit:
    if len(d) != 3:
        raise WrongSupportSize(f"expected 3 support points, got {len(d)}")
    check_centered(d)
    x, y, z = d.support
    if abs(y) <= merge_tolerance(x, z):
        raise ZeroMiddlePoint("middle support point is zero")
    reflected = y > 0
    if reflected:
        d = scale(d, -1.0)
        x, y, z = d.support
    alpha = d.probs[0] * (z - x) / z
    return ThreePointSplit.from_points(x, y, z, min(max(alpha, 0.0), 1.0), reflected)


# ------------------------------------------------ distance comparisons

def _two_point_distance(x: float, z: float) -> float:
    return (x * x + z * z) / (2 * (z - x))


def qp_gap_closed_form(x: float, y: float, z: float) -> float:
    """||m1* - m1||_1 - ||m1* - m0||_1 from the algebraic expressions."""
    if y * (x + z) <= y * y + z * z:
        return -y * (y - x) * (y * y + 2 * z * z - y * (x + 2 * z)) / ((z - x) * (z - y) ** 2)
    return _two_point_distance(x, z) + (x + z) / 2


def qp_inequality_gap(x: float, y: float, z: float, atol: float = 1e-10) -> float:
    """||m1* - m1||_1 - ||m1* - m0||_1, checked by two independent routes."""
    if not x < y < 0 < z:
        raise OrderingViolation("need x < y < 0 < z")
    m1, m0 = two_point(x, z), two_point(y, z)
    m1s = zero_bias(m1)
    constructive = w1_step_pwl(m1, m1s) - w1_step_pwl(m0, m1s)
    algebraic = qp_gap_closed_form(x, y, z)
    if abs(constructive - algebraic) > atol:
        raise InvariantViolation(
            f"gap routes disagree at ({x}, {y}, {z}): {constructive} vs {algebraic}"
        )
    if constructive < -1e-12:
        raise InvariantViolation(f"negative gap {constructive} at ({x}, {y}, {z})")
    return constructive


def coupling_bound_check(split: ThreePointSplit) -> tuple[float, float]:
    """(lhs, rhs) of ||m_a* - m_a|| <= a||m1*-m1|| + (1-b)||m0*-m0|| + (b-a)||m1*-m0||.

    Also checks that rhs does not exceed b||m1*-m1|| + (1-b)||m0*-m0||, which
    equals E|X_a|^3 / (2 E X_a^2).
    """
    a, b = split.alpha, split.beta
    m1, m0 = split.m1, split.m0
    m1s, m0s = zero_bias(m1), zero_bias(m0)
    d11 = w1_step_pwl(m1, m1s)
    d00 = w1_step_pwl(m0, m0s)
    d10 = w1_step_pwl(m0, m1s)
    law = split.mixture()
    w = [(wi, c) for wi, c in zip((a, 1 - a), (m1, m0)) if wi > 0]
    law_star = zero_bias_mixture([p[0] for p in w], [p[1] for p in w])
    lhs = w1_step_pwl(law, law_star)
    rhs = a * d11 + (1 - b) * d00 + (b - a) * d10
    fit = b * d11 + (1 - b) * d00
    if lhs > rhs + 1e-12:
        raise InvariantViolation(f"coupling bound fails: {lhs} > {rhs}")
    if rhs > fit + 1e-12:
        raise InvariantViolation(f"coupling rhs {rhs} exceeds {fit}")
    return lhs, rhs
