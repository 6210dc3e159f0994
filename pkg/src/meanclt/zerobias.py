"""Zero-bias transform of finite-support mean-zero laws.

For X with mean zero and variance s2, X* has the piecewise-constant density
g*(x) = E[X 1(X > x)] / s2, which on a finite support a_1 < ... < a_m is
constant between consecutive support points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tolerances as tol
from .dist import FiniteDist, _readonly, check_centered, merge_tolerance
from .errors import (
    DegenerateDistribution,
    DegenerateMixture,
    InvalidDistribution,
    NonCenteredComponent,
)


@dataclass(frozen=True, eq=False)
class ZeroBiasDist:
    """Absolutely continuous law with constant density on each [b_k, b_{k+1})."""

    breakpoints: np.ndarray
    densities: np.ndarray

    def __post_init__(self):
        b = _readonly(self.breakpoints).reshape(-1)
        d = _readonly(self.densities).reshape(-1)
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "densities", d)
        if b.size < 2 or d.size != b.size - 1:
            raise InvalidDistribution("need m >= 2 breakpoints and m - 1 densities")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(d))):
            raise InvalidDistribution("breakpoints and densities must be finite")
        if np.any(np.diff(b) <= 0):
            raise InvalidDistribution("breakpoints must be strictly increasing")
        if np.any(d < 0):
            raise InvalidDistribution("densities must be nonnegative")
        if abs(self.masses().sum() - 1.0) > tol.MASS_TOL:
            raise InvalidDistribution("density does not integrate to 1")

    def masses(self) -> np.ndarray:
        return self.densities * np.diff(self.breakpoints)

    def cdf_levels(self) -> np.ndarray:
        """CDF at every breakpoint (0 at the first, 1 at the last)."""
        c = np.concatenate(([0.0], np.cumsum(self.masses())))
        c[-1] = 1.0
        return c

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        b = self.breakpoints
        return np.interp(x, b, self.cdf_levels(), left=0.0, right=1.0)

    def density_on(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Density on intervals [lo, hi) lying inside single pieces (looked up at midpoints)."""
        mid = 0.5 * (np.asarray(lo) + np.asarray(hi))
        k = np.searchsorted(self.breakpoints, mid, side="right") - 1
        inside = (k >= 0) & (k < self.densities.size)
        out = np.zeros(mid.shape)
        out[inside] = self.densities[k[inside]]
        return out

    def moment(self, k: int) -> float:
        """E[(X*)^k] by exact integration of x^k on each piece."""
        b = self.breakpoints
        return float(np.dot(self.densities, (b[1:] ** (k + 1) - b[:-1] ** (k + 1)) / (k + 1)))

    def to_json(self) -> dict:
        return {"breakpoints": self.breakpoints.tolist(), "densities": self.densities.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "ZeroBiasDist":
        return cls(obj["breakpoints"], obj["densities"])


def zero_bias(d: FiniteDist) -> ZeroBiasDist:
    m = check_centered(d)
    if len(d) < 2 or m.variance <= 0:
        raise DegenerateDistribution("zero-bias transform needs positive variance")
    a, p = d.support, d.probs
    xp = a * p
    # E[X 1(X > a_k)] from the right and -E[X 1(X <= a_k)] from the left agree for
    # centered X; use whichever side sums fewer cancelling terms
    right = np.cumsum(xp[::-1])[::-1][1:]
    left = -np.cumsum(xp)[:-1]
    mid = 0.5 * (a[:-1] + a[1:])
    c = np.where(mid >= 0, right, left)
    c = np.clip(c, 0.0, None)
    mass = c * np.diff(a)
    # total equals the variance up to the centering error; normalize so G* has unit mass
    return ZeroBiasDist(a, c / mass.sum())


def zero_bias_mixture(weights: Sequence[float], components: Sequence[FiniteDist]) -> ZeroBiasDist:
    """Zero-bias law of the mixture sum_s w_s m_s of mean-zero components.

    It is the mixture of the component zero-bias laws with weights
    w_s var_s / var_mix; point masses get weight zero.
    """
    w = np.asarray(weights, dtype=float)
    if w.size != len(components) or w.size == 0:
        raise InvalidDistribution("weights and components must match")
    if np.any(w < 0) or abs(w.sum() - 1.0) > tol.MASS_TOL:
        raise InvalidDistribution("weights must be nonnegative and sum to 1")
    variances = np.array([check_centered(c, NonCenteredComponent).variance for c in components])
    total = float(np.dot(w, variances))
    if total <= 0:
        raise DegenerateMixture("mixture has zero variance")
    nu = w * variances / total
    parts = [(n, zero_bias(c)) for n, c in zip(nu, components) if n > 0 and len(c) > 1]
    b = np.unique(np.concatenate([z.breakpoints for _, z in parts]))
    eps = merge_tolerance(b[0], b[-1])
    b = b[np.concatenate(([True], np.diff(b) > eps))]
    dens = np.zeros(b.size - 1)
    for n, z in parts:
        dens += n * z.density_on(b[:-1], b[1:])
    mass = (dens * np.diff(b)).sum()
    return ZeroBiasDist(b, dens / mass)


def zb_mean_abs(z: ZeroBiasDist) -> float:
    """E|X*| integrated piece by piece (pieces straddling 0 split there)."""
    lo, hi = z.breakpoints[:-1], z.breakpoints[1:]
    seg = np.where(
        lo >= 0,
        (hi**2 - lo**2) / 2,
        np.where(hi <= 0, (lo**2 - hi**2) / 2, (lo**2 + hi**2) / 2),
    )
    return float(np.dot(z.densities, seg))


def zero_bias_distance(d: FiniteDist) -> float:
    """||G* - G||_1, the distance from a law to its zero-bias transform."""
    from .wasserstein import w1_step_pwl

    return w1_step_pwl(d, zero_bias(d))
