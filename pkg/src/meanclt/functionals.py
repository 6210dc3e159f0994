"""Stein functionals B(G), A(G) and the Bernoulli lower-bound curve psi(p)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import normal
from . import tolerances as tol
from .dist import (
    FiniteDist,
    LatticeInfo,
    MomentSummary,
    check_centered,
    lattice_span,
    moments,
    standardized_bernoulli,
)
from .errors import DegenerateDistribution, DomainError
from .quadrature import adaptive_gauss_legendre
from .wasserstein import _abs_linear_integral, w1_step_normal, w1_step_pwl
from .zerobias import zero_bias


def b_functional(d: FiniteDist) -> float:
    """B(G) = 2 s2 ||G* - G||_1 / E|X|^3 for a mean-zero law G."""
    m = check_centered(d)
    if len(d) < 2 or m.variance <= 0:
        raise DegenerateDistribution("B(G) needs positive variance")
    return 2 * m.variance * w1_step_pwl(d, zero_bias(d)) / m.abs_third


def _central(d: FiniteDist):
    m = moments(d)
    if len(d) < 2 or m.variance <= 0:
        raise DegenerateDistribution("A(G) needs positive variance")
    x = d.support - m.mean
    third = float(np.dot(d.probs, x**3))
    abs_third = float(np.dot(d.probs, np.abs(x) ** 3))
    return m.variance, third, abs_third


def _inner(alpha: float, beta):
    """(2 pi)^{-1/2} times the integral over x of |alpha (1 - x^2) + beta| exp(-x^2/2).

    For alpha > 0 the integrand is positive exactly on |x| < r with
    r^2 = 1 + beta/alpha; Gaussian moments on (-r, r) are closed form.
    """
    beta = np.asarray(beta, dtype=float)
    if alpha == 0:
        return np.abs(beta)
    t = 1 + beta / alpha
    r = np.sqrt(np.clip(t, 0, None))
    inside = 2 * beta * (2 * normal.cdf(r) - 1) + 4 * alpha * r * normal.pdf(r) - beta
    return np.where(t > 0, inside, np.abs(beta))


def a_parameters(d: FiniteDist):
    """(sigma, omega, h, LatticeInfo) entering Zolotarev's form of A(G)."""
    var, third, _ = _central(d)
    info = lattice_span(d)
    h = info.span if info.is_lattice else 0.0
    return math.sqrt(var), abs(third) / (3 * var), h, info


def a_functional(d: FiniteDist) -> float:
    """Esseen's constant A(G) = lim sqrt(n) ||F_n - Phi||_1.

    Central moments are used, so the value is translation invariant.
    """
    sigma, omega, h, _ = a_parameters(d)
    alpha = omega / 2
    if h == 0:
        return float(_inner(alpha, 0.0)) / sigma
    kinks = [0.0]
    if alpha > 0:
        kinks.append(-alpha / h)
    val = adaptive_gauss_legendre(
        lambda u: _inner(alpha, h * u), -0.5, 0.5, atol=tol.A_QUAD_TOL, breakpoints=kinks
    )
    return val / sigma


def zolotarev_ratio(d: FiniteDist) -> float:
    """sigma^3 A(G) / E|X|^3; never exceeds 1/2."""
    var, _, abs_third = _central(d)
    return var**1.5 * a_functional(d) / abs_third


def psi_lower_bound(p: float) -> float:
    """sqrt(pq)/(p^2 + q^2) * ||G_p - Phi||_1 for the standardized Bernoulli(p) law G_p."""
    if not 0 < p < 1:
        raise DomainError("p must lie in (0, 1)")
    q = 1 - p
    return math.sqrt(p * q) / (p * p + q * q) * w1_step_normal(standardized_bernoulli(p))


@dataclass(frozen=True)
class FunctionalReport:
    b_value: float
    a_value: float
    zolotarev_ratio: float
    psi: float | None
    moments: MomentSummary
    lattice: LatticeInfo

    def to_json(self) -> dict:
        return {
            "b_value": self.b_value,
            "a_value": self.a_value,
            "zolotarev_ratio": self.zolotarev_ratio,
            "psi": self.psi,
            "moments": self.moments.to_json(),
            "lattice": self.lattice.to_json(),
        }


def functional_report(d: FiniteDist, psi: float | None = None) -> FunctionalReport:
    a = a_functional(d)
    var, _, abs_third = _central(d)
    return FunctionalReport(
        b_value=b_functional(d),
        a_value=a,
        zolotarev_ratio=var**1.5 * a / abs_third,
        psi=psi,
        moments=moments(d),
        lattice=lattice_span(d),
    )


def b_functional_batch(support, probs) -> np.ndarray:
    """B(G) for many mean-zero laws sharing a support size, one law per row.

    ``support`` rows must be increasing; zero probabilities are allowed (the
    point is then only a breakpoint).  Same quantity as :func:`b_functional`,
    evaluated with array arithmetic over the rows.
    """
    a = np.atleast_2d(np.asarray(support, dtype=float))
    p = np.atleast_2d(np.asarray(probs, dtype=float))
    var = np.sum(p * a * a, axis=1)
    abs_third = np.sum(p * np.abs(a) ** 3, axis=1)
    xp = a * p
    right = np.cumsum(xp[:, ::-1], axis=1)[:, ::-1][:, 1:]
    left = -np.cumsum(xp, axis=1)[:, :-1]
    gaps = np.diff(a, axis=1)
    mid = 0.5 * (a[:, 1:] + a[:, :-1])
    c = np.clip(np.where(mid >= 0, right, left), 0, None)
    cell = c * gaps
    cell /= cell.sum(axis=1, keepdims=True)
    fz = np.concatenate([np.zeros((a.shape[0], 1)), np.cumsum(cell, axis=1)], axis=1)
    step = np.cumsum(p, axis=1)[:, :-1]
    dist = _abs_linear_integral(fz[:, :-1] - step, fz[:, 1:] - step, gaps).sum(axis=1)
    return 2 * var * dist / abs_third
