"""Exact L1 distances between distribution functions.

Three kinds of CDF appear: step functions (:class:`FiniteDist`), continuous
piecewise-linear ones (:class:`ZeroBiasDist`) and the standard normal.  On a
common breakpoint grid the difference of two of the first kinds is linear on
every cell, so each cell integral has a closed form; against the normal the
cell integrals use the antiderivative Psi of Phi.
"""

from __future__ import annotations


import numpy as np

from . import normal
from . import tolerances as tol
from .dist import FiniteDist
from .errors import DomainError
from .zerobias import ZeroBiasDist


def _abs_linear_integral(e0, e1, length):
    """Integral of |e(t)| over a cell of given length where e is linear from e0 to e1."""
    e0, e1 = np.asarray(e0, dtype=float), np.asarray(e1, dtype=float)
    a0, a1 = np.abs(e0), np.abs(e1)
    same = e0 * e1 >= 0
    tot = a0 + a1
    with np.errstate(invalid="ignore", divide="ignore"):
        crossing = (e0 * e0 + e1 * e1) / (2 * tot)
    return np.where(same, 0.5 * tot, np.where(tot > 0, crossing, 0.0)) * length


def _step_gap(d1: FiniteDist, d2: FiniteDist, x: np.ndarray) -> np.ndarray:
    """F1(x) - F2(x); near the top the survival sums are used to avoid 1 - 1 cancellation."""
    def levels(d):
        k = np.searchsorted(d.support, x, side="right")
        f = np.concatenate(([0.0], d.cdf_levels()))[k]
        s = np.concatenate(([1.0], d.survival_levels()))[k]
        return f, s

    f1, s1 = levels(d1)
    f2, s2 = levels(d2)
    return np.where(f1 + f2 <= 1.0, f1 - f2, s2 - s1)


def w1_step_step(d1: FiniteDist, d2: FiniteDist) -> float:
    grid = np.union1d(d1.support, d2.support)
    if grid.size < 2:
        return 0.0
    gap = _step_gap(d1, d2, grid[:-1])
    return float(np.dot(np.abs(gap), np.diff(grid)))


def w1_step_pwl(d: FiniteDist, z: ZeroBiasDist) -> float:
    grid = np.union1d(d.support, z.breakpoints)
    lo, hi = grid[:-1], grid[1:]
    c = d.cdf(lo)
    fz = z.cdf(grid)
    return float(_abs_linear_integral(fz[:-1] - c, fz[1:] - c, hi - lo).sum())


def w1_pwl_pwl(z1: ZeroBiasDist, z2: ZeroBiasDist) -> float:
    grid = np.union1d(z1.breakpoints, z2.breakpoints)
    e = z1.cdf(grid) - z2.cdf(grid)
    return float(_abs_linear_integral(e[:-1], e[1:], np.diff(grid)).sum())


def w1(a, b) -> float:
    """L1 distance between any two of FiniteDist / ZeroBiasDist."""
    if isinstance(a, FiniteDist) and isinstance(b, FiniteDist):
        return w1_step_step(a, b)
    if isinstance(a, FiniteDist):
        return w1_step_pwl(a, b)
    if isinstance(b, FiniteDist):
        return w1_step_pwl(b, a)
    return w1_pwl_pwl(a, b)


# ------------------------------------------------------------------ normal

def _abs_gap_to_normal(a, b, c):
    """Integral over [a, b] of |Phi(x) - c| for constant levels c in [0, 1/2]."""
    psi = normal.cdf_integral
    with np.errstate(divide="ignore"):
        r = np.clip(normal.quantile(np.asarray(c, dtype=float)), a, b)
    left = c * (r - a) - (psi(r) - psi(a))
    right = (psi(b) - psi(r)) - c * (b - r)
    return left + right


def w1_step_normal(d: FiniteDist) -> float:
    """||F - Phi||_1 for a step CDF F, in closed form."""
    a = d.support
    psi = normal.cdf_integral
    tails = psi(a[0]) + psi(-a[-1])
    if a.size == 1:
        return float(tails)
    lo, hi = a[:-1], a[1:]
    c = d.cdf_levels()[:-1]
    s = d.survival_levels()[:-1]
    low = c <= 0.5
    inner = np.where(
        low,
        _abs_gap_to_normal(lo, hi, np.where(low, c, 0.5)),
        # |c - Phi(x)| = |Phi(-x) - s| with s = 1 - c: reflect the cell
        _abs_gap_to_normal(-hi, -lo, np.where(low, 0.5, s)),
    )
    return float(tails + inner.sum())


def _signed_linear_minus_normal(p, q, lp, lq):
    """Integral of L - Phi over [p, q] for linear L with values lp, lq at the ends."""
    psi = normal.cdf_integral
    # for p >= 0 work with upper tails, (1 - Phi) - (1 - L), to avoid cancellation
    upper = (psi(-p) - psi(-q)) - (2 - lp - lq) / 2 * (q - p)
    lower = (lp + lq) / 2 * (q - p) - (psi(q) - psi(p))
    return np.where(p >= 0, upper, lower)


def w1_pwl_normal(z: ZeroBiasDist) -> float:
    """||F - Phi||_1 for a continuous piecewise-linear CDF F.

    L - Phi has second derivative x phi(x), so on each piece it is monotone
    between 0 and the points where phi equals the slope; the piece is split
    there and each part has at most one crossing, located by bracketing.
    """
    b = z.breakpoints
    f = z.cdf_levels()
    psi = normal.cdf_integral
    tails = float(psi(b[0]) + psi(-b[-1]))
    slopes = z.densities
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = np.sqrt(-2 * np.log(slopes * normal.SQRT_2PI))
    xc = np.where(np.isfinite(xc), xc, np.nan)
    # candidate cut points per piece: -xc, 0, xc (nan when absent)
    lo, hi = b[:-1, None], b[1:, None]
    cuts = np.column_stack([-xc, np.zeros_like(xc), xc])
    cuts = np.where((cuts > lo) & (cuts < hi), cuts, np.nan)
    pts = np.sort(np.column_stack([lo[:, 0], cuts, hi[:, 0]]), axis=1)  # nans sort last
    nxt = pts[:, 1:]
    prev = pts[:, :-1]
    valid = ~np.isnan(nxt) & ~np.isnan(prev)
    piece = np.broadcast_to(np.arange(b.size - 1)[:, None], prev.shape)
    k, p, q = piece[valid], prev[valid], nxt[valid]
    u, fu, sl = b[k], f[k], slopes[k]
    lp, lq = fu + sl * (p - u), fu + sl * (q - u)
    gp, gq = lp - normal.cdf(p), lq - normal.cdf(q)
    total = np.abs(_signed_linear_minus_normal(p, q, lp, lq))
    cross = np.flatnonzero(gp * gq < 0)
    if cross.size:
        # each part is monotone, so bisect all crossings together down to adjacent doubles
        a, c = p[cross], q[cross]
        ga = gp[cross]
        uc, fc, sc = u[cross], fu[cross], sl[cross]
        for _ in range(tol.BISECT_MAX_ITER):
            m = 0.5 * (a + c)
            gm = fc + sc * (m - uc) - normal.cdf(m)
            left = np.sign(gm) == np.sign(ga)
            a = np.where(left, m, a)
            ga = np.where(left, gm, ga)
            c = np.where(left, c, m)
            if np.all(c - a <= tol.ROOT_TOL * np.maximum(1.0, np.abs(a))):
                break
        r = 0.5 * (a + c)
        lr = fc + sc * (r - uc)
        total[cross] = np.abs(_signed_linear_minus_normal(p[cross], r, lp[cross], lr)) + np.abs(
            _signed_linear_minus_normal(r, q[cross], lr, lq[cross])
        )
    return float(tails + total.sum())


# ------------------------------------------------------- inverse coupling

def inverse_cdf(dist, u):
    """Generalized inverse sup{a : F(a) < u} for u in (0, 1)."""
    u_arr = np.asarray(u, dtype=float)
    if np.any((u_arr <= 0) | (u_arr >= 1)) or np.any(~np.isfinite(u_arr)):
        raise DomainError("u must lie in (0, 1)")
    if isinstance(dist, FiniteDist):
        k = np.searchsorted(dist.cdf_levels(), u_arr, side="left")
        out = dist.support[np.minimum(k, len(dist) - 1)]
    else:
        c = dist.cdf_levels()
        k = np.clip(np.searchsorted(c, u_arr, side="left"), 1, c.size - 1)
        dens = dist.densities[k - 1]
        out = dist.breakpoints[k - 1] + (u_arr - c[k - 1]) / dens
    return out if out.ndim else float(out)


def w1_by_coupling(d1, d2, quad_points: int) -> float:
    """Midpoint-rule estimate of E|F1^{-1}(U) - F2^{-1}(U)|, U uniform on (0, 1)."""
    if quad_points < 2:
        raise DomainError("quad_points must be at least 2")
    u = (np.arange(quad_points) + 0.5) / quad_points
    return float(np.mean(np.abs(inverse_cdf(d1, u) - inverse_cdf(d2, u))))
