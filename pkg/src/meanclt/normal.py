"""Standard normal kernel: cdf, pdf, quantile and the antiderivative of the cdf.

The cdf is scipy's ``ndtr`` on the central range.  In the lower tail it is
0.5 erfcx(-x/sqrt 2) exp(-x^2/2) with x^2 split into an exactly representable
part and a small remainder, which keeps the relative error near one ulp; the
upper tail is the complement.  The quantile is ``ndtri`` polished by one
Newton step on the cdf.
"""

import math

import numpy as np
from scipy.special import erfcx, ndtr, ndtri

SQRT_2PI = math.sqrt(2 * math.pi)


def _lower_tail(x):
    xs = np.round(x * 16) / 16
    gauss = np.exp(-0.5 * xs * xs) * np.exp(-0.5 * (x - xs) * (x + xs))
    return 0.5 * erfcx(-x / math.sqrt(2)) * gauss


def cdf(x):
    x = np.asarray(x, dtype=float)
    out = ndtr(x)
    tail = x < -1
    if np.any(tail):
        out = np.where(tail, _lower_tail(np.where(tail, x, -2.0)), out)
    return out if out.ndim else float(out)


def pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / SQRT_2PI


def quantile(u):
    """Inverse of :func:`cdf` on (0, 1)."""
    u = np.asarray(u, dtype=float)
    x = ndtri(u)
    with np.errstate(invalid="ignore", divide="ignore"):
        # Newton step; in the upper half work with the survival function to keep precision
        upper = u > 0.5
        resid = np.where(upper, (1.0 - u) - cdf(-x), cdf(x) - u)
        step = resid / pdf(x)
        x = np.where(np.isfinite(step), x - step, x)
    return x if x.ndim else float(x)


def cdf_integral(x):
    """Psi(x) = x Phi(x) + phi(x), so that Psi' = Phi and Psi(-inf) = 0."""
    x = np.asarray(x, dtype=float)
    return x * cdf(x) + pdf(x)


class NormalKernel:
    """Namespace object bundling the kernel functions for callers that want one handle."""

    cdf = staticmethod(cdf)
    pdf = staticmethod(pdf)
    quantile = staticmethod(quantile)
    cdf_integral = staticmethod(cdf_integral)
