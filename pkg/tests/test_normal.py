import math

import numpy as np
import pytest

from meanclt import normal


def test_cdf_reference_values():
    assert normal.cdf(0.0) == 0.5
    # Phi(1.96) and Phi(-8) to full precision
    assert normal.cdf(1.96) == pytest.approx(0.9750021048517795, rel=1e-15)
    assert normal.cdf(-8.0) == pytest.approx(6.22096057427178e-16, rel=1e-13)


def test_cdf_symmetry():
    x = np.linspace(-8, 8, 1601)
    np.testing.assert_allclose(normal.cdf(x) + normal.cdf(-x), 1.0, atol=1e-15)


def test_cdf_matches_high_precision():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 50
    x = np.linspace(-8, 8, 321)
    ref = np.array([float(mpmath.ncdf(mpmath.mpf(v))) for v in x])
    np.testing.assert_allclose(normal.cdf(x), ref, rtol=1e-14)


def test_quantile_roundtrip():
    u = np.concatenate([np.logspace(-15, -1, 60), np.linspace(0.01, 0.99, 99), 1 - np.logspace(-12, -1, 40)])
    back = normal.cdf(normal.quantile(u))
    assert np.max(np.abs(back - u)) <= 1e-13
    assert normal.quantile(0.5) == 0.0


def test_cdf_integral_derivative_is_cdf():
    x = np.linspace(-6, 6, 121)
    h = 1e-5
    deriv = (normal.cdf_integral(x + h) - normal.cdf_integral(x - h)) / (2 * h)
    np.testing.assert_allclose(deriv, normal.cdf(x), atol=1e-8)
    assert normal.cdf_integral(-40.0) == 0.0
    # Psi(x) - Psi(-x) = x
    np.testing.assert_allclose(normal.cdf_integral(x) - normal.cdf_integral(-x), x, atol=1e-14)


def test_kernel_namespace():
    assert normal.NormalKernel.pdf(0.0) == pytest.approx(1 / math.sqrt(2 * math.pi))
