
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import finite_dists
from meanclt.dist import FiniteDist, mix, moments, point_mass, rademacher, scale, standardize, two_point
from meanclt.errors import DegenerateDistribution, DegenerateMixture, InvalidDistribution, NonCenteredInput
from meanclt.wasserstein import w1_pwl_pwl
from meanclt.zerobias import ZeroBiasDist, zb_mean_abs, zero_bias, zero_bias_distance, zero_bias_mixture
from oracles import riemann_l1, zero_bias_cdf

centered = finite_dists(min_size=2, centered=True)


def normal_grid(m, lim=6.0):
    x = np.linspace(-lim, lim, m)
    return FiniteDist(x, np.exp(-x * x / 2) / np.exp(-x * x / 2).sum())


def test_two_point_is_uniform():
    z = zero_bias(FiniteDist([-1, 2], [2 / 3, 1 / 3]))
    np.testing.assert_allclose(z.breakpoints, [-1, 2])
    np.testing.assert_allclose(z.densities, [1 / 3], rtol=1e-14)
    np.testing.assert_allclose(zero_bias(rademacher()).densities, [0.5])


def test_three_point_example():
    z = zero_bias(FiniteDist([-1, 0, 1], [0.25, 0.5, 0.25]))
    np.testing.assert_allclose(z.breakpoints, [-1, 0, 1])
    np.testing.assert_allclose(z.densities, [0.5, 0.5], rtol=1e-14)


def test_zero_density_segments_kept():
    # mass 0 between the two positive points: E[X 1(X > 1)] > 0 but the segment stays
    d = FiniteDist([-3, 1, 2], [0.25, 0.25, 0.5])
    d = FiniteDist(d.support - moments(d).mean, d.probs)
    z = zero_bias(d)
    np.testing.assert_allclose(z.breakpoints, d.support)


def test_cdf_matches_definition():
    d = standardize(FiniteDist([-2.0, -0.3, 0.4, 1.7], [0.1, 0.4, 0.3, 0.2]))
    x = np.linspace(-4, 4, 2001)
    ref = zero_bias_cdf(d.support, d.probs, x)
    np.testing.assert_allclose(zero_bias(d).cdf(x), ref, atol=1e-13)


def test_preconditions():
    with pytest.raises(NonCenteredInput):
        zero_bias(FiniteDist([0, 1], [0.5, 0.5]))
    with pytest.raises(DegenerateDistribution):
        zero_bias(point_mass(0))
    with pytest.raises(InvalidDistribution):
        ZeroBiasDist([0, 1], [0.5])


def test_mixture_examples():
    r = rademacher()
    assert w1_pwl_pwl(zero_bias_mixture([1.0], [r]), zero_bias(r)) == 0.0
    assert w1_pwl_pwl(zero_bias_mixture([0.5, 0.5], [r, r]), zero_bias(r)) < 1e-15
    m1 = two_point(-2.0, 1.0)
    z = zero_bias_mixture([0.5, 0.5], [m1, point_mass(0)])
    assert w1_pwl_pwl(z, zero_bias(m1)) < 1e-15
    with pytest.raises(DegenerateMixture):
        zero_bias_mixture([1.0], [point_mass(0)])


def test_mean_abs_examples():
    assert zb_mean_abs(zero_bias(rademacher())) == pytest.approx(0.5, abs=1e-15)
    assert zb_mean_abs(zero_bias(FiniteDist([-1, 2], [2 / 3, 1 / 3]))) == pytest.approx(5 / 6, abs=1e-15)
    assert zb_mean_abs(zero_bias(FiniteDist([-1, 0, 1], [0.25, 0.5, 0.25]))) == pytest.approx(0.5)


def test_json_roundtrip():
    z = zero_bias(FiniteDist([-1, 0, 1], [0.25, 0.5, 0.25]))
    back = ZeroBiasDist.from_json(z.to_json())
    assert w1_pwl_pwl(z, back) == 0.0


def test_distance_matches_riemann_oracle():
    d = standardize(FiniteDist([-2.0, -0.3, 0.4, 1.7], [0.1, 0.4, 0.3, 0.2]))
    z = zero_bias(d)
    lo, hi = d.support[0], d.support[-1]
    ref = riemann_l1(d.cdf, z.cdf, lo, hi, n=10**6)
    assert zero_bias_distance(d) == pytest.approx(ref, abs=1e-6)


def test_normal_discretization_fixed_point():
    dists = [zero_bias_distance(normal_grid(m)) for m in (51, 201, 801)]
    assert dists[0] > dists[1] > dists[2]
    assert dists[2] < 0.01


# ---------------------------------------------------------------- properties

@given(centered, st.integers(0, 3))
def test_characterizing_identity(d, k):
    m = moments(d)
    z = zero_bias(d)
    lhs = m.variance * (k + 1) * z.moment(k)
    rhs = float(np.dot(d.probs, d.support ** (k + 2)))
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-9 * max(1.0, abs(rhs)))


@given(centered)
def test_third_absolute_moment_identity(d):
    m = moments(d)
    assert 2 * m.variance * zb_mean_abs(zero_bias(d)) == pytest.approx(m.abs_third, rel=1e-10)


@given(centered, st.sampled_from([-2.0, -1.0, 0.5, 3.0]))
def test_scale_equivariance(d, a):
    za = zero_bias(scale(d, a))
    z = zero_bias(d)
    b = a * z.breakpoints
    dens = z.densities / abs(a)
    if a < 0:
        b, dens = b[::-1], dens[::-1]
    assert w1_pwl_pwl(za, ZeroBiasDist(b, dens)) <= 1e-10 * max(1.0, abs(a))


@given(st.lists(centered, min_size=1, max_size=4), st.data())
def test_zero_bias_of_mixture_is_tilted_mixture(comps, data):
    w = np.array(data.draw(st.lists(st.floats(0.05, 1), min_size=len(comps), max_size=len(comps))))
    w /= w.sum()
    mixed = mix(w, comps)
    assert w1_pwl_pwl(zero_bias_mixture(w, comps), zero_bias(mixed)) <= 1e-10
