import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import finite_dists, standardized_dists
from meanclt.dist import FiniteDist, mix, moments, point_mass, rademacher, scale, two_point
from meanclt.errors import DegenerateDistribution, DomainError
from meanclt.functionals import (
    a_functional,
    a_parameters,
    b_functional,
    b_functional_batch,
    functional_report,
    psi_lower_bound,
    zolotarev_ratio,
)
from meanclt.wasserstein import w1_step_normal
from oracles import a_tensor, l1_to_normal


def uniform_grid(m):
    x = np.linspace(-math.sqrt(3), math.sqrt(3), m)
    return FiniteDist(x, np.full(m, 1 / m))


def normal_grid(m, lim=6.0):
    x = np.linspace(-lim, lim, m)
    w = np.exp(-x * x / 2)
    return FiniteDist(x, w / w.sum())


# ------------------------------------------------------------------ B(G)

def test_b_two_point():
    for x, y in [(-1, 1), (-1, 2), (-0.01, 50.0)]:
        assert b_functional(two_point(x, y)) == pytest.approx(1, abs=1e-12)


def test_b_uniform_discretization():
    assert b_functional(uniform_grid(2001)) == pytest.approx(1 / 3, abs=1e-3)


def test_b_normal_discretization_decreases():
    vals = [b_functional(normal_grid(m)) for m in (201, 801, 3201)]
    assert vals[1] <= 0.01
    assert vals[0] > vals[1] > vals[2]
    # observed order of convergence is at least 1 in the grid spacing
    assert math.log(vals[0] / vals[1], 4) >= 0.9


def test_b_degenerate():
    with pytest.raises(DegenerateDistribution):
        b_functional(point_mass(0))


def test_b_batch_matches_scalar(rng):
    laws = []
    support, probs = [], []
    while len(support) < 50:
        s = np.sort(rng.uniform(-3, 3, 4))
        p = rng.dirichlet(np.ones(4))
        s = s - np.dot(p, s)
        d = FiniteDist.from_points(s, p)
        if len(d) == 4:
            support.append(d.support)
            probs.append(d.probs)
            laws.append(d)
    batch = b_functional_batch(np.array(support), np.array(probs))
    np.testing.assert_allclose(batch, [b_functional(d) for d in laws], rtol=1e-11)


# ------------------------------------------------------------------ A(G)

def test_a_rademacher():
    assert a_functional(rademacher()) == pytest.approx(0.5, abs=1e-12)
    assert zolotarev_ratio(rademacher()) == pytest.approx(0.5, abs=1e-12)


def test_a_symmetric_nonlattice_is_zero():
    d = FiniteDist([-math.sqrt(2), 1.0, 1 + math.pi], [0.4, 0.2, 0.4])
    sym = FiniteDist([-math.pi, -1.0, 1.0, math.pi], [0.2, 0.3, 0.3, 0.2])
    assert a_parameters(sym)[2] == 0.0
    assert a_functional(sym) == pytest.approx(0, abs=1e-15)
    assert zolotarev_ratio(sym) == pytest.approx(0, abs=1e-15)
    assert a_functional(d) > 0


def test_a_two_point_against_tensor_oracle():
    d = FiniteDist([-1, 2], [2 / 3, 1 / 3])
    sigma, omega, h, info = a_parameters(d)
    assert (sigma**2, omega, h) == pytest.approx((2, 1 / 3, 3))
    assert a_functional(d) == pytest.approx(a_tensor(sigma, omega, h), abs=1e-6)
    assert 0 < zolotarev_ratio(d) <= 0.5


def test_a_translation_invariant():
    d = FiniteDist([-1, 2], [2 / 3, 1 / 3])
    shifted = FiniteDist(d.support + 0.7, d.probs)
    assert a_functional(shifted) == pytest.approx(a_functional(d), abs=1e-12)


# ------------------------------------------------------------------ psi(p)

def test_psi_examples():
    assert psi_lower_bound(0.5) == pytest.approx(0.535377, abs=1e-6)
    assert psi_lower_bound(0.3) == pytest.approx(psi_lower_bound(0.7), abs=1e-12)
    assert psi_lower_bound(0.999) < 0.2
    with pytest.raises(DomainError):
        psi_lower_bound(1.0)


def test_psi_far_tail_against_riemann():
    from meanclt.dist import standardized_bernoulli

    d = standardized_bernoulli(0.999)
    ref = l1_to_normal(d.cdf, lo=-35, hi=10, n=10**7)
    assert w1_step_normal(d) == pytest.approx(ref, abs=1e-6)


def test_psi_grid_maximum():
    ps = np.linspace(0.001, 0.999, 999)
    vals = np.array([psi_lower_bound(p) for p in ps])
    assert abs(ps[np.argmax(vals)] - 0.5) <= 1e-3
    assert vals.max() == pytest.approx(psi_lower_bound(0.5), abs=1e-4)


def test_report_json():
    rep = functional_report(FiniteDist([-1, 2], [2 / 3, 1 / 3]))
    obj = rep.to_json()
    assert obj["b_value"] == pytest.approx(1)
    assert obj["lattice"]["is_lattice"] is True


# ---------------------------------------------------------------- properties

@given(finite_dists(min_size=2, centered=True), st.sampled_from([-2.0, -1.0, 0.5, 3.0]))
def test_b_scale_invariant(d, a):
    assert b_functional(scale(d, a)) == pytest.approx(b_functional(d), abs=1e-10)


@given(finite_dists(min_size=2, centered=True))
def test_b_at_most_one(d):
    assert b_functional(d) <= 1 + 1e-10


@settings(max_examples=40)
@given(st.lists(standardized_dists(max_size=4), min_size=2, max_size=4), st.data())
def test_b_mixture_bound(comps, data):
    w = np.array(data.draw(st.lists(st.floats(0.05, 1), min_size=len(comps), max_size=len(comps))))
    w /= w.sum()
    mixed = mix(w, comps)
    assert b_functional(mixed) <= max(b_functional(c) for c in comps) + 1e-10


@settings(max_examples=40)
@given(finite_dists(min_size=2, max_size=4, centered=True), st.sampled_from([-2.0, 0.5, 3.0]))
def test_zolotarev_ratio_scale_invariant(d, a):
    r = zolotarev_ratio(d)
    assert zolotarev_ratio(scale(d, a)) == pytest.approx(r, abs=1e-10)
    assert r <= 0.5 + 1e-9
    assert moments(d).variance > 0
