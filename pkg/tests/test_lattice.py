import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import gamma

from parazeta.lattice import (
    DegenerateBasisError,
    GroupPoint,
    LatticeBasis,
    arthur_truncation_one,
    degree,
    dual_lattice,
    fundamental_relation_check,
    h0,
    hn_polygon,
    is_semistable,
    micro_bridge_check,
    random_group_point,
    random_lattice,
    reduce_to_fundamental_domain,
    rr_defect,
    short_vectors,
    sublattice_polygon,
)

Z2 = [[1.0, 0.0], [0.0, 1.0]]
SKEW = [[2.0, 0.0], [0.0, 0.5]]
HEX = LatticeBasis.from_point(cmath.exp(2j * math.pi / 3))

seeds = st.integers(0, 2 ** 32 - 1)


def test_reduction_examples():
    tau, _ = reduce_to_fundamental_domain(Z2)
    assert abs(tau.z - 1j) < 1e-14
    tau, u = reduce_to_fundamental_domain(SKEW)
    assert abs(tau.z - 4j) < 1e-14
    assert abs(round(np.linalg.det(u))) == 1
    tau, _ = reduce_to_fundamental_domain(HEX)
    assert abs(tau.z - cmath.exp(1j * math.pi / 3)) < 1e-12


def test_h0_examples():
    theta = math.pi ** 0.25 / gamma(0.75)
    assert abs(h0(Z2) - 2 * math.log(theta)) < 1e-13
    assert abs(h0(Z2) - 0.1658) < 1e-4
    big = h0([[8.0, 0.0], [0.0, 8.0]])
    assert 0 < big < 1e-80 or big == 0.0


def test_dual_and_degree():
    assert np.allclose(dual_lattice(Z2).gram, np.eye(2))
    assert degree(Z2) == 0 and degree(SKEW) == 0
    lat = random_lattice(np.random.default_rng(5))
    c = 1.7
    assert abs(degree(lat.scaled(c)) - (degree(lat) - 2 * math.log(c))) < 1e-13


def test_rr_examples():
    assert abs(rr_defect(Z2)) < 1e-9
    assert abs(rr_defect([[1.3, 0.0], [0.0, 1.3]])) < 1e-9
    assert abs(rr_defect(SKEW)) < 1e-9


def test_hn_polygon_examples():
    p = hn_polygon(Z2)
    assert p(1.0) == 0.0
    q = hn_polygon(SKEW)
    assert abs(q(1.0) - math.log(2)) < 1e-14
    assert q(0.0) == q(2.0) == 0.0


def test_semistability_examples():
    v = is_semistable(Z2)
    assert v.hn_route and v.cusp_route and v.boundary and abs(v.reduced_height - 1) < 1e-14
    v = is_semistable(SKEW)
    assert not v.hn_route and not v.cusp_route and abs(v.reduced_height - 4) < 1e-13
    v = is_semistable(HEX)
    assert v.hn_route and v.cusp_route and not v.boundary
    assert abs(v.reduced_height - math.sqrt(3) / 2) < 1e-12


def test_degenerate_basis():
    with pytest.raises(DegenerateBasisError):
        LatticeBasis((1.0, 2.0), (2.0, 4.0))


def test_micro_bridge_examples():
    r = micro_bridge_check(GroupPoint(math.exp(-1)), 0.0)
    assert (r.lhs, r.rhs) == (1, 1)
    r = micro_bridge_check(GroupPoint(1.0), 0.5)
    assert (r.lhs, r.rhs) == (0, 0)


def test_fundamental_relation_examples():
    r = fundamental_relation_check(GroupPoint(1.0, 0.3), 0.0)
    assert r.skipped or (r.lhs, r.rhs) == (1, 1)
    r = fundamental_relation_check(GroupPoint(1.05, 0.3), 0.0)  # reduced height 0.99
    assert (r.lhs, r.rhs) == (1, 1)
    r = fundamental_relation_check(GroupPoint(math.exp(-1)), 0.0)
    assert (r.lhs, r.rhs) == (0, 0)
    r = fundamental_relation_check(GroupPoint(math.exp(-1.5), 0.4), 20.0)
    assert (r.lhs, r.rhs) == (1, 1)
    with pytest.raises(ValueError):
        fundamental_relation_check(GroupPoint(1.0), -0.1)


def test_truncation_examples():
    T = 0.4
    inside = GroupPoint(math.exp(-0.8 * T), 0.2)  # reduced height e^{1.6 T} <= e^{2T}
    r = arthur_truncation_one(inside, T)
    assert (r.truncated_sum, r.direct) == (1, 1)
    outside = GroupPoint((1.1 * math.exp(2 * T)) ** -0.5)  # height 1.1 e^{2T}
    r = arthur_truncation_one(outside, T)
    assert (r.truncated_sum, r.direct) == (0, 0)


@given(seeds)
def test_truncation_at_zero_is_semistability(seed):
    g = random_group_point(np.random.default_rng(seed))
    r = arthur_truncation_one(g, 0.0)
    v = is_semistable(g.lattice)
    if not (r.skipped or v.boundary):
        assert r.direct == int(v.hn_route)


@given(seeds)
def test_rr_property(seed):
    assert abs(rr_defect(random_lattice(np.random.default_rng(seed)))) < 1e-9


@given(seeds)
def test_h0_nonnegative_and_dual_involution(seed):
    lat = random_lattice(np.random.default_rng(seed))
    assert h0(lat) >= 0
    assert np.allclose(dual_lattice(dual_lattice(lat)).gram, lat.gram, rtol=1e-10, atol=1e-12)


@given(seeds)
def test_stability_routes_agree(seed):
    v = is_semistable(random_lattice(np.random.default_rng(seed), (0.0, 0.0)))
    assert v.boundary or v.agree


@given(seeds, st.integers(-4, 4), st.integers(-4, 4))
def test_reduction_is_basis_independent(seed, k, m):
    lat = random_lattice(np.random.default_rng(seed))
    u = np.array([[1, k], [0, 1]]) @ np.array([[1, 0], [m, 1]])
    other = LatticeBasis.from_matrix(u @ lat.matrix)
    t1, _ = reduce_to_fundamental_domain(lat)
    t2, _ = reduce_to_fundamental_domain(other)
    assert abs(t1.z - t2.z) < 1e-8


@given(seeds)
def test_hn_polygon_dominates_filtrations(seed):
    lat = random_lattice(np.random.default_rng(seed))
    top = hn_polygon(lat)
    assert top.is_concave()
    for coeffs in short_vectors(lat, 3 * math.exp(-degree(lat) / 2)):
        if math.gcd(int(coeffs[0]), int(coeffs[1])) == 1:
            assert sublattice_polygon(lat, coeffs)(1.0) <= top(1.0) + 1e-12


@given(seeds, st.floats(0.0, 1.5))
def test_bridges_property(seed, p1):
    g = random_group_point(np.random.default_rng(seed))
    assert micro_bridge_check(g, p1).holds
    assert fundamental_relation_check(g, p1).holds
    assert arthur_truncation_one(g, p1).holds


def test_bridges_at_zero_polygon_are_not_all_ties():
    rng = np.random.default_rng(11)
    results = [fundamental_relation_check(random_group_point(rng), 0.0) for _ in range(2000)]
    assert all(r.holds for r in results)
    assert sum(r.skipped for r in results) < 20
    micro = [micro_bridge_check(random_group_point(rng), 0.0) for _ in range(2000)]
    assert all(r.holds for r in micro)
