from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from parazeta.rootdata import (
    SUPPORTED_TYPES,
    ConfigurationError,
    apply_to_root,
    build_root_system,
    inversion_set,
    longest_element,
    pairing,
    weyl_group,
)

POSITIVE_ROOTS = {"A1": 1, "A2": 3, "A3": 6, "A4": 10, "C2": 4, "G2": 6}
WEYL_ORDER = {"A1": 2, "A2": 6, "A3": 24, "A4": 120, "C2": 8, "G2": 12}


@pytest.mark.parametrize("label", sorted(POSITIVE_ROOTS))
def test_root_and_weyl_counts(label):
    rs = build_root_system(label)
    assert len(rs.positive_roots) == POSITIVE_ROOTS[label]
    assert len(weyl_group(rs)) == WEYL_ORDER[label]
    assert longest_element(rs).length == POSITIVE_ROOTS[label]


def test_a2_rank_and_roots():
    rs = build_root_system("A2")
    assert rs.rank == 2
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_a1_rho():
    rs = build_root_system("A1")
    assert rs.positive_roots == ((1,),)
    # rho = alpha / 2 in root coordinates, and <rho, alpha^vee> = 1
    assert rs.weights_to_roots(rs.rho) == (Fraction(1, 2),)
    assert pairing(rs, rs.rho, rs.coroots[0]) == 1


def test_cartan_conventions():
    # alpha_1 short, alpha_2 long; cartan[i][j] = <alpha_i^vee, alpha_j>
    assert build_root_system("C2").cartan == ((2, -2), (-1, 2))
    assert build_root_system("G2").cartan == ((2, -3), (-1, 2))
    assert build_root_system("A3").cartan == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))


def test_unknown_type():
    with pytest.raises(ConfigurationError):
        build_root_system("E9")
    assert "G2" in SUPPORTED_TYPES


def test_inversion_sets_examples():
    rs = build_root_system("A2")
    elems = weyl_group(rs)
    ident = next(w for w in elems if w.length == 0)
    assert inversion_set(rs, ident) == frozenset()
    assert inversion_set(rs, longest_element(rs)) == frozenset(rs.positive_roots)
    for i, alpha in enumerate(rs.simple_roots):
        s = next(w for w in elems if w.word == (i,))
        assert inversion_set(rs, s) == {alpha}


@pytest.mark.parametrize("label", sorted(POSITIVE_ROOTS))
def test_pairing_duality(label):
    rs = build_root_system(label)
    for b, omega in enumerate(rs.fundamental_weights):
        for a in range(rs.rank):
            assert pairing(rs, omega, rs.coroots[a]) == int(a == b)
    for a in range(rs.rank):
        assert pairing(rs, rs.rho, rs.coroots[a]) == 1


def test_highest_coroot_pairing_a2():
    rs = build_root_system("A2")
    theta = rs.highest_root
    assert pairing(rs, rs.rho, rs.coroot_of(theta)) == 2


@given(st.sampled_from(sorted(POSITIVE_ROOTS)), st.data())
def test_inversion_set_size_is_length(label, data):
    rs = build_root_system(label)
    w = data.draw(st.sampled_from(weyl_group(rs)))
    inv = inversion_set(rs, w)
    assert len(inv) == w.length
    for beta in rs.positive_roots:
        img = apply_to_root(rs, w, beta)
        assert all(x <= 0 for x in img) == (beta in inv)


@given(st.sampled_from(sorted(POSITIVE_ROOTS)), st.data())
def test_weyl_action_permutes_roots(label, data):
    rs = build_root_system(label)
    w = data.draw(st.sampled_from(weyl_group(rs)))
    roots = set(rs.positive_roots) | {tuple(-x for x in r) for r in rs.positive_roots}
    assert {apply_to_root(rs, w, r) for r in roots} == roots


@given(st.sampled_from(sorted(POSITIVE_ROOTS)))
def test_coroot_height_and_rho(label):
    rs = build_root_system(label)
    for cor in rs.coroots:
        assert pairing(rs, rs.rho, cor) == sum(cor)
