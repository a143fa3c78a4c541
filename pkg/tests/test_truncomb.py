from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from parazeta import truncomb
from parazeta.rootdata import build_root_system
from parazeta.truncomb import (
    IDENTITIES,
    WallError,
    identity_check,
    nested_pairs,
    parabolics,
    sigma,
    tau,
    tau_hat,
)

LABELS = ["A1", "A2", "C2", "G2"]
nonzero = st.integers(-50, 50).filter(bool)


def test_parabolic_counts():
    assert len(parabolics(build_root_system("A3"))) == 8
    assert len(nested_pairs(build_root_system("A2"))) == 9


def test_equal_parabolics_are_vacuous():
    rs = build_root_system("A3")
    H = (Fraction(-3), Fraction(5), Fraction(-1, 2))
    for p in parabolics(rs):
        assert tau(rs, p, p, H) == tau_hat(rs, p, p, H) == 1
    assert sigma(rs, (0, 1, 2), (0, 1, 2), H) == (1, 1)


def test_a1_positive_coroot():
    rs = build_root_system("A1")
    assert tau(rs, (), (0,), (1,)) == tau_hat(rs, (), (0,), (1,)) == 1
    assert tau(rs, (), (0,), (-1,)) == tau_hat(rs, (), (0,), (-1,)) == 0
    with pytest.raises(WallError):
        tau(rs, (), (0,), (0,))
    with pytest.raises(ValueError):
        tau(rs, (0,), (), (1,))


@given(nonzero, nonzero)
def test_a2_tau_implies_tau_hat(x, y):
    # the obtuse cone of tau_hat contains the acute cone of tau
    rs = build_root_system("A2")
    try:
        t = tau(rs, (), (0, 1), (x, y))
        th = tau_hat(rs, (), (0, 1), (x, y))
    except WallError:
        return
    assert th >= t


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize("name", IDENTITIES)
def test_identities_exhaustive(label, name):
    rep = identity_check(label, name)
    assert rep.mode == "exhaustive" and rep.checked > 0
    assert rep.passed, rep.violations[:3]


def test_a2_borel_to_g_lcl_all_chambers():
    rep = identity_check("A2", "LCL-tau-tauhat")
    assert rep.passed


@pytest.mark.parametrize("name", IDENTITIES)
def test_identities_sampled_a3(name):
    rep = identity_check("A3", name, samples=2000, seed=4)
    assert rep.mode == "sampled" and rep.passed


def test_g2_phi_signed_sum_sampled():
    rep = identity_check("G2", "phi-signed-sum", samples=10_000, seed=0, exhaustive=False)
    assert rep.passed and rep.checked >= 10_000


@given(st.lists(nonzero, min_size=3, max_size=3), st.data())
def test_sigma_routes_agree_a3(H, data):
    rs = build_root_system("A3")
    q, p = data.draw(st.sampled_from(nested_pairs(rs)))
    try:
        a, b = sigma(rs, q, p, H)
    except WallError:
        return
    assert a == b


def test_scalar_and_vector_paths_agree():
    rs = build_root_system("A3")
    rng = np.random.default_rng(9)
    H = rng.integers(-40, 41, size=(200, 3))
    for q, p in nested_pairs(rs):
        vec = truncomb._tau_vec(rs, q, p, H)
        for h, v in zip(H, vec):
            try:
                assert tau(rs, q, p, tuple(int(x) for x in h)) == v
            except WallError:
                pass


def test_mutated_tau_hat_is_caught(monkeypatch):
    original = truncomb._tauhat_rows

    def flipped(label, q, p):
        return tuple(tuple(-x for x in r) for r in original(label, q, p))

    monkeypatch.setattr(truncomb, "_tauhat_rows", flipped)
    assert not identity_check("A2", "LCL-tau-tauhat").passed
    assert not identity_check("A3", "sigma-characterization", samples=500).passed


def test_mutated_tau_is_caught(monkeypatch):
    original = truncomb._tau_rows

    def dropped(label, q, p):
        return original(label, q, p)[1:]

    monkeypatch.setattr(truncomb, "_tau_rows", dropped)
    assert not identity_check("A2", "LCL-tauhat-tau").passed


def test_unknown_identity():
    with pytest.raises(ValueError):
        identity_check("A2", "nope")
