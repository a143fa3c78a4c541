"""Reference values frozen from independent 40-digit mpmath computations.

Each constant was produced once from textbook formulas (mpmath zeta, gamma,
besselk, jtheta and findroot) and is never regenerated from this package.
"""

import pytest

from parazeta import eval_zeta_GP, find_zeros, load_preset, rank2_zeta
from parazeta.eisenstein import epstein_fourier, rank2_zeta_residues
from parazeta.lattice import h0
from parazeta.specfun import bessel_k

RANK2_ZEROS = [7.7690801115829525808, 11.01900401571513757, 13.110798328233523088]
RANK2_AT_2 = 0.014005622115422510202
RANK2_AT_POINT = complex(-0.0036905065201919594567, 0.00097485041491815271815)
RANK2_RESIDUE = 0.023598775598298873077
EPSTEIN_A = 0.31831586683434681618                                   # z = 0.1 + 1.2i, s = 2
EPSTEIN_B = complex(-0.075424047393149089187, 0.020472357688212719592)  # z = 0.25 + 0.9i, s = 0.3 + 2i
H0_RECTANGLE = 0.69316112988072414476                                # basis (2, 0), (0, 1/2)
BESSEL = complex(0.000030043579877188753586, 0.000017632879637688489029)  # K_{0.5+7i}(0.8)


def test_rank2_values():
    assert rank2_zeta(2) == pytest.approx(RANK2_AT_2, rel=1e-13)
    assert abs(rank2_zeta(0.3 + 2j) - RANK2_AT_POINT) < 1e-13 * abs(RANK2_AT_POINT)
    assert rank2_zeta_residues()[0] == pytest.approx(RANK2_RESIDUE, rel=1e-14)


def test_periods_reproduce_rank2_values():
    spec = load_preset("SL2/P11")
    assert eval_zeta_GP(spec, 2) == pytest.approx(RANK2_AT_2, rel=1e-12)
    assert abs(eval_zeta_GP(spec, 0.3 + 2j) - RANK2_AT_POINT) < 1e-12 * abs(RANK2_AT_POINT)


def test_rank2_zero_locations():
    rep = find_zeros(rank2_zeta, 14.0)
    assert rep.located_count == 3
    for z, ref in zip(rep.zeros, RANK2_ZEROS):
        assert abs(z.imag - ref) < 1e-9
        assert abs(z.real - 0.5) < 1e-12


def test_epstein_values():
    assert abs(epstein_fourier(0.1 + 1.2j, 2) - EPSTEIN_A) < 1e-13
    assert abs(epstein_fourier(0.25 + 0.9j, 0.3 + 2j) - EPSTEIN_B) < 1e-12 * abs(EPSTEIN_B)


def test_h0_rectangle():
    assert h0([[2.0, 0.0], [0.0, 0.5]]) == pytest.approx(H0_RECTANGLE, rel=1e-12)


def test_bessel_complex_order():
    assert abs(bessel_k(0.5 + 7j, 0.8) - BESSEL) < 1e-10 * abs(BESSEL)
