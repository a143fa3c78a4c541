import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from parazeta.eisenstein import (
    DomainError,
    UpperHalfPoint,
    epstein_direct,
    epstein_fourier,
    rank2_zeta,
    rank2_zeta_residues,
    reduce_point,
    truncated_integral_closed,
    truncated_integral_geo,
)
from parazeta.specfun import PoleError, completed_xi as xi

mpmath.mp.dps = 30


def _catalan_oracle(s):
    # sum' (m^2 + n^2)^-s = 4 zeta(s) beta(s), completed with the 1/2 pi^-s Gamma(s) convention
    beta = mpmath.dirichlet(s, [0, 1, 0, -1])
    return float(0.5 * mpmath.pi ** -s * mpmath.gamma(s) * 4 * mpmath.zeta(s) * beta)


def test_square_lattice_value():
    val = epstein_direct(1j, 2)
    assert abs(val - _catalan_oracle(2)) < 1e-14
    assert abs(val - 0.305322) < 1e-6  # half of the full lattice sum 0.6107


def test_modular_invariance():
    z = 0.23 + 0.81j
    s = 2.2 + 1.5j
    base = epstein_direct(z, s)
    for w in (z + 1, -1 / z, (2 * z + 1) / (z + 1)):
        assert abs(epstein_direct(w, s) - base) < 1e-12 * abs(base)


def test_fourier_matches_direct_examples():
    assert abs(epstein_direct(1j, 3) - epstein_fourier(1j, 3)) < 1e-8
    z = 0.1 + 1.2j
    assert abs(epstein_direct(z, 2) - epstein_fourier(z, 2)) < 1e-8


def test_fourier_large_height_is_constant_term():
    z, s = 0.3 + 10j, 2.0
    a0 = xi(2 * s) * z.imag ** s + xi(2 * s - 1) * z.imag ** (1 - s)
    assert abs(epstein_fourier(z, s) - a0) < 1e-10


def test_fourier_continuation_symmetry():
    z, s = 0.2 + 0.9j, 0.3 + 2j
    assert abs(epstein_fourier(z, s) - epstein_fourier(z, 1 - s)) < 1e-12 * abs(epstein_fourier(z, s))


def test_direct_requires_convergent_region():
    with pytest.raises(DomainError):
        epstein_direct(1j, 0.8)
    with pytest.raises(ValueError):
        UpperHalfPoint(0.0, -1.0)


@settings(max_examples=30)
@given(st.floats(-2, 2), st.floats(0.3, 3), st.floats(1.2, 4), st.floats(-8, 8))
def test_fourier_vs_direct_property(x, y, sr, si):
    s = complex(sr, si)
    d = epstein_direct(complex(x, y), s)
    assert abs(d - epstein_fourier(complex(x, y), s)) <= 1e-9 * abs(d)


@given(st.floats(-3, 3), st.floats(0.05, 4))
def test_reduce_point_lands_in_domain(x, y):
    p, (a, b, c, d) = reduce_point(complex(x, y))
    assert abs(p.x) <= 0.5 + 1e-12 and abs(p.z) >= 1 - 1e-12
    assert a * d - b * c == 1
    z = complex(x, y)
    assert abs((a * z + b) / (c * z + d) - p.z) < 1e-9 * max(1.0, abs(p.z))


def test_truncated_integral_examples():
    geo = truncated_integral_geo(2.0, 2.0)
    assert abs(geo - (xi(4) * 2 / 1 - xi(3) * 2 ** -2 / 2)) < 1e-5
    assert abs(truncated_integral_closed(2.0, 1.0) - (xi(4) - xi(3) / 2)) < 1e-15
    assert abs(truncated_integral_geo(2.0, 1.0) - rank2_zeta(2.0)) < 1e-5


def test_truncated_integral_grid():
    for s in (1.5, 2.0, 2.5 + 1j):
        for T in (1.0, 2.0, 5.0):
            assert abs(truncated_integral_geo(s, T) - truncated_integral_closed(s, T)) < 1e-5


def test_truncated_integral_monotone_in_T():
    vals = [truncated_integral_geo(1.7, T).real for T in (1.0, 1.5, 2.5, 4.0)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_closed_form_large_T_limit():
    # with Re s < 1 the xi(2s) T^(s-1) term dies off like T^(Re s - 1)
    s = 0.7 + 0.5j

    def first(T):
        return truncated_integral_closed(s, T) + xi(2 * s - 1) * T ** (-s) / s

    sizes = [abs(first(T)) for T in (1e2, 1e6, 1e10)]
    assert sizes[2] < sizes[1] < sizes[0]
    assert abs(sizes[1] / sizes[0] - 1e4 ** (s.real - 1)) < 1e-12


def test_rank2_zeta_symmetry_and_residues():
    z = 0.3 + 2j
    assert abs(rank2_zeta(z) - rank2_zeta(1 - z)) < 1e-15
    r1, r0 = rank2_zeta_residues()
    assert abs(r1 - (math.pi / 6 - 0.5)) < 1e-15 and r0 == -r1
    # Laurent oracle: h * f(1 + h) -> residue
    for h in (1e-6, -1e-6):
        assert abs(h * rank2_zeta(1 + h) - r1) < 1e-5
    with pytest.raises(PoleError):
        rank2_zeta(1)


def test_rank2_zeta_at_half_is_finite():
    mid = rank2_zeta(0.5)
    near = rank2_zeta(0.5 + 1e-2)
    assert np.isfinite(mid) and abs(mid - near) < 1e-3 * abs(mid)
