import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from parazeta.specfun import (
    PoleError,
    RangeError,
    bessel_k,
    completed_xi,
    hurwitz_zeta,
    log_gamma,
    xi_zero_ordinates,
    zeta_complex,
)

mpmath.mp.dps = 30

re_part = st.floats(-6, 7, allow_nan=False)
im_part = st.floats(-60, 60, allow_nan=False)


def test_zeta_special_values():
    assert abs(zeta_complex(2) - math.pi ** 2 / 6) < 1e-14
    assert abs(zeta_complex(0) + 0.5) < 1e-14
    s = 0.3 + 7j
    assert abs(zeta_complex(s.conjugate()) - zeta_complex(s).conjugate()) < 1e-14
    with pytest.raises(PoleError):
        zeta_complex(1)
    with pytest.raises(RangeError):
        zeta_complex(0.5 + 500j)


@given(re_part, im_part)
def test_zeta_matches_mpmath(x, y):
    s = complex(x, y)
    if abs(s - 1) < 1e-3:
        return
    ref = complex(mpmath.zeta(mpmath.mpc(x, y)))
    assert abs(zeta_complex(s) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_log_gamma_values():
    assert abs(log_gamma(1)) < 1e-15
    assert abs(log_gamma(0.5) - 0.5 * math.log(math.pi)) < 1e-14
    for s in (0.3 + 2j, 4.5 - 1j, -2.5 + 0.1j):
        ratio = np.exp(log_gamma(s + 1) - log_gamma(s))
        assert abs(ratio - s) < 1e-12 * abs(s)
    with pytest.raises(PoleError):
        log_gamma(-3)


@given(st.floats(0.05, 30), st.floats(-40, 40))
def test_log_gamma_matches_mpmath(x, y):
    ref = complex(mpmath.loggamma(mpmath.mpc(x, y)))
    assert abs(log_gamma(complex(x, y)) - ref) < 1e-11 * max(1.0, abs(ref))


def test_xi_values():
    assert abs(completed_xi(2) - math.pi / 6) < 1e-15
    assert abs(completed_xi(0.3 + 2j) - completed_xi(0.7 - 2j)) < 1e-15
    for h in (1e-6, -1e-6):
        assert abs(h * completed_xi(1 + h) - 1) < 1e-5
    with pytest.raises(PoleError):
        completed_xi(0)


@given(re_part, im_part)
def test_xi_functional_equation(x, y):
    s = complex(x, y)
    if abs(s) < 1e-3 or abs(s - 1) < 1e-3:
        return
    a, b = completed_xi(s), completed_xi(1 - s)
    assert abs(a - b) <= 1e-11 * abs(a)


def test_hurwitz_against_mpmath():
    for s, a in [(2.5 + 1j, 0.3), (0.2 - 4j, 2.7), (-1.5 + 0.5j, 1.0)]:
        ref = complex(mpmath.zeta(mpmath.mpc(s.real, s.imag), a))
        assert abs(hurwitz_zeta(s, a) - ref) < 1e-11 * abs(ref)


def test_bessel_values():
    assert abs(bessel_k(0.5, 2.0) - math.sqrt(math.pi / 4) * math.exp(-2)) < 1e-15
    nu = 0.3 + 4j
    assert abs(bessel_k(nu, 1.7) - bessel_k(-nu, 1.7)) < 1e-15
    # K_0(1) = int_0^inf exp(-cosh u) du
    ref, _ = integrate.quad(lambda u: math.exp(-math.cosh(u)), 0, 40, epsabs=1e-14)
    assert abs(bessel_k(0, 1.0) - ref) < 1e-9


@given(st.floats(-1, 1), st.floats(-15, 15), st.floats(0.05, 30))
def test_bessel_matches_mpmath(nr, ni, y):
    ref = complex(mpmath.besselk(mpmath.mpc(nr, ni), y))
    assert abs(bessel_k(complex(nr, ni), y) - ref) <= 1e-10 * abs(ref) + 1e-300


def test_zero_ordinates():
    zeros = xi_zero_ordinates(50)
    ref = [float(mpmath.zetazero(k).imag) for k in range(1, 11)]
    assert len(zeros) == 10
    assert np.max(np.abs(zeros - ref)) < 1e-9
    with pytest.raises(RangeError):
        xi_zero_ordinates(1000)
