"""Completed Epstein zeta of rank-2 lattices and its truncated integrals.

Normalization used throughout:

    E(z, s) = 1/2 pi^(-s) Gamma(s) sum_{(m, n) != 0} y^s / |m z + n|^(2s)

whose Fourier expansion has constant term ``xi(2s) y^s + xi(2s - 1) y^(1-s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .specfun import PoleError, bessel_k, completed_xi, hurwitz_zeta, log_gamma, xi_unchecked

__all__ = [
    "UpperHalfPoint",
    "DomainError",
    "QuadratureError",
    "reduce_point",
    "epstein_direct",
    "epstein_fourier",
    "fourier_terms_needed",
    "truncated_integral_geo",
    "truncated_integral_closed",
    "rank2_zeta",
    "rank2_zeta_residues",
]


class DomainError(ValueError):
    """Argument outside the region where the requested algorithm converges."""


class QuadratureError(ArithmeticError):
    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class UpperHalfPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"point must lie in the upper half plane, got y={self.y}")

    @classmethod
    def from_complex(cls, z: complex) -> "UpperHalfPoint":
        return cls(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @property
    def reduced(self) -> bool:
        return abs(self.x) <= 0.5 and self.x * self.x + self.y * self.y >= 1


def _as_point(z) -> UpperHalfPoint:
    return z if isinstance(z, UpperHalfPoint) else UpperHalfPoint.from_complex(complex(z))


def reduce_point(z) -> tuple[UpperHalfPoint, tuple[int, int, int, int]]:
    """Move ``z`` into the standard fundamental domain of SL(2, Z).

    Returns the reduced point and ``(a, b, c, d)`` with
    ``reduced = (a z + b) / (c z + d)``.
    """
    w = _as_point(z).z
    a, b, c, d = 1, 0, 0, 1
    for _ in range(10_000):
        k = math.floor(w.real + 0.5)
        if k:
            w -= k
            a, b = a - k * c, b - k * d
        if abs(w) < 1 - 1e-15:
            w = -1 / w
            a, b, c, d = -c, -d, a, b
            continue
        break
    else:
        raise ArithmeticError("reduction did not terminate")
    return UpperHalfPoint(w.real, w.imag), (a, b, c, d)


def _row_sum(u: float, c: float, s: complex) -> complex:
    """sum_{n in Z} ((u + n)^2 + c^2)^(-s) for Re s > 1/2, c > 0."""
    k = int(math.ceil(2 * c + abs(u))) + 8
    n = np.arange(-k, k + 1)
    head = np.sum(np.exp(-s * np.log((u + n) ** 2 + c * c)))
    # |u + n| > k on the tails: expand (v^2 + c^2)^-s = sum_j binom(-s, j) c^(2j) v^(-2s-2j)
    lo, hi = k + 1 + u, k + 1 - u
    tail = 0j
    coef = 1.0 + 0j
    ratio = c * c / min(lo, hi) ** 2
    for j in range(200):
        term = coef * c ** (2 * j) * (hurwitz_zeta(2 * s + 2 * j, lo) + hurwitz_zeta(2 * s + 2 * j, hi))
        tail += term
        if abs(term) < 1e-18 * abs(head) and ratio ** j < 1e-18:
            break
        coef *= (-s - j) / (j + 1)
    return head + tail


def epstein_direct(z, s: complex) -> complex:
    """Completed Epstein zeta from its defining lattice sum, Re s > 1.

    The point is first reduced (the sum is SL(2, Z) invariant).  Rows
    ``m <= M`` are summed exactly with a Hurwitz-zeta tail in ``n``; for
    ``m > M`` each row equals ``sqrt(pi) Gamma(s - 1/2) / Gamma(s) (m y)^(1-2s)``
    up to ``O(exp(-2 pi m y))``, and those rows are summed in closed form.
    """
    s = complex(s)
    if s.real <= 1:
        raise DomainError("the lattice sum converges only for Re s > 1; use epstein_fourier")
    p, _ = reduce_point(z)
    x, y = p.x, p.y
    big_m = int(math.ceil(7.0 / y)) + 1
    total = y ** s * hurwitz_zeta(2 * s, 1.0)
    for m in range(1, big_m + 1):
        total += y ** s * _row_sum(m * x, m * y, s)
    row_const = math.sqrt(math.pi) * np.exp(log_gamma(s - 0.5) - log_gamma(s))
    total += y ** (1 - s) * row_const * hurwitz_zeta(2 * s - 1, big_m + 1)
    return complex(np.exp(-s * math.log(math.pi) + log_gamma(s)) * total)


@lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple[int, ...]:
    small = [d for d in range(1, int(math.isqrt(n)) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


def _sigma(n: int, power: complex) -> complex:
    return complex(sum(np.exp(power * math.log(d)) for d in _divisors(n)))


def fourier_terms_needed(y: float, s: complex, tol: float = 1e-16) -> int:
    """Smallest n_max whose tail bound is below ``tol``.

    Uses |K_nu(t)| <= exp(-t/2) K_{Re nu}(2) for t > 4 together with
    |sigma_{1-2s}(n)| <= n^(1 + |1 - 2 Re s|).
    """
    s = complex(s)
    k2 = float(special.kv(abs(s.real - 0.5), 2.0))
    expo = abs(s.real - 0.5) + 1 + abs(1 - 2 * s.real)
    n = 1
    while True:
        t = 2 * math.pi * n * y
        if t > 4:
            bound = 2 * n ** expo * math.sqrt(y) * math.exp(-t / 2) * k2
            # remaining terms shrink at least geometrically by exp(-pi y)
            if bound / (1 - math.exp(-math.pi * y)) < tol:
                return n - 1
        n += 1
        if n > 5000:
            raise DomainError(f"Fourier expansion needs too many terms at y={y}")


def _fourier_many(xs: np.ndarray, ys: np.ndarray, s: complex, n_max: int | None = None) -> np.ndarray:
    s = complex(s)
    for bad in (0.0, 0.5, 1.0):
        if abs(s - bad) < 1e-14:
            raise PoleError(f"Epstein zeta has a pole at s={bad}")
    xi_a, xi_b = xi_unchecked(np.array([2 * s, 2 * s - 1]))
    out = xi_a * ys ** s + xi_b * ys ** (1 - s)
    nmax = n_max if n_max is not None else fourier_terms_needed(float(ys.min()), s)
    nu = s - 0.5
    for n in range(1, nmax + 1):
        coef = 4 * np.exp(nu * math.log(n)) * _sigma(n, 1 - 2 * s)
        out = out + coef * np.sqrt(ys) * bessel_k(nu, 2 * math.pi * n * ys) * np.cos(2 * math.pi * n * xs)
    return out


def epstein_fourier(z, s: complex, n_max: int | None = None) -> complex:
    """Completed Epstein zeta from its Fourier expansion; valid for every s off the poles.

    ``n_max`` defaults to the number of terms making the K-Bessel tail
    bound smaller than 1e-16.
    """
    p = _as_point(z)
    return complex(_fourier_many(np.array([p.x]), np.array([p.y]), s, n_max)[0])


def truncated_integral_closed(s: complex, T: float) -> complex:
    """xi(2s) T^(s-1) / (s-1) - xi(2s-1) T^(-s) / s."""
    s = complex(s)
    if T < 1:
        raise ValueError("truncation parameter must satisfy T >= 1")
    if s in (0, 1) or abs(s - 0.5) < 1e-15:
        raise PoleError(f"closed form has a pole at s={s}")
    a, b = completed_xi(2 * s), completed_xi(2 * s - 1)
    return complex(a * T ** (s - 1) / (s - 1) - b * T ** (-s) / s)


def _gl(n: int, lo: float, hi: float):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (hi - lo) * x + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


def _geo_rule(s: complex, T: float, n: int) -> complex:
    # integrand is even in x, so integrate x in [0, 1/2] and double
    xs, wx = _gl(n, 0.0, 0.5)
    # arc piece: sqrt(1 - x^2) <= y <= 1
    us, wu = _gl(n, 0.0, 1.0)
    bottom = np.sqrt(1 - xs ** 2)
    X = np.repeat(xs, n)
    B = np.repeat(bottom, n)
    U = np.tile(us, n)
    Y = B + U * (1 - B)
    W = np.repeat(wx * (1 - bottom), n) * np.tile(wu, n)
    arc = np.sum(W * _fourier_many(X, Y, s) / Y ** 2)
    rect = 0j
    if T > 1:
        # rectangle 1 <= y <= T in v = log y
        m = n * max(1, int(math.ceil(math.log(T) / math.log(2.0))))
        vs, wv = _gl(m, 0.0, math.log(T))
        X = np.repeat(xs, m)
        Y = np.exp(np.tile(vs, n))
        W = np.repeat(wx, m) * np.tile(wv, n)
        rect = np.sum(W * _fourier_many(X, Y, s) / Y)
    return complex(2 * (arc + rect))


def truncated_integral_geo(s: complex, T: float, tol: float = 1e-6, max_nodes: int = 128) -> complex:
    """Integral of E(z, s) dx dy / y^2 over {|x| <= 1/2, x^2 + y^2 >= 1, y <= T}.

    Tensor Gauss-Legendre on the arc piece and the rectangle, doubling the
    node count until two successive rules agree to ``tol / 100``.
    """
    if T < 1:
        raise ValueError("truncation parameter must satisfy T >= 1")
    n = 12
    prev = _geo_rule(s, T, n)
    while n < max_nodes:
        n *= 2
        cur = _geo_rule(s, T, n)
        if abs(cur - prev) < tol / 100:
            return cur
        prev = cur
    raise QuadratureError(f"quadrature over the truncated domain did not converge (last change "
                          f"{abs(cur - prev):.2e})", estimate=cur)


def rank2_zeta(sigma: complex) -> complex:
    """xi(2 sigma) / (sigma - 1) - xi(2 sigma - 1) / sigma."""
    sigma = complex(sigma)
    if sigma in (0, 1):
        raise PoleError("rank-2 zeta has simple poles at 0 and 1; see rank2_zeta_residues")
    if abs(sigma - 0.5) < 1e-15:
        # the two xi poles cancel at 1/2; the function is even about 1/2, so
        # Richardson-extrapolate symmetric averages
        h = 1e-3
        avg = [0.5 * (rank2_zeta(0.5 + d) + rank2_zeta(0.5 - d)) for d in (h, h / 2)]
        return (4 * avg[1] - avg[0]) / 3
    a, b = completed_xi(np.array([2 * sigma, 2 * sigma - 1]))
    return complex(a / (sigma - 1) - b / sigma)


def rank2_zeta_residues() -> tuple[float, float]:
    """Residues at sigma = 1 and sigma = 0.

    At sigma = 1 both terms are singular: xi(2 sigma)/(sigma - 1) gives xi(2)
    and -xi(2 sigma - 1)/sigma gives -1/2 (xi has residue 1 at 1).  The
    functional equation makes the residue at 0 the negative.
    """
    r = float(completed_xi(2.0).real) - 0.5
    return r, -r
