"""Rank-2 lattices in the Euclidean plane: Gaussian-weighted counting, stability, bridges.

A lattice is given by two basis vectors (rows).  Degrees are ``-log`` of
covolumes; a rank-1 sublattice ``Z v`` has degree ``-log |v|``.  Every
indicator comparison carries a tie band: inside it a sample is reported as
skipped rather than decided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import truncomb
from .eisenstein import UpperHalfPoint
from .rootdata import build_root_system

__all__ = [
    "DegenerateBasisError",
    "LatticeBasis",
    "Polygon",
    "GroupPoint",
    "BridgeResult",
    "reduce_to_fundamental_domain",
    "short_vectors",
    "primitive_vectors",
    "h0",
    "dual_lattice",
    "degree",
    "rr_defect",
    "hn_polygon",
    "sublattice_polygon",
    "is_semistable",
    "micro_bridge_check",
    "fundamental_relation_check",
    "arthur_truncation_one",
    "random_lattice",
    "random_group_point",
    "TIE_BAND",
]

TIE_BAND = 1e-9


class DegenerateBasisError(ValueError):
    """Basis vectors are (numerically) linearly dependent."""


@dataclass(frozen=True)
class LatticeBasis:
    b1: tuple[float, float]
    b2: tuple[float, float]
    gram: np.ndarray = field(init=False, repr=False, compare=False)
    volume: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        b1 = tuple(float(v) for v in self.b1)
        b2 = tuple(float(v) for v in self.b2)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)
        m = np.array([b1, b2])
        vol = abs(float(np.linalg.det(m)))
        scale = max(np.hypot(*b1) * np.hypot(*b2), 1e-300)
        if not np.all(np.isfinite(m)) or vol <= 1e-13 * scale:
            raise DegenerateBasisError(f"basis {b1}, {b2} is degenerate")
        object.__setattr__(self, "gram", m @ m.T)
        object.__setattr__(self, "volume", vol)

    @classmethod
    def from_matrix(cls, m) -> "LatticeBasis":
        m = np.asarray(m, dtype=float).reshape(2, 2)
        return cls(tuple(m[0]), tuple(m[1]))

    @classmethod
    def from_point(cls, z, volume: float = 1.0) -> "LatticeBasis":
        """Lattice ``Z + Z tau`` rescaled to the given covolume."""
        tau = z.z if isinstance(z, UpperHalfPoint) else complex(z)
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half plane")
        c = math.sqrt(volume / tau.imag)
        return cls((c, 0.0), (c * tau.real, c * tau.imag))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([self.b1, self.b2])

    def scaled(self, c: float) -> "LatticeBasis":
        return LatticeBasis.from_matrix(c * self.matrix)


@dataclass(frozen=True)
class Polygon:
    """Piecewise-affine function on [0, rank] given by its breakpoints."""

    breakpoints: tuple[tuple[float, float], ...]

    def __call__(self, r: float) -> float:
        xs, ys = zip(*self.breakpoints)
        return float(np.interp(r, xs, ys))

    @property
    def rank(self) -> int:
        return int(round(self.breakpoints[-1][0]))

    def is_concave(self, tol: float = 0.0) -> bool:
        pts = self.breakpoints
        slopes = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
        return all(a >= b - tol for a, b in zip(slopes, slopes[1:]))


@dataclass(frozen=True)
class GroupPoint:
    """Iwasawa coordinates of g in SL(2, R): unipotent ``x``, torus ``a1``, rotation ``theta``.

    The lattice of g has basis rows ``a1 u`` and ``x a1 u + u_perp / a1``
    with ``u = (cos theta, sin theta)``, so the distinguished rank-1
    sublattice has degree ``-log a1``.  ``H_0(g) = (log a1, -log a1)``.
    """

    a1: float
    x: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not self.a1 > 0:
            raise ValueError("a1 must be positive")

    @property
    def matrix(self) -> np.ndarray:
        u = np.array([math.cos(self.theta), math.sin(self.theta)])
        perp = np.array([-u[1], u[0]])
        return np.array([self.a1 * u, self.x * self.a1 * u + perp / self.a1])

    @property
    def lattice(self) -> LatticeBasis:
        return LatticeBasis.from_matrix(self.matrix)

    @property
    def h0_vector(self) -> tuple[float, float]:
        return (math.log(self.a1), -math.log(self.a1))

    @property
    def flag_degree(self) -> float:
        return -math.log(self.a1)


def _as_basis(basis) -> LatticeBasis:
    if isinstance(basis, LatticeBasis):
        return basis
    if isinstance(basis, GroupPoint):
        return basis.lattice
    return LatticeBasis.from_matrix(basis)


def _lagrange_reduce(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Lagrange reduction; returns (reduced rows, integer transform U with U @ m = reduced)."""
    b = m.astype(float).copy()
    u = np.eye(2, dtype=np.int64)
    if b[0] @ b[0] > b[1] @ b[1]:
        b = b[::-1].copy()
        u = u[::-1].copy()
    for _ in range(10_000):
        k = int(round((b[0] @ b[1]) / (b[0] @ b[0])))
        b[1] -= k * b[0]
        u[1] -= k * u[0]
        if b[1] @ b[1] < b[0] @ b[0] * (1 - 1e-15):
            b = b[::-1].copy()
            u = u[::-1].copy()
            continue
        return b, u
    raise ArithmeticError("lattice reduction did not terminate")


def reduce_to_fundamental_domain(basis) -> tuple[UpperHalfPoint, np.ndarray]:
    """Reduced point tau of the lattice and the integer transform to the reduced basis.

    With rows ``b1`` (a shortest vector) and ``b2`` of the reduced basis,
    ``tau = b2 / b1`` read as complex numbers, so ``Im tau = Vol / lambda_1^2``.
    The transform is in SL(2, Z) for positively oriented input bases
    (GL(2, Z) otherwise, since orientation is fixed by flipping ``b2``).
    Boundary points are normalized to ``Re tau >= 0``.
    """
    lat = _as_basis(basis)
    red, u = _lagrange_reduce(lat.matrix)
    c1 = complex(*red[0])
    c2 = complex(*red[1])
    tau = c2 / c1
    if tau.imag < 0:
        tau = -tau
        red[1] = -red[1]
        u[1] = -u[1]
    # boundary identifications: x = -1/2 ~ x = 1/2, and |tau| = 1 with x < 0 ~ -1/tau
    if abs(tau.real + 0.5) < 1e-12:
        tau += 1
        red[1] += red[0]
        u[1] += u[0]
    if abs(abs(tau) - 1) < 1e-12 and tau.real < -1e-12:
        tau = -1 / tau
        red = np.array([red[1], -red[0]])
        u = np.array([u[1], -u[0]])
    return UpperHalfPoint(tau.real, tau.imag), u


def short_vectors(basis, radius: float) -> np.ndarray:
    """All non-zero integer coefficient pairs (m, n) with |m b1 + n b2| <= radius.

    Complete by Cramer's rule: |m| <= radius |b2| / Vol and |n| <= radius |b1| / Vol.
    """
    lat = _as_basis(basis)
    b = lat.matrix
    mb = int(math.floor(radius * math.hypot(*b[1]) / lat.volume))
    nb = int(math.floor(radius * math.hypot(*b[0]) / lat.volume))
    m, n = np.meshgrid(np.arange(-mb, mb + 1), np.arange(-nb, nb + 1), indexing="ij")
    coef = np.stack([m.ravel(), n.ravel()], axis=1)
    vec = coef @ b
    keep = (np.einsum("ij,ij->i", vec, vec) <= radius * radius) & np.any(coef != 0, axis=1)
    return coef[keep]


def primitive_vectors(basis, radius: float) -> np.ndarray:
    """Primitive coefficient pairs with |v| <= radius, one per line (first non-zero entry > 0)."""
    coef = short_vectors(basis, radius)
    if coef.size == 0:
        return coef.reshape(0, 2)
    g = np.gcd(coef[:, 0], coef[:, 1])
    sign = np.where(coef[:, 0] != 0, np.sign(coef[:, 0]), np.sign(coef[:, 1]))
    return coef[(g == 1) & (sign > 0)]


def _shortest_length(lat: LatticeBasis) -> float:
    # brute force: some basis vector bounds lambda_1 from above
    r = min(math.hypot(*lat.b1), math.hypot(*lat.b2))
    vec = short_vectors(lat, r * (1 + 1e-12)) @ lat.matrix
    return float(np.sqrt(np.min(np.einsum("ij,ij->i", vec, vec))))


def h0(basis, tol: float = 1e-12) -> float:
    """log of the theta sum ``sum_{x in L} exp(-pi |x|^2)``.

    The tail beyond radius R is bounded with the point count
    ``#{|x| <= r} <= pi (r + d)^2 / Vol`` (d the basis diameter), summed over
    unit shells; R is the smallest integer-plus-diameter radius whose bound is below ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    lat = _as_basis(basis)
    red = LatticeBasis.from_matrix(_lagrange_reduce(lat.matrix)[0])
    d = math.hypot(*red.b1) + math.hypot(*red.b2)

    def tail(radius):
        k = np.arange(0, 200)
        r = radius + k
        return float(np.sum(math.pi * (r + 1 + d) ** 2 / red.volume * np.exp(-math.pi * r * r)))

    radius = 1.0
    while tail(radius) >= tol:
        radius += 0.5
    vec = short_vectors(red, radius) @ red.matrix
    total = 1.0 + float(np.sum(np.exp(-math.pi * np.einsum("ij,ij->i", vec, vec))))
    return math.log(total)


def dual_lattice(basis) -> LatticeBasis:
    """Basis of {y : <x, y> in Z for all x in L}; its Gram matrix is the inverse Gram."""
    lat = _as_basis(basis)
    return LatticeBasis.from_matrix(np.linalg.inv(lat.matrix).T)


def degree(basis) -> float:
    return -math.log(_as_basis(basis).volume) + 0.0


def rr_defect(basis, tol: float = 1e-13) -> float:
    """``h0(L) - h0(L dual) - deg(L)``, zero by Poisson summation."""
    lat = _as_basis(basis)
    return h0(lat, tol) - h0(dual_lattice(lat), tol) - degree(lat)


def hn_polygon(basis) -> Polygon:
    """Harder-Narasimhan polygon normalized to vanish at 0 and 2.

    The single breakpoint value is ``max(0, -log lambda_1 - deg / 2)``: the
    shortest vector spans the rank-1 sublattice of largest degree, and it
    destabilizes only if its slope beats the total slope.
    """
    lat = _as_basis(basis)
    value = max(0.0, -math.log(_shortest_length(lat)) - degree(lat) / 2)
    return Polygon(((0.0, 0.0), (1.0, value), (2.0, 0.0)))


def sublattice_polygon(basis, coeffs) -> Polygon:
    """Normalized polygon of the filtration 0 < Z v < L for v = m b1 + n b2."""
    lat = _as_basis(basis)
    v = np.asarray(coeffs, dtype=float) @ lat.matrix
    value = -math.log(float(np.hypot(*v))) - degree(lat) / 2
    return Polygon(((0.0, 0.0), (1.0, value), (2.0, 0.0)))


@dataclass(frozen=True)
class SemistabilityVerdict:
    hn_route: bool
    cusp_route: bool
    boundary: bool
    reduced_height: float

    @property
    def agree(self) -> bool:
        return self.hn_route == self.cusp_route


def is_semistable(basis) -> SemistabilityVerdict:
    """Semistability by two routes.

    HN route: shortest vector found by enumeration, breakpoint
    ``-log lambda_1 - deg/2 <= 0``.  Cusp route: height ``y`` of the reduced
    point of the volume-1 rescaling is at most 1 (distance ``1/y`` to the
    only cusp at least 1).  Within ``TIE_BAND`` of the boundary the sample is
    flagged and both routes report semistable.
    """
    lat = _as_basis(basis)
    unit = lat.scaled(1 / math.sqrt(lat.volume))
    breakpoint_value = -math.log(_shortest_length(lat)) - degree(lat) / 2
    tau, _ = reduce_to_fundamental_domain(unit)
    boundary = abs(tau.y - 1) < TIE_BAND or abs(breakpoint_value) < TIE_BAND / 2
    hn = breakpoint_value <= 0 or boundary
    cusp = tau.y <= 1 or boundary
    return SemistabilityVerdict(hn, cusp, boundary, tau.y)


@dataclass(frozen=True)
class BridgeResult:
    lhs: int
    rhs: int
    skipped: bool = False

    @property
    def holds(self) -> bool:
        return self.skipped or self.lhs == self.rhs


def _polygon_value(p) -> float:
    return p(1.0) if isinstance(p, Polygon) else float(p)


_A1 = build_root_system("A1")


def micro_bridge_check(g: GroupPoint, p) -> BridgeResult:
    """tau_hat_B(-H_0(g) - T(p)) against 1(deg of the distinguished line > p(1)).

    ``T(p) = (p(1), -p(1))`` has fundamental-weight coordinate ``p(1)``; the
    left side goes through the exact cone indicator of :mod:`truncomb`.
    """
    p1 = _polygon_value(p)
    deg1 = g.flag_degree
    h = -g.h0_vector[0] - p1  # coroot coordinate of -H_0(g) - T(p)
    if abs(deg1 - p1) < TIE_BAND or abs(h) < TIE_BAND:
        return BridgeResult(0, 0, skipped=True)
    lhs = truncomb.tau_hat(_A1, (), (0,), (Fraction(h),))
    rhs = int(deg1 > p1)
    return BridgeResult(int(lhs), rhs)


def _lines_above(lat: LatticeBasis, threshold: float) -> tuple[int, bool]:
    """Number of rank-1 sublattices with degree > threshold, and whether any is within the tie band."""
    radius = math.exp(-threshold) * (1 + 4 * TIE_BAND)
    prim = primitive_vectors(lat, radius)
    if prim.size == 0:
        return 0, False
    vec = prim @ lat.matrix
    degs = -0.5 * np.log(np.einsum("ij,ij->i", vec, vec))
    tie = bool(np.any(np.abs(degs - threshold) < TIE_BAND))
    return int(np.sum(degs > threshold)), tie


def fundamental_relation_check(g, p, degree_bound: float | None = None) -> BridgeResult:
    """``1(HN polygon <= p)`` against ``1 - #{lines of degree > p(1)}`` for SL(2).

    The right side is the alternating sum over the two standard parabolics:
    ``G`` contributes 1 and the Borel contributes one term per rank-1
    sublattice.  Polygons must have ``p(1) >= 0``; then at most one line can
    exceed the bound and the enumeration radius ``exp(-p(1))`` is complete.
    ``degree_bound`` optionally lowers the threshold used for enumeration
    (it must not exceed ``p(1)``).
    """
    p1 = _polygon_value(p)
    if p1 < 0:
        raise ValueError("polygon must satisfy p(1) >= 0")
    lat = _as_basis(g)
    if lat.volume != 1.0 and abs(lat.volume - 1) > 1e-12:
        raise ValueError("SL(2) points have covolume 1")
    bound = p1 if degree_bound is None else min(degree_bound, p1)
    count, tie = _lines_above(lat, bound)
    hn = hn_polygon(lat)(1.0)
    # ties are judged on the unclipped breakpoint; the clipped value 0 is exact
    raw = -math.log(_shortest_length(lat)) - degree(lat) / 2
    if tie or abs(raw - p1) < TIE_BAND:
        return BridgeResult(0, 0, skipped=True)
    if degree_bound is not None and degree_bound < p1:
        count, _ = _lines_above(lat, p1)
    lhs = int(hn <= p1)
    rhs = 1 - count
    return BridgeResult(lhs, rhs)


@dataclass(frozen=True)
class TruncationResult:
    truncated_sum: int
    direct: int
    skipped: bool = False

    @property
    def holds(self) -> bool:
        return self.skipped or self.truncated_sum == self.direct


def arthur_truncation_one(g, T: float) -> TruncationResult:
    """Arthur's truncation of the constant function 1 at ``g``, by two routes.

    ``T`` is the fundamental-weight coordinate of ``T = (T, -T)`` (so the
    simple root takes the value ``2T`` on it); ``T >= 0``.  The sum route is
    ``1 - sum_delta tau_hat(H(delta g) - T)`` with ``H(delta g)`` read off each
    primitive vector ``v`` as ``(-log |v|, log |v|)``.  The direct route asks
    whether the reduced point lies in the truncated Siegel region ``y <= exp(2T)``.
    """
    if T < 0:
        raise ValueError("truncation parameter must be >= 0")
    lat = _as_basis(g)
    unit = lat.scaled(1 / math.sqrt(lat.volume))
    radius = math.exp(-T) * (1 + 4 * TIE_BAND)
    prim = primitive_vectors(unit, radius)
    total = 1
    for v in prim @ unit.matrix if prim.size else []:
        h = -math.log(float(np.hypot(*v))) - T
        if abs(h) < TIE_BAND:
            return TruncationResult(0, 0, skipped=True)
        total -= truncomb.tau_hat(_A1, (), (0,), (Fraction(h),))
    tau, _ = reduce_to_fundamental_domain(unit)
    if abs(math.log(tau.y) - 2 * T) < 2 * TIE_BAND:
        return TruncationResult(0, 0, skipped=True)
    direct = int(tau.y <= math.exp(2 * T))
    return TruncationResult(int(total), direct)


def random_lattice(rng: np.random.Generator, log_volume: tuple[float, float] = (-2.0, 2.0)) -> LatticeBasis:
    """Random basis: Haar-like shape (reduced height up to ~e^3), random rotation and skew."""
    g = random_group_point(rng)
    vol = math.exp(rng.uniform(*log_volume))
    m = g.matrix * math.sqrt(vol)
    # random unimodular change so the basis is not already reduced
    k = int(rng.integers(-3, 4))
    u = np.array([[1, k], [0, 1]]) if rng.random() < 0.5 else np.array([[1, 0], [k, 1]])
    return LatticeBasis.from_matrix(u @ m)


def random_group_point(rng: np.random.Generator, log_a_range: float = 1.5) -> GroupPoint:
    return GroupPoint(math.exp(rng.uniform(-log_a_range, log_a_range)), rng.uniform(-1.0, 1.0),
                      rng.uniform(0, 2 * math.pi))
