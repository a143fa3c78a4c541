"""Characteristic functions of chambers and cones on a_0 and the identities they satisfy.

Standard parabolics are identified with subsets ``J`` of simple-root indices
(the simple roots of the Levi): the Borel is ``()`` and the whole group is
``range(rank)``.  Vectors ``H`` in a_0 are given in simple-coroot
coordinates, so that ``alpha_j(H) = sum_i H_i cartan[i][j]`` and the
fundamental weight ``varpi_j(H) = H_j``.

Every indicator reduces to sign conditions ``f . H > 0`` for finitely many
rational row vectors ``f``.  Rows are rescaled to coprime integers once, so
evaluation on integer (or, after clearing denominators, rational) ``H`` is
exact, including in vectorised numpy int64 form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .rootdata import RootSystem, _solve, build_root_system

__all__ = [
    "WallError",
    "ChamberVector",
    "parabolics",
    "nested_pairs",
    "tau",
    "tau_hat",
    "sigma",
    "projection_to_aQ",
    "identity_check",
    "IdentityReport",
    "IDENTITIES",
]

IDENTITIES = ("LCL-tau-tauhat", "LCL-tauhat-tau", "sigma-characterization", "phi-signed-sum")


class WallError(ValueError):
    """H lies on a wall: one of the defining pairings vanishes exactly."""


@dataclass(frozen=True)
class ChamberVector:
    """A rational vector of a_0 in simple-coroot coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def as_integer(self) -> tuple[int, ...]:
        """Positive multiple with integer entries (same signs for every pairing)."""
        den = math.lcm(*(c.denominator for c in self.coords))
        return tuple(int(c * den) for c in self.coords)


def _key(J: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(j) for j in J)))


def parabolics(rs: RootSystem) -> list[tuple[int, ...]]:
    """All standard parabolics as sorted index tuples, Borel first."""
    idx = range(rs.rank)
    return [c for k in range(rs.rank + 1) for c in itertools.combinations(idx, k)]


def nested_pairs(rs: RootSystem) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    ps = parabolics(rs)
    return [(q, p) for q in ps for p in ps if set(q) <= set(p)]


def _integer_row(row: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in row))
    ints = [int(Fraction(x) * den) for x in row]
    g = math.gcd(*ints) or 1
    return tuple(v // g for v in ints)


def _root_row(rs: RootSystem, j: int) -> list[Fraction]:
    return [Fraction(rs.cartan[i][j]) for i in range(rs.rank)]


@lru_cache(maxsize=None)
def _projection(label: str, Q: tuple[int, ...]) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix of the projection a_0 -> a_Q along a_0^Q (acting on coroot coordinates)."""
    rs = build_root_system(label)
    r = rs.rank
    ident = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    if not Q:
        return tuple(tuple(row) for row in ident)
    # H - sum_{g in Q} c_g alpha_g^vee with beta(...) = 0 for beta in Q:
    # M c = R H, M[b][g] = cartan[g][b]
    M = [[Fraction(rs.cartan[g][b]) for g in Q] for b in Q]
    cols = []
    for e in range(r):
        rhs = [Fraction(rs.cartan[e][b]) for b in Q]
        c = _solve(M, rhs)
        col = [ident[i][e] for i in range(r)]
        for k, g in enumerate(Q):
            col[g] -= c[k]
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))


def projection_to_aQ(rs: RootSystem, Q: Iterable[int], H: Sequence) -> tuple[Fraction, ...]:
    P = _projection(rs.label, _key(Q))
    return tuple(sum((P[i][j] * Fraction(H[j]) for j in range(rs.rank)), Fraction(0)) for i in range(rs.rank))


@lru_cache(maxsize=None)
def _tau_rows(label: str, Q: tuple[int, ...], P: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Rows ``alpha o proj_{a_Q}`` for alpha in J_P minus J_Q."""
    rs = build_root_system(label)
    proj = _projection(label, Q)
    rows = []
    for a in P:
        if a in Q:
            continue
        f = _root_row(rs, a)
        rows.append(_integer_row([sum(f[i] * proj[i][j] for i in range(rs.rank)) for j in range(rs.rank)]))
    return tuple(rows)


@lru_cache(maxsize=None)
def _tauhat_rows(label: str, Q: tuple[int, ...], P: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Rows ``varpi_alpha^P`` for alpha in J_P minus J_Q.

    The a_0^P component of H is ``sum_{g in P} c_g alpha_g^vee`` with
    ``M_P c = (beta(H))_{beta in P}``; the weight dual to alpha reads off ``c_alpha``.
    """
    rs = build_root_system(label)
    r = rs.rank
    if not P:
        return ()
    M = [[Fraction(rs.cartan[g][b]) for g in P] for b in P]
    # c = M^{-1} R_P H; build the row for c_alpha column by column
    coeff_cols = []
    for e in range(r):
        rhs = [Fraction(rs.cartan[e][b]) for b in P]
        coeff_cols.append(_solve(M, rhs))
    rows = []
    for k, a in enumerate(P):
        if a in Q:
            continue
        rows.append(_integer_row([coeff_cols[e][k] for e in range(r)]))
    return tuple(rows)


def _signs(rows, H: Sequence) -> list[Fraction]:
    return [sum((Fraction(f[i]) * Fraction(H[i]) for i in range(len(H))), Fraction(0)) for f in rows]


def _check_pair(rs: RootSystem, Q, P):
    q, p = _key(Q), _key(P)
    if not set(q) <= set(p):
        raise ValueError(f"Q={q} is not contained in P={p}")
    if p and p[-1] >= rs.rank:
        raise ValueError(f"index out of range for rank {rs.rank}")
    return q, p


def _check_vector(rs: RootSystem, H: Sequence) -> None:
    if len(H) != rs.rank:
        raise ValueError(f"H has {len(H)} coordinates, rank is {rs.rank}")


def tau(rs: RootSystem, Q, P, H: Sequence) -> int:
    """1 if every alpha in Delta_Q^P is positive on the a_Q-projection of H."""
    q, p = _check_pair(rs, Q, P)
    _check_vector(rs, H)
    vals = _signs(_tau_rows(rs.label, q, p), H)
    if any(v == 0 for v in vals):
        raise WallError(f"H={tuple(H)} lies on a wall of tau_{q}^{p}")
    return int(all(v > 0 for v in vals))


def tau_hat(rs: RootSystem, Q, P, H: Sequence) -> int:
    """1 if every weight in hat-Delta_Q^P is positive on H."""
    q, p = _check_pair(rs, Q, P)
    _check_vector(rs, H)
    vals = _signs(_tauhat_rows(rs.label, q, p), H)
    if any(v == 0 for v in vals):
        raise WallError(f"H={tuple(H)} lies on a wall of tau_hat_{q}^{p}")
    return int(all(v > 0 for v in vals))


def _full(rs: RootSystem) -> tuple[int, ...]:
    return tuple(range(rs.rank))


def _supersets(rs: RootSystem, J: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [p for p in parabolics(rs) if set(J) <= set(p)]


def _between(rs: RootSystem, Q: tuple[int, ...], P: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [r for r in parabolics(rs) if set(Q) <= set(r) <= set(P)]


def sigma(rs: RootSystem, P1, P2, H: Sequence) -> tuple[int, int]:
    """sigma_1^2(H) by the alternating sum (route A) and by the three sign conditions (route B)."""
    p1, p2 = _check_pair(rs, P1, P2)
    _check_vector(rs, H)
    g = _full(rs)
    route_a = 0
    for p3 in _supersets(rs, p2):
        route_a += (-1) ** (len(p3) - len(p2)) * tau(rs, p1, p3, H) * tau_hat(rs, p3, g, H)
    outside = [a for a in g if a not in p2]
    cond_i = tau(rs, p1, p2, H)
    pr = projection_to_aQ(rs, p1, H)
    cond_ii = all(sum(Fraction(rs.cartan[i][a]) * pr[i] for i in range(rs.rank)) <= 0 for a in outside)
    cond_iii = all(Fraction(H[a]) > 0 for a in outside)
    for a in outside:
        if Fraction(H[a]) == 0 or sum(Fraction(rs.cartan[i][a]) * pr[i] for i in range(rs.rank)) == 0:
            raise WallError(f"H={tuple(H)} lies on a wall of sigma_{p1}^{p2}")
    return route_a, int(cond_i and cond_ii and cond_iii)


# ---------------------------------------------------------------------------
# Vectorised identity checks
# ---------------------------------------------------------------------------

def _all_rows(rs: RootSystem) -> np.ndarray:
    rows = set()
    for q, p in nested_pairs(rs):
        rows.update(_tau_rows(rs.label, q, p))
        rows.update(_tauhat_rows(rs.label, q, p))
    rows = {r for r in rows if any(r)}
    return np.array(sorted(rows), dtype=np.int64).reshape(-1, rs.rank)


def _coroot_rows(rs: RootSystem) -> np.ndarray:
    """Projected coroots proj_{a_Q}(alpha^vee) for every Q and alpha outside Q (Lambda-side walls)."""
    rows = set()
    for q in parabolics(rs):
        proj = _projection(rs.label, q)
        for a in range(rs.rank):
            if a in q:
                continue
            rows.add(_integer_row([proj[i][a] for i in range(rs.rank)]))
    return np.array(sorted(r for r in rows if any(r)), dtype=np.int64).reshape(-1, rs.rank)


def _pos(rows, H: np.ndarray) -> np.ndarray:
    """(npts,) boolean: all rows strictly positive on H; vacuous truth for no rows."""
    if len(rows) == 0:
        return np.ones(H.shape[0], dtype=bool)
    return np.all(H @ np.array(rows, dtype=np.int64).T > 0, axis=1)


def _tau_vec(rs, q, p, H):
    return _pos(_tau_rows(rs.label, q, p), H).astype(np.int64)


def _tauhat_vec(rs, q, p, H):
    return _pos(_tauhat_rows(rs.label, q, p), H).astype(np.int64)


def _lcl1(rs, q, p, H):
    total = np.zeros(H.shape[0], dtype=np.int64)
    for r in _between(rs, q, p):
        total += (-1) ** (len(p) - len(r)) * _tau_vec(rs, q, r, H) * _tauhat_vec(rs, r, p, H)
    return total, np.full(H.shape[0], int(q == p))


def _lcl2(rs, q, p, H):
    total = np.zeros(H.shape[0], dtype=np.int64)
    for r in _between(rs, q, p):
        total += (-1) ** (len(r) - len(q)) * _tauhat_vec(rs, q, r, H) * _tau_vec(rs, r, p, H)
    return total, np.full(H.shape[0], int(q == p))


def _sigma_vec(rs, p1, p2, H):
    g = _full(rs)
    route_a = np.zeros(H.shape[0], dtype=np.int64)
    for p3 in _supersets(rs, p2):
        route_a += (-1) ** (len(p3) - len(p2)) * _tau_vec(rs, p1, p3, H) * _tauhat_vec(rs, p3, g, H)
    outside = [a for a in g if a not in p2]
    cond = _tau_vec(rs, p1, p2, H).astype(bool)
    if outside:
        # alpha o proj_{a_P1} for alpha outside P2 are among the tau rows of (P1, G)
        rows_ii = [_tau_rows(rs.label, p1, tuple(sorted(set(p1) | {a})))[0] for a in outside]
        vals = H @ np.array(rows_ii, dtype=np.int64).T
        cond &= np.all(vals <= 0, axis=1)
        cond &= np.all(H[:, outside] > 0, axis=1)
    return route_a, cond.astype(np.int64)


def _phi_signed_sum(rs, q, p, H, lam):
    """Both sides of the signed phi-sum identity for one Lambda (fundamental-weight coordinates)."""
    proj = _projection(rs.label, q)

    def lam_coroot(a):
        return sum(Fraction(lam[i]) * proj[i][a] for i in range(rs.rank))

    nonpos = {a: lam_coroot(a) <= 0 for a in p if a not in q}
    total = np.zeros(H.shape[0], dtype=np.int64)
    for r in _between(rs, q, p):
        alphas = [a for a in r if a not in q]
        eps = (-1) ** sum(nonpos[a] for a in alphas)
        rows = _tauhat_rows(rs.label, q, r)  # aligned with alphas (same order)
        phi = np.ones(H.shape[0], dtype=bool)
        for a, row in zip(alphas, rows):
            v = H @ np.array(row, dtype=np.int64)
            phi &= (v > 0) if nonpos[a] else (v <= 0)
        total += eps * phi.astype(np.int64) * _tau_vec(rs, r, p, H)
    rhs = 0 if any(nonpos.values()) else 1
    return total, np.full(H.shape[0], rhs)


def _chamber_points(rows: np.ndarray, rank: int, include_faces: bool = False) -> np.ndarray:
    """One integer point in every open chamber of the central arrangement {row . x = 0}.

    Only for rank <= 2.  With ``include_faces`` also the origin and one
    point on each ray of the arrangement are returned.
    """
    if rank == 1:
        pts = [[1], [-1]] + ([[0]] if include_faces else [])
        return np.array(pts, dtype=np.int64)
    if rank != 2:
        raise ValueError("chamber enumeration is implemented for rank <= 2")
    rays = set()
    for f in rows:
        d = (-int(f[1]), int(f[0]))
        g = math.gcd(*d)
        d = (d[0] // g, d[1] // g)
        rays.add(d)
        rays.add((-d[0], -d[1]))
    ordered = sorted(rays, key=lambda v: math.atan2(v[1], v[0]))
    pts = []
    for k, v in enumerate(ordered):
        w = ordered[(k + 1) % len(ordered)]
        pts.append((v[0] + w[0], v[1] + w[1]))
    if include_faces:
        pts += [(0, 0)] + ordered
    return np.array(pts, dtype=np.int64)


@dataclass
class IdentityReport:
    group: str
    identity: str
    mode: str
    seed: int | None
    checked: int = 0
    walls_skipped: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and self.checked > 0

    def to_dict(self) -> dict:
        return {"group": self.group, "identity": self.identity, "mode": self.mode, "seed": self.seed,
                "checked": self.checked, "walls_skipped": self.walls_skipped,
                "violations": self.violations[:20], "violation_count": len(self.violations),
                "passed": self.passed}


def identity_check(rs: RootSystem | str, identity_name: str, samples: int = 10_000, seed: int = 0,
                   exhaustive: bool | None = None, value_range: int = 10 ** 6) -> IdentityReport:
    """Check one identity for every nested pair of standard parabolics.

    Rank <= 2 defaults to exhaustive enumeration of the chambers of the
    arrangement of all functionals involved (the indicators are constant on
    each chamber); higher rank draws ``samples`` random integer vectors and
    discards those on a wall.  For the phi-sum identity, Lambda runs over every face of
    its own arrangement (rank <= 2) or is drawn with small integer entries so
    that its walls are hit too.
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    if identity_name not in IDENTITIES:
        raise ValueError(f"unknown identity {identity_name!r}; expected one of {IDENTITIES}")
    if exhaustive is None:
        exhaustive = rs.rank <= 2
    rows = _all_rows(rs)
    rng = np.random.default_rng(seed)
    report = IdentityReport(rs.label, identity_name, "exhaustive" if exhaustive else "sampled",
                            None if exhaustive else seed)
    if exhaustive:
        H = _chamber_points(rows, rs.rank)
    else:
        H = rng.integers(-value_range, value_range + 1, size=(samples, rs.rank), dtype=np.int64)
        on_wall = np.any(H @ rows.T == 0, axis=1)
        report.walls_skipped = int(on_wall.sum())
        H = H[~on_wall]
    if identity_name == "phi-signed-sum":
        lam_rows = _coroot_rows(rs)
        if exhaustive:
            lams = _chamber_points(lam_rows, rs.rank, include_faces=True)
        else:
            lams = rng.integers(-3, 4, size=(max(1, samples // 100), rs.rank), dtype=np.int64)
            lams = np.vstack([lams, np.ones((1, rs.rank), dtype=np.int64)])  # Lambda = rho included
            # each Lambda is paired with a slice of the H samples
    for q, p in nested_pairs(rs):
        if identity_name == "phi-signed-sum":
            chunks = [H] * len(lams) if exhaustive else np.array_split(H, len(lams))
            for lam, Hs in zip(lams, chunks):
                if Hs.size == 0:
                    continue
                lhs, rhs = _phi_signed_sum(rs, q, p, Hs, tuple(int(x) for x in lam))
                _record(report, lhs, rhs, Hs, q, p, extra={"Lambda": [int(x) for x in lam]})
            continue
        if identity_name == "LCL-tau-tauhat":
            lhs, rhs = _lcl1(rs, q, p, H)
        elif identity_name == "LCL-tauhat-tau":
            lhs, rhs = _lcl2(rs, q, p, H)
        else:
            lhs, rhs = _sigma_vec(rs, q, p, H)
        _record(report, lhs, rhs, H, q, p)
    return report


def _record(report: IdentityReport, lhs, rhs, H, q, p, extra=None):
    report.checked += int(H.shape[0])
    bad = np.nonzero(lhs != rhs)[0]
    for k in bad[:5]:
        w = {"Q": list(q), "P": list(p), "H": [int(x) for x in H[k]], "lhs": int(lhs[k]), "rhs": int(rhs[k])}
        if extra:
            w.update(extra)
        report.violations.append(w)
