"""Root data and Weyl groups for the small Cartan types A1-A4, C2, G2.

Conventions
-----------
``cartan[i][j] = <alpha_i^vee, alpha_j>`` (Kac).  Weights are written in the
fundamental-weight basis, so ``<lam, alpha_i^vee>`` is simply ``lam[i]``.
Roots are stored in simple-root coordinates, coroots in simple-coroot
coordinates.  Everything here is exact: ``int`` and ``Fraction`` only.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

__all__ = [
    "ConfigurationError",
    "RootSystem",
    "WeylElement",
    "build_root_system",
    "weyl_group",
    "inversion_set",
    "pairing",
    "dump",
    "SUPPORTED_TYPES",
]


class ConfigurationError(ValueError):
    """Unsupported or inconsistent root-system request."""


# Symmetrised Gram matrices (alpha_i, alpha_j) of the simple roots.
_GRAM = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "A4": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    # alpha_1 short, alpha_2 long
    "C2": [[2, -2], [-2, 4]],
    "G2": [[2, -3], [-3, 6]],
}

SUPPORTED_TYPES = tuple(_GRAM)

Vector = tuple


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: reduced word plus its matrix on weight coordinates.

    ``matrix[i][j]`` is the i-th fundamental-weight coordinate of ``w(omega_j)``.
    Equality and hashing go through the matrix only.
    """

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, lam: Sequence) -> tuple:
        """Apply ``w`` to a weight given in fundamental-weight coordinates."""
        return tuple(sum(row[j] * lam[j] for j in range(len(lam))) for row in self.matrix)


@dataclass(frozen=True)
class RootSystem:
    label: str
    rank: int
    gram: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vector, ...]      # simple-root coordinates
    coroots: tuple[Vector, ...]             # simple-coroot coordinates, aligned with positive_roots
    rho: tuple[Fraction, ...]               # fundamental-weight coordinates (all ones)
    _weyl: list = field(default_factory=list, repr=False, compare=False)

    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        return self.positive_roots[: self.rank]

    @property
    def fundamental_weights(self) -> tuple[Vector, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    def root_in_weights(self, root: Sequence[int]) -> tuple[int, ...]:
        """Fundamental-weight coordinates of a root given in simple-root coordinates."""
        r = self.rank
        return tuple(sum(root[i] * self.cartan[j][i] for i in range(r)) for j in range(r))

    def weights_to_roots(self, lam: Sequence) -> tuple[Fraction, ...]:
        """Inverse of :meth:`root_in_weights` (result may be fractional)."""
        # (lam, alpha_j^vee) = sum_i n_i cartan[j][i]; solve for n.
        return _solve([[Fraction(self.cartan[j][i]) for i in range(self.rank)]
                       for j in range(self.rank)], [Fraction(x) for x in lam])

    def coroot_of(self, root: Sequence[int]) -> tuple[Fraction, ...]:
        """Simple-coroot coordinates of ``root^vee`` for any root (either sign)."""
        norm = _norm2(self.gram, root)
        return tuple(Fraction(root[i] * self.gram[i][i], norm) for i in range(self.rank))

    def height(self, root: Sequence) -> int:
        return sum(root)

    @property
    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=sum)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "coroots": [[str(c) for c in r] for r in self.coroots],
            "rho": [str(c) for c in self.rho],
            "weyl_group_order": len(weyl_group(self)),
        }


def _norm2(gram, v) -> int:
    n = len(v)
    return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> tuple[Fraction, ...]:
    """Exact Gauss-Jordan solve of a small nonsingular system."""
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def build_root_system(label: str) -> RootSystem:
    """Root data for ``label`` in {A1, A2, A3, A4, C2, G2}.

    >>> len(build_root_system("G2").positive_roots)
    6
    """
    key = str(label).upper()
    if key not in _GRAM:
        raise ConfigurationError(f"unsupported Cartan type {label!r}; expected one of {SUPPORTED_TYPES}")
    gram = tuple(tuple(r) for r in _GRAM[key])
    r = len(gram)
    cartan = tuple(tuple(2 * gram[i][j] // gram[i][i] for j in range(r)) for i in range(r))

    # Positive roots: closure of the simple roots under simple reflections,
    # keeping positive images.  s_i(beta) = beta - <alpha_i^vee, beta> alpha_i.
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(simple)
    order = list(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(r):
            c = sum(cartan[i][j] * beta[j] for j in range(r))
            img = tuple(beta[j] - (c if j == i else 0) for j in range(r))
            if all(x >= 0 for x in img) and any(img) and img not in seen:
                seen.add(img)
                order.append(img)
                queue.append(img)
    order.sort(key=lambda v: (sum(v), tuple(-x for x in v)))
    pos = tuple(order)
    rs = RootSystem(
        label=key,
        rank=r,
        gram=gram,
        cartan=cartan,
        positive_roots=pos,
        coroots=(),
        rho=tuple(Fraction(1) for _ in range(r)),
    )
    object.__setattr__(rs, "coroots", tuple(rs.coroot_of(b) for b in pos))
    return rs


def _reflection_matrix(rs: RootSystem, i: int) -> tuple[tuple[int, ...], ...]:
    # s_i(omega_j) = omega_j - delta_ij alpha_i ; alpha_i in weight coords = column i of cartan^T
    r = rs.rank
    alpha_w = rs.root_in_weights(tuple(int(k == i) for k in range(r)))
    cols = []
    for j in range(r):
        col = [int(k == j) for k in range(r)]
        if j == i:
            col = [col[k] - alpha_w[k] for k in range(r)]
        cols.append(col)
    return tuple(tuple(cols[j][k] for j in range(r)) for k in range(r))


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)) for i in range(n))


def weyl_group(rs: RootSystem) -> list[WeylElement]:
    """All Weyl group elements, identity first, in breadth-first (length) order.

    Words are reduced because BFS reaches each element first along a
    shortest path from the identity.
    """
    if rs._weyl:
        return list(rs._weyl)
    r = rs.rank
    gens = [_reflection_matrix(rs, i) for i in range(r)]
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    elems = [WeylElement((), ident)]
    seen = {ident}
    queue = deque(elems)
    while queue:
        w = queue.popleft()
        for i, g in enumerate(gens):
            m = _matmul(w.matrix, g)
            if m not in seen:
                seen.add(m)
                nw = WeylElement(w.word + (i,), m)
                elems.append(nw)
                queue.append(nw)
    rs._weyl.extend(elems)
    return list(elems)


def apply_to_root(rs: RootSystem, w: WeylElement, root: Sequence[int]) -> tuple[int, ...]:
    """``w(root)`` in simple-root coordinates."""
    img = w.act(rs.root_in_weights(root))
    out = rs.weights_to_roots(img)
    assert all(x.denominator == 1 for x in out)
    return tuple(int(x) for x in out)


def inversion_set(rs: RootSystem, w: WeylElement) -> frozenset[tuple[int, ...]]:
    """Positive roots sent to negative roots by ``w``."""
    out = set()
    for beta in rs.positive_roots:
        img = apply_to_root(rs, w, beta)
        if all(x <= 0 for x in img):
            out.add(beta)
    return frozenset(out)


def pairing(rs: RootSystem, lam: Sequence, coroot: Sequence):
    """``<lam, coroot>`` with ``lam`` in weight and ``coroot`` in coroot coordinates.

    Exact whenever the inputs are; complex entries are allowed in ``lam``.
    """
    if len(lam) != rs.rank or len(coroot) != rs.rank:
        raise ValueError(f"dimension mismatch: rank {rs.rank}, got {len(lam)} and {len(coroot)}")
    return sum(a * b for a, b in zip(lam, coroot))


def longest_element(rs: RootSystem) -> WeylElement:
    return max(weyl_group(rs), key=lambda w: w.length)


def dump(label: str) -> str:
    """JSON debug dump of the root data for ``label``."""
    return json.dumps(build_root_system(label).to_dict(), indent=2)
