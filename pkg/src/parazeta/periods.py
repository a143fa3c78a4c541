"""Weyl-group periods, their iterated residues, and the abelian (G, P) zetas.

The period of a root system is

    omega(lam) = sum_w 1 / prod_{a simple} <w lam - rho, a^vee>
                     * prod_{b > 0, w b < 0} xi(<lam, b^vee>) / xi(<lam, b^vee> + 1)

written here in the coordinates ``lam = rho + sum_a t_a omega_a``.  Taking
residues at ``t_a = 0`` for every simple root except the one attached to the
maximal parabolic leaves a meromorphic function of ``s = t_{a_P}``; an affine
change of variable and a few clearing xi-factors turn it into a function with
the symmetry f(sigma) = f(1 - sigma).
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .rootdata import RootSystem, WeylElement, build_root_system, inversion_set, weyl_group
from .specfun import PoleError, xi_unchecked, xi_zero_ordinates

__all__ = [
    "AffineForm",
    "PeriodTerm",
    "PeriodFunction",
    "NormSpec",
    "ZetaSpec",
    "FEReport",
    "ZeroReport",
    "ResidueEngine",
    "PRESETS",
    "ResidueInstabilityError",
    "ResidueOrderError",
    "CalibrationError",
    "build_period_terms",
    "eval_period",
    "iterated_residue",
    "calibrate_normalization",
    "eval_zeta_GP",
    "fe_check",
    "find_zeros",
    "calibrate_spec",
    "load_preset",
    "clearing_candidates",
    "set_threads",
]


class ResidueInstabilityError(ArithmeticError):
    """Nested contour average did not converge under node doubling."""


class ResidueOrderError(ArithmeticError):
    """Residue changed under radius halving: another singularity is inside the torus."""


class CalibrationError(RuntimeError):
    """No normalization in the search space makes the functional equation hold."""


@dataclass(frozen=True)
class AffineForm:
    """``constant + sum_i coefficients[i] * t_i`` with rational data."""

    constant: Fraction
    coefficients: tuple[Fraction, ...]

    def __call__(self, t: Sequence):
        return self.constant + sum(c * x for c, x in zip(self.coefficients, t))

    def __str__(self):
        parts = [str(self.constant)] if self.constant else []
        for i, c in enumerate(self.coefficients):
            if c:
                parts.append(f"{c}*t{i + 1}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class PeriodTerm:
    w: WeylElement
    denominator_forms: tuple[AffineForm, ...]
    xi_numerator_args: tuple[AffineForm, ...]
    xi_denominator_args: tuple[AffineForm, ...]
    scalar: int = 1


def build_period_terms(rs: RootSystem) -> list[PeriodTerm]:
    """One :class:`PeriodTerm` per Weyl element, in :func:`weyl_group` order."""
    r = rs.rank
    one = Fraction(1)
    terms = []
    for w in weyl_group(rs):
        # <w lam - rho, a_i^vee> = sum_j M_ij (1 + t_j) - 1
        dens = tuple(
            AffineForm(sum((Fraction(x) for x in w.matrix[i]), Fraction(0)) - one,
                       tuple(Fraction(x) for x in w.matrix[i]))
            for i in range(r)
        )
        inv = inversion_set(rs, w)
        num, den = [], []
        for beta, cor in zip(rs.positive_roots, rs.coroots):
            if beta not in inv:
                continue
            height = sum(cor, Fraction(0))
            num.append(AffineForm(height, tuple(cor)))
            den.append(AffineForm(height + 1, tuple(cor)))
        terms.append(PeriodTerm(w, dens, tuple(num), tuple(den)))
    return terms


class PeriodFunction:
    """Vectorised evaluator for a list of period terms.

    All xi-arguments are ``<lam, b^vee>`` or ``<lam, b^vee> + 1`` over a shared
    list of forms, so each point costs one xi evaluation per distinct form
    no matter how many Weyl terms reference it.
    """

    def __init__(self, terms: Sequence[PeriodTerm], rank: int | None = None):
        if not terms:
            raise ValueError("no period terms")
        self.terms = list(terms)
        self.rank = rank if rank is not None else len(self.terms[0].denominator_forms[0].coefficients)
        forms: dict[AffineForm, int] = {}

        def idx(f):
            return forms.setdefault(f, len(forms))

        nt = len(self.terms)
        self._num_idx = [[idx(f) for f in t.xi_numerator_args] for t in self.terms]
        self._den_idx = [[idx(f) for f in t.xi_denominator_args] for t in self.terms]
        self.forms = list(forms)
        nf = len(self.forms)
        self.form_const = np.array([float(f.constant) for f in self.forms])
        self.form_coef = np.array([[float(c) for c in f.coefficients] for f in self.forms]).reshape(nf, self.rank)
        # exponent of xi(form k) in term j
        self.expo = np.zeros((nt, nf))
        for j in range(nt):
            for k in self._num_idx[j]:
                self.expo[j, k] += 1
            for k in self._den_idx[j]:
                self.expo[j, k] -= 1
        ndens = max(len(t.denominator_forms) for t in self.terms)
        self.den_const = np.zeros((nt, ndens))
        self.den_coef = np.zeros((nt, ndens, self.rank))
        for j, t in enumerate(self.terms):
            for i, f in enumerate(t.denominator_forms):
                self.den_const[j, i] = float(f.constant)
                self.den_coef[j, i] = [float(c) for c in f.coefficients]
            for i in range(len(t.denominator_forms), ndens):
                self.den_const[j, i] = 1.0
        self.scalar = np.array([float(t.scalar) for t in self.terms])

    def term_values(self, t: np.ndarray) -> np.ndarray:
        """Per-term values at points ``t`` of shape (npts, rank) -> (npts, nterms)."""
        t = np.asarray(t, dtype=complex).reshape(-1, self.rank)
        npts = t.shape[0]
        out = np.broadcast_to(self.scalar, (npts, len(self.terms))).astype(complex)
        dens = self.den_const[None] + np.einsum("jir,pr->pji", self.den_coef, t)
        out /= dens.prod(axis=2)
        if self.forms:
            args = self.form_const[None] + t @ self.form_coef.T
            # prod_k xi_k^expo[j, k] as one matrix product of logarithms
            logxi = np.log(xi_unchecked(args))
            out *= np.exp(logxi @ self.expo.T)
        return out

    def __call__(self, t: np.ndarray) -> np.ndarray:
        return self.term_values(t).sum(axis=1)

    def check_point(self, t: Sequence) -> None:
        """Raise :class:`PoleError` naming the offending form if ``t`` is singular."""
        t = np.asarray(t, dtype=complex)
        for j, term in enumerate(self.terms):
            for f in term.denominator_forms:
                if abs(f(t)) < 1e-14:
                    raise PoleError(f"denominator form {f} of term {j} (w={term.w.word}) vanishes")
            for f in term.xi_numerator_args + term.xi_denominator_args:
                v = f(t)
                if abs(v) < 1e-14 or abs(v - 1) < 1e-14:
                    raise PoleError(f"xi argument {f} of term {j} (w={term.w.word}) hits a pole")


def eval_period(terms: Sequence[PeriodTerm] | PeriodFunction, t: Sequence) -> complex:
    """Value of the period at a single point ``t`` (complex vector)."""
    fn = terms if isinstance(terms, PeriodFunction) else PeriodFunction(terms)
    fn.check_point(t)
    return complex(fn(np.asarray(t, dtype=complex)[None])[0])


# ---------------------------------------------------------------------------
# Specs and presets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormSpec:
    """``f(sigma) = constant * prod xi(p sigma + q) * R(a sigma + b)``."""

    a: float
    b: float
    clearing: tuple[tuple[float, float], ...] = ()
    constant: complex = 1.0

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("NormSpec.a must be non-zero")

    def to_dict(self) -> dict:
        c = complex(self.constant)
        return {"a": self.a, "b": self.b, "clearing": [list(x) for x in self.clearing],
                "constant": [c.real, c.imag]}

    @classmethod
    def from_dict(cls, d: dict) -> "NormSpec":
        const = d.get("constant", 1.0)
        if isinstance(const, (list, tuple)):
            const = complex(const[0], const[1])
        return cls(float(d["a"]), float(d["b"]),
                   tuple((float(p), float(q)) for p, q in d.get("clearing", ())), complex(const))


@dataclass(frozen=True)
class ZetaSpec:
    """Everything needed to evaluate one abelian zeta.

    ``alpha_p`` and ``order`` are 0-based simple-root indices; ``order`` lists
    the residue variables from the outermost integral to the innermost and
    ``radii`` gives the (maximal) circle radius for each of them.
    """

    group: str
    alpha_p: int
    order: tuple[int, ...]
    radii: tuple[float, ...]
    norm: NormSpec = NormSpec(1.0, 0.0)
    name: str = ""

    def __post_init__(self):
        rs = build_root_system(self.group)
        if not 0 <= self.alpha_p < rs.rank:
            raise ValueError(f"alpha_p={self.alpha_p} out of range for rank {rs.rank}")
        rest = sorted(i for i in range(rs.rank) if i != self.alpha_p)
        if sorted(self.order) != rest:
            raise ValueError(f"order {self.order} is not a permutation of {rest}")
        if len(self.radii) != len(self.order):
            raise ValueError("one radius per residue variable is required")
        if any(r <= 0 for r in self.radii) or any(x <= y for x, y in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be positive and strictly decreasing")

    def to_dict(self) -> dict:
        return {"name": self.name, "group": self.group, "alpha_p": self.alpha_p,
                "order": list(self.order), "radii": list(self.radii), "norm": self.norm.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ZetaSpec":
        return cls(group=d["group"], alpha_p=int(d["alpha_p"]), order=tuple(int(i) for i in d["order"]),
                   radii=tuple(float(r) for r in d["radii"]), norm=NormSpec.from_dict(d["norm"]),
                   name=d.get("name", ""))

    @classmethod
    def from_json(cls, text: str) -> "ZetaSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def default(cls, group: str, alpha_p: int, name: str = "") -> "ZetaSpec":
        rank = build_root_system(group).rank
        order = tuple(i for i in range(rank) if i != alpha_p)
        return cls(group, alpha_p, order, tuple(0.1 * 3.0 ** -k for k in range(len(order))), name=name)


# (Cartan label, 0-based alpha_P).  SL_n maximal parabolic P_{k, n-k} drops
# alpha_k; for Sp4 and G2, P_long keeps the long simple root.
PRESETS: dict[str, tuple[str, int]] = {
    "SL2/P11": ("A1", 0),
    "SL3/P21": ("A2", 1),
    "SL3/P12": ("A2", 0),
    "SL4/P31": ("A3", 2),
    "SL4/P22": ("A3", 1),
    "SL4/P13": ("A3", 0),
    "SL5/P41": ("A4", 3),
    "SL5/P32": ("A4", 2),
    "SL5/P23": ("A4", 1),
    "SL5/P14": ("A4", 0),
    "Sp4/P_long": ("C2", 1),
    "Sp4/P_short": ("C2", 0),
    "G2/P_long": ("G2", 1),
    "G2/P_short": ("G2", 0),
}

_GROUP_ALIASES = {"SL2": "A1", "SL3": "A2", "SL4": "A3", "SL5": "A4", "SP4": "C2", "G2": "G2"}


def preset_name(group: str, parabolic: str) -> str:
    """Canonical preset key for CLI-style ``--group SL3 --parabolic P21``."""
    g = group.upper()
    for key in PRESETS:
        kg, kp = key.split("/")
        if kg.upper() == g and kp.upper() == parabolic.upper():
            return key
    raise KeyError(f"no preset for group {group!r} and parabolic {parabolic!r}; known: {sorted(PRESETS)}")


def load_preset(name: str) -> ZetaSpec:
    """Shipped calibrated spec for a preset name such as ``"G2/P_long"``."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
    fname = name.replace("/", "_") + ".json"
    text = resources.files("parazeta").joinpath("data", "presets", fname).read_text()
    return ZetaSpec.from_json(text)


# ---------------------------------------------------------------------------
# Iterated residues
# ---------------------------------------------------------------------------

_THREADS = 1
_CHUNK = 4096


def set_threads(n: int) -> None:
    """Number of worker threads for contour-node evaluation (results do not depend on it)."""
    global _THREADS
    if n < 1:
        raise ValueError("threads must be >= 1")
    _THREADS = int(n)


class ResidueEngine:
    """Nested contour averages of a period function around the residue hyperplanes.

    Near the origin of the residue variables every singular locus of the
    period other than the coordinate hyperplanes stays at positive distance,
    so the iterated residue equals a single Laurent coefficient, i.e. the
    torus mean of ``f * prod t``.  For each ``s`` the radii are shrunk so
    that every other singular locus (vanishing linear forms, xi poles in the
    numerators, xi zeros in the denominators) stays at least
    ``SAFETY`` times the polydisc size away; trapezoid errors then decay like
    ``SAFETY ** -N``.
    """

    SAFETY = 4.0
    NODES = (6, 12, 24, 48, 96, 192)
    MAX_POINTS = 2 ** 18
    MIN_RADIUS = 1e-7

    def __init__(self, fn: PeriodFunction, alpha_p: int, order: Sequence[int], radii: Sequence[float]):
        self.fn = fn
        self.alpha_p = alpha_p
        self.order = tuple(order)
        self.radii = np.asarray(radii, dtype=float)
        zero_kind, xi_kind = [], []
        for term in fn.terms:
            for f in term.denominator_forms:
                zero_kind.append((f.constant, tuple(f.coefficients)))
            for f in term.xi_numerator_args:
                zero_kind.append((f.constant, tuple(f.coefficients)))
                zero_kind.append((f.constant - 1, tuple(f.coefficients)))
            for f in term.xi_denominator_args:
                xi_kind.append((f.constant, tuple(f.coefficients)))
        self._zero = self._pack(sorted(set(zero_kind)))
        self._xi = self._pack(sorted(set(xi_kind)))

    def _pack(self, forms):
        const = np.array([float(c) for c, _ in forms])
        s_coef = np.array([float(v[self.alpha_p]) for _, v in forms])
        res = np.array([[float(v[i]) for i in self.order] for _, v in forms]).reshape(len(forms), len(self.order))
        exact = np.array([c == 0 and v[self.alpha_p] == 0 for c, v in forms], dtype=bool)
        return const, s_coef, res, exact

    def scale(self, s: complex) -> float:
        """Radius multiplier keeping other singular loci outside the polydisc."""
        lam = 1.0
        const, s_coef, res, exact = self._zero
        if const.size:
            c = const + s_coef * s
            rho = np.abs(res) @ self.radii
            moving = rho > 0
            coord = (np.count_nonzero(res, axis=1) == 1) & exact
            if np.any(~moving & (np.abs(c) < 1e-12)):
                raise PoleError(f"s={s} lies on a singular hyperplane of the restricted period")
            bad = moving & exact & ~coord
            if np.any(bad):
                raise ResidueOrderError("a non-coordinate singular hyperplane passes through the origin")
            keep = moving & ~coord
            if np.any(keep):
                lam = min(lam, float(np.min(np.abs(c[keep]) / (self.SAFETY * rho[keep]))))
        const, s_coef, res, _ = self._xi
        if const.size:
            c = const + s_coef * s
            rho = np.abs(res) @ self.radii
            keep = rho > 0
            if np.any(keep):
                height = float(np.max(np.abs(c[keep].imag) + rho[keep])) + 2.0
                gammas = xi_zero_ordinates(height)
                if gammas.size:
                    zeros = np.concatenate([0.5 + 1j * gammas, 0.5 - 1j * gammas])
                    dist = np.min(np.abs(c[keep][:, None] - zeros[None, :]), axis=1)
                    lam = min(lam, float(np.min(dist / (self.SAFETY * rho[keep]))))
        if lam * float(self.radii.min(initial=1.0)) < self.MIN_RADIUS:
            raise PoleError(f"s={s} is too close to a singular locus of the restricted period")
        return lam

    def _torus_mean(self, s: complex, radii: np.ndarray, n: int) -> tuple[complex, float]:
        d = len(self.order)
        theta = 2 * np.pi * (np.arange(n) + 0.5) / n
        unit = np.exp(1j * theta)
        grids = np.meshgrid(*([unit] * d), indexing="ij")
        u = np.stack([g.ravel() for g in grids], axis=1)
        pts = np.empty((u.shape[0], self.fn.rank), dtype=complex)
        pts[:, self.alpha_p] = s
        for k, i in enumerate(self.order):
            pts[:, i] = radii[k] * u[:, k]
        weight = np.prod(radii[None, :] * u, axis=1)
        chunks = [slice(i, i + _CHUNK) for i in range(0, pts.shape[0], _CHUNK)]

        def work(sl):
            # magnitude is summed per Weyl term: the terms can cancel heavily
            vals = self.fn.term_values(pts[sl]) * weight[sl, None]
            return vals.sum(), np.abs(vals).sum()

        if _THREADS > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(_THREADS) as ex:
                parts = list(ex.map(work, chunks))
        else:
            parts = [work(c) for c in chunks]
        total = sum(p[0] for p in parts)
        mag = sum(p[1] for p in parts)
        return complex(total) / pts.shape[0], float(mag) / pts.shape[0]

    def _converged(self, s: complex, radii: np.ndarray, rtol: float) -> tuple[complex, float]:
        prev = None
        d = len(self.order)
        nodes = [n for n in self.NODES if n ** d <= self.MAX_POINTS]
        for n in nodes:
            val, mag = self._torus_mean(s, radii, n)
            if prev is not None and abs(val - prev) <= rtol * abs(val) + 1e-12 * mag:
                return val, mag
            prev = val
        raise ResidueInstabilityError(
            f"contour average at s={s} not converged after {nodes[-1]} nodes per circle "
            f"(last change {abs(val - prev):.3e}, value {val:.6e})"
        )

    def __call__(self, s: complex, rtol: float = 1e-9, validate: bool = True) -> complex:
        s = complex(s)
        if not self.order:
            pt = np.array([[s]])
            self.fn.check_point(pt[0])
            return complex(self.fn(pt)[0])
        radii = self.radii * self.scale(s)
        val, mag = self._converged(s, radii, rtol)
        if validate:
            half, _ = self._converged(s, radii / 2, rtol)
            if abs(half - val) > 1e-6 * max(abs(val), abs(half)) + 1e-10 * mag:
                raise ResidueOrderError(
                    f"residue at s={s} changed under radius halving: {val} vs {half}"
                )
        return val


@functools.lru_cache(maxsize=64)
def _engine(group: str, alpha_p: int, order: tuple, radii: tuple) -> ResidueEngine:
    rs = build_root_system(group)
    return ResidueEngine(PeriodFunction(build_period_terms(rs), rs.rank), alpha_p, order, radii)


def _engine_for(spec: ZetaSpec) -> ResidueEngine:
    return _engine(spec.group, spec.alpha_p, spec.order, spec.radii)


def iterated_residue(terms, spec: ZetaSpec, s: complex, validate: bool = True) -> complex:
    """Raw restricted function R(s): iterated residue of the period at ``t_{alpha_P} = s``.

    ``terms`` may be a list of :class:`PeriodTerm` (any rational function of
    that shape, not only a Weyl period), a :class:`PeriodFunction`, or
    ``None`` to use the period of ``spec.group``.
    """
    if terms is None:
        engine = _engine_for(spec)
    else:
        fn = terms if isinstance(terms, PeriodFunction) else PeriodFunction(terms)
        engine = ResidueEngine(fn, spec.alpha_p, spec.order, spec.radii)
    return engine(s, validate=validate)


def raw_zeta(spec: ZetaSpec, s: complex, validate: bool = True) -> complex:
    """R(s) for the period of ``spec.group``."""
    return _engine_for(spec)(s, validate=validate)


def _normalized(norm: NormSpec, raw: Callable[[complex], complex], sigma: complex) -> complex:
    sigma = complex(sigma)
    factor = complex(norm.constant)
    if norm.clearing:
        args = np.array([p * sigma + q for p, q in norm.clearing])
        if np.any(np.abs(args) < 1e-14) or np.any(np.abs(args - 1) < 1e-14):
            raise PoleError(f"clearing factor hits a pole of xi at sigma={sigma}")
        factor *= complex(np.prod(xi_unchecked(args)))
    return factor * raw(norm.a * sigma + norm.b)


def eval_zeta_GP(spec: ZetaSpec, sigma: complex, validate: bool = True) -> complex:
    """Normalized abelian zeta ``constant * prod xi(p sigma + q) * R(a sigma + b)``."""
    engine = _engine_for(spec)
    return _normalized(spec.norm, lambda s: engine(s, validate=validate), sigma)


# ---------------------------------------------------------------------------
# Calibration
# ---------------------------------------------------------------------------

def clearing_candidates(rs: RootSystem, alpha_p: int) -> list[tuple[int, int]]:
    """Clearing factors xi(c s + k) that the restricted period can carry in denominators.

    After all residue variables are set to zero, a denominator argument
    ``<lam, b^vee> + 1`` becomes ``c s + ht(b^vee) + 1`` with ``c`` the
    ``alpha_P`` coefficient of the coroot.
    """
    out = set()
    for cor in rs.coroots:
        c = cor[alpha_p]
        if c >= 1:
            out.add((int(c), int(sum(cor)) + 1))
    return sorted(out)


def _sample_sigmas(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(-0.3, 0.45, n) + 1j * rng.uniform(0.3, 2.5, n)


def _fe_deviation(g: Callable[[complex], complex], sigmas) -> tuple[np.ndarray, np.ndarray]:
    absdev, reldev = [], []
    for z in sigmas:
        u, v = g(z), g(1 - z)
        absdev.append(abs(u - v))
        reldev.append(abs(u - v) / max(abs(u), abs(v), 1e-300))
    return np.array(absdev), np.array(reldev)


def calibrate_normalization(raw: Callable[[complex], complex],
                            candidates: Sequence[tuple[float, float]] = (),
                            centers: Sequence[float] | None = None,
                            n_search: int = 4,
                            n_verify: int = 20,
                            seed: int = 0,
                            subset_tol: float = 1e-7,
                            fail_tol: float = 1e-4) -> tuple[NormSpec, float]:
    """Find an affine variable change and clearing xi-factors giving f(sigma) = f(1 - sigma).

    ``raw`` is a function of the raw variable ``s``; ``candidates`` are
    clearing factors ``xi(c s + k)`` given as ``(c, k)``.  A reflection
    ``s -> c0 - s`` is searched over ``centers`` together with every subset
    of candidates; the smallest subset reaching ``subset_tol`` wins, and
    ``c0`` is polished by a bounded scalar search.  The centre fixes the
    change of variable up to scale; we take ``a = |c0|`` (or 1 when
    ``c0 = 0``), ``b = (c0 - a) / 2`` and constant ``a``.

    Returns the NormSpec and the maximal relative FE deviation over
    ``n_verify`` random points.
    """
    if centers is None:
        centers = np.arange(-12.0, 12.01, 0.5)
    rng = np.random.default_rng(seed)
    pts: list[complex] = []
    base: list[complex] = []
    while len(pts) < n_search:
        z = complex(rng.uniform(-1.0, 1.0) + 1j * rng.uniform(0.3, 1.5))
        try:
            v = raw(z)
        except (PoleError, ArithmeticError):
            continue
        pts.append(z)
        base.append(v)
    pts_arr = np.array(pts)
    base_arr = np.array(base)
    cands = [tuple(c) for c in candidates]
    subsets = [sub for r in range(len(cands) + 1) for sub in itertools.combinations(cands, r)]

    def clearing_ratio(c0, sub, m=None):
        z = pts_arr[:m]
        out = np.ones(len(z), dtype=complex)
        for c, k in sub:
            out *= xi_unchecked(c * (c0 - z) + k) / xi_unchecked(c * z + k)
        return out

    def reflected(c0, m=None):
        vals = []
        for z in pts_arr[:m]:
            try:
                vals.append(raw(c0 - z))
            except (PoleError, ArithmeticError):
                return None
        return np.array(vals)

    # screen every centre with one point, then score the survivors on all points
    survivors = []
    for c0 in centers:
        refl = reflected(c0, 1)
        if refl is None:
            continue
        ratio = refl / base_arr[:1]
        devs = [float(np.abs(1 - ratio * clearing_ratio(c0, sub, 1))[0]) for sub in subsets]
        if min(devs) < 1e-3:
            survivors.append(c0)

    best = None  # (size, dev, c0, subset)
    for c0 in survivors:
        refl = reflected(c0)
        if refl is None:
            continue
        ratio = refl / base_arr
        for sub in subsets:
            dev = float(np.max(np.abs(1 - ratio * clearing_ratio(c0, sub))))
            if not np.isfinite(dev):
                continue
            key = (len(sub) if dev < subset_tol else len(cands) + 1, dev)
            if best is None or key < best[:2]:
                best = (*key, float(c0), sub)
    if best is None:
        raise CalibrationError("raw function could not be evaluated at any reflected sample")
    _, dev, c0, sub = best
    if dev >= fail_tol:
        raise CalibrationError(f"best functional-equation deviation {dev:.3e} >= {fail_tol:g} "
                               f"(centre {c0}, clearing {sub})")

    def objective(x):
        refl = reflected(x)
        if refl is None:
            return 1.0
        return float(np.max(np.abs(1 - refl / base_arr * clearing_ratio(x, sub))))

    opt = minimize_scalar(objective, bounds=(c0 - 0.25, c0 + 0.25), method="bounded",
                          options={"xatol": 1e-9})
    if opt.fun < dev and abs(opt.x - c0) > 1e-6:
        c0 = float(opt.x)
    a = abs(c0) if c0 != 0 else 1.0
    b = (c0 - a) / 2
    norm = NormSpec(a, b, tuple((float(c * a), float(c * b + k)) for c, k in sub), complex(a))
    sigmas = _verify_points(lambda z: _normalized(norm, raw, z), seed + 1, n_verify)
    _, rel = _fe_deviation(lambda z: _normalized(norm, raw, z), sigmas)
    return norm, float(rel.max())


def _verify_points(g, seed: int, n: int) -> list[complex]:
    """``n`` random sample points where ``g`` evaluates at both sigma and 1 - sigma."""
    rng = np.random.default_rng(seed)
    out = []
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 50 * n:
            raise CalibrationError("could not find sample points off the singular set")
        z = complex(_sample_sigmas(rng, 1)[0])
        try:
            g(z)
            g(1 - z)
        except (PoleError, ArithmeticError):
            continue
        out.append(z)
    return out


def calibrate_spec(group: str, alpha_p: int, name: str = "", seed: int = 0,
                   order: Sequence[int] | None = None) -> tuple[ZetaSpec, float]:
    """Calibrated :class:`ZetaSpec` for a group and a maximal parabolic."""
    spec = ZetaSpec.default(group, alpha_p, name=name)
    if order is not None:
        spec = ZetaSpec(spec.group, alpha_p, tuple(order), spec.radii, name=name)
    engine = _engine_for(spec)
    rs = build_root_system(group)
    norm, dev = calibrate_normalization(lambda s: engine(s, validate=False),
                                        clearing_candidates(rs, alpha_p), seed=seed)
    return ZetaSpec(spec.group, spec.alpha_p, spec.order, spec.radii, norm, name), dev


# ---------------------------------------------------------------------------
# Functional equation and zeros
# ---------------------------------------------------------------------------

@dataclass
class FEReport:
    spec: dict
    seed: int
    samples: list[complex]
    abs_deviation: list[float]
    rel_deviation: list[float]
    threshold: float

    @property
    def max_rel(self) -> float:
        return max(self.rel_deviation) if self.rel_deviation else 0.0

    @property
    def passed(self) -> bool:
        return self.max_rel <= self.threshold

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "seed": self.seed,
            "threshold": self.threshold,
            "max_rel_deviation": self.max_rel,
            "passed": self.passed,
            "samples": [[z.real, z.imag] for z in self.samples],
            "abs_deviation": self.abs_deviation,
            "rel_deviation": self.rel_deviation,
        }


def fe_check(spec: ZetaSpec, n_samples: int = 20, seed: int = 0, threshold: float = 1e-6) -> FEReport:
    """Relative deviation ``|f(sigma) - f(1 - sigma)| / max|f|`` on random points."""
    g = functools.partial(eval_zeta_GP, spec)
    sigmas = _verify_points(g, seed, n_samples)
    absdev, rel = _fe_deviation(g, sigmas)
    return FEReport(spec.to_dict(), seed, sigmas, absdev.tolist(), rel.tolist(), threshold)


@dataclass
class ZeroReport:
    spec: dict | None
    t_max: float
    t_min: float
    winding_count: int
    zeros: list[complex]
    residuals: list[float]
    offsets: list[float]
    max_imag_ratio: float
    tol: float

    @property
    def located_count(self) -> int:
        return len(self.zeros)

    @property
    def count_matches(self) -> bool:
        return self.winding_count == self.located_count

    @property
    def alarm(self) -> bool:
        """Zero count off the line or missing: the loud failure path."""
        return not self.count_matches or any(o >= self.tol for o in self.offsets)

    @property
    def passed(self) -> bool:
        return not self.alarm

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "winding_count": self.winding_count,
            "located_count": self.located_count,
            "count_matches": self.count_matches,
            "alarm": self.alarm,
            "max_imag_ratio_on_line": self.max_imag_ratio,
            "zeros": [{"re": z.real, "im": z.imag, "residual": r, "offset": o}
                      for z, r, o in zip(self.zeros, self.residuals, self.offsets)],
        }


def winding_number(f: Callable[[complex], complex], corners: Sequence[complex],
                   init_step: float = 0.05, max_turn: float = 0.4, max_depth: int = 30) -> int:
    """Winding number of ``f`` around 0 along the closed polygon ``corners``.

    Each edge is sampled at ``init_step`` and recursively bisected wherever
    the argument jumps by more than ``max_turn`` radians between neighbours.
    """
    total = 0.0

    def walk(z0, f0, z1, f1, depth):
        d = np.angle(f1 / f0)
        if abs(d) <= max_turn or depth >= max_depth:
            if depth >= max_depth and abs(d) > 2.5:
                raise ArithmeticError(f"argument unresolved near {z0}: zero or pole on the contour")
            return d
        zm = 0.5 * (z0 + z1)
        fm = f(zm)
        return walk(z0, f0, zm, fm, depth + 1) + walk(zm, fm, z1, f1, depth + 1)

    pts = list(corners) + [corners[0]]
    for za, zb in zip(pts, pts[1:]):
        n = max(2, int(math.ceil(abs(zb - za) / init_step)))
        zs = [za + (zb - za) * k / n for k in range(n + 1)]
        fs = [f(z) for z in zs]
        for k in range(n):
            total += walk(zs[k], fs[k], zs[k + 1], fs[k + 1], 0)
    return int(round(total / (2 * np.pi)))


def _refine_zero(f, z0: complex, h: float = 1e-5, iters: int = 30) -> complex:
    """Secant iteration in the complex plane, started on the critical line."""
    za, zb = z0, z0 + h
    fa, fb = f(za), f(zb)
    for _ in range(iters):
        if fb == fa:
            break
        zc = zb - fb * (zb - za) / (fb - fa)
        za, fa = zb, fb
        zb, fb = zc, f(zc)
        if abs(zb - za) < 1e-14 * max(1.0, abs(zb)):
            break
    return zb


def find_zeros(target, t_max: float, t_min: float = 0.05, step: float = 0.01, tol: float = 1e-6,
               box_re: tuple[float, float] = (0.0, 1.0)) -> ZeroReport:
    """Count zeros in ``box_re x (t_min, t_max)`` and locate those on the critical line.

    ``target`` is a :class:`ZetaSpec` or any callable of sigma that is real
    on the critical line.  The count comes from the argument principle, the
    locations from sign changes of ``f(1/2 + it)`` refined by Brent's method
    and then by a complex secant step, whose distance from the line is
    reported.
    """
    if isinstance(target, ZetaSpec):
        spec_dict = target.to_dict()
        engine = _engine_for(target)
        norm = target.norm
        f = functools.partial(_normalized, norm, lambda s: engine(s, validate=False))
    else:
        spec_dict = None
        f = target
    x0, x1 = box_re
    corners = [complex(x0, t_min), complex(x1, t_min), complex(x1, t_max), complex(x0, t_max)]
    count = winding_number(f, corners)

    ts = np.arange(t_min, t_max + step / 2, step)
    vals = np.array([f(0.5 + 1j * t) for t in ts])
    mags = np.maximum(np.abs(vals), 1e-300)
    imag_ratio = float(np.max(np.abs(vals.imag) / mags))
    re_vals = vals.real
    zeros, residuals, offsets = [], [], []
    for k in np.nonzero(np.sign(re_vals[:-1]) * np.sign(re_vals[1:]) < 0)[0]:
        t0 = brentq(lambda t: f(0.5 + 1j * t).real, ts[k], ts[k + 1], xtol=1e-13)
        z = _refine_zero(f, complex(0.5, t0))
        if abs(z - complex(0.5, t0)) > 10 * step:
            z = complex(0.5, t0)
        zeros.append(z)
        residuals.append(abs(f(z)))
        offsets.append(abs(z.real - 0.5))
    return ZeroReport(spec_dict, t_max, t_min, count, zeros, residuals, offsets, imag_ratio, tol)
