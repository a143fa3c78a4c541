"""Abelian zeta functions of reductive groups from periods, with the rank-2
lattice geometry and truncation combinatorics behind them."""

from .rootdata import ConfigurationError, RootSystem, build_root_system, weyl_group
from .specfun import PoleError, RangeError, completed_xi, zeta_complex
from .periods import (
    NormSpec,
    ZetaSpec,
    PRESETS,
    eval_zeta_GP,
    fe_check,
    find_zeros,
    load_preset,
)
from .eisenstein import epstein_direct, epstein_fourier, rank2_zeta
from .lattice import LatticeBasis, h0, hn_polygon, is_semistable

__all__ = [
    "ConfigurationError", "RootSystem", "build_root_system", "weyl_group",
    "PoleError", "RangeError", "completed_xi", "zeta_complex",
    "NormSpec", "ZetaSpec", "PRESETS", "eval_zeta_GP", "fe_check", "find_zeros", "load_preset",
    "epstein_direct", "epstein_fourier", "rank2_zeta",
    "LatticeBasis", "h0", "hn_polygon", "is_semistable",
]

__version__ = "0.1.0"
