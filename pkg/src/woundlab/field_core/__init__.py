"""Exact arithmetic over finite fields, F_q[t], F_q(t), F_q(s, t) and F_q((t))."""

from .bivar import BivarPoly, BivarRatFunc
from .gf import FIELD_CEILING, FieldCeilingError, FieldElement, FieldSpec, GF, pth_root
from .laurent import DEFAULT_PREC, LaurentSeries, PrecisionError, hensel_solve, lift_series
from .pbasis import components, is_pth_power, membership_F2_plus_F2a, radical_degree
from .poly import DensePoly, factor, min_root_degree, roots
from .ratfunc import RatFunc
from .tower import Embedding, FieldTower, TowerEvent

__all__ = [
    "BivarPoly", "BivarRatFunc", "FIELD_CEILING", "FieldCeilingError", "FieldElement", "FieldSpec", "GF",
    "pth_root", "DEFAULT_PREC", "LaurentSeries", "PrecisionError", "hensel_solve", "lift_series",
    "components", "is_pth_power", "membership_F2_plus_F2a", "radical_degree", "DensePoly", "factor",
    "min_root_degree", "roots", "RatFunc", "Embedding", "FieldTower", "TowerEvent",
]
