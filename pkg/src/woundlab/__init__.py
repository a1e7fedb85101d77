"""Wound unipotent groups of dimension one over function fields of positive characteristic.

Russell equations, their genus, classification and compactification; the
group law of the quasi-rational group; normal forms of local torsor classes;
and the Hasse-Witt style stable rank computing H^1 with G coefficients.
"""

from .field_core import GF, FieldElement, FieldSpec, FieldTower, LaurentSeries, RatFunc
from .grouplaw import ParamPoint, QRGroup
from .hassewitt import BinaryForm, SemilinearMatrix, build_matrix, cohomology_report, iterate_oracle, stable_rank
from .ppoly import (PPolynomial, RussellEquation, classify, compactify, dehomogenize, genus, is_wound,
                    principal_part, splitting_degree)
from .torsor_local import LocalRussell, NormalForm, TorsorClass, is_trivial, reduce, replay

__version__ = "0.1.0"

__all__ = [
    "GF", "FieldElement", "FieldSpec", "FieldTower", "LaurentSeries", "RatFunc", "ParamPoint", "QRGroup",
    "BinaryForm", "SemilinearMatrix", "build_matrix", "cohomology_report", "iterate_oracle", "stable_rank",
    "PPolynomial", "RussellEquation", "classify", "compactify", "dehomogenize", "genus", "is_wound",
    "principal_part", "splitting_degree", "LocalRussell", "NormalForm", "TorsorClass", "is_trivial",
    "reduce", "replay",
]
