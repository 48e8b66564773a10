"""Exact-arithmetic analysis of bivariate integer sextics.

Classifies polynomials by the square-free profile of their leading form,
completes squares down to elliptic-curve shapes, and searches for verified
integer points certifying failure of arithmetic completeness.
"""

from .poly import BivarPoly
from .forms import BinaryForm, decompose, definiteness, squarefree_profile
from .parser import ParseError, parse
from .classify import ClassificationReport, ClassifyError, classify
from .witness import SearchBudgets, Witness, witness_for
from .density import DensityReport, count_range, growth_exponent, landau_baseline
from .eclab import (
    CurvePoint,
    EllipticCurve,
    danilov_family,
    ec_add,
    ec_mul,
    hall_scan,
    pell_solve,
    rouse_family,
)

__version__ = "0.1.0"

__all__ = [
    "BivarPoly",
    "BinaryForm",
    "decompose",
    "definiteness",
    "squarefree_profile",
    "ParseError",
    "parse",
    "ClassificationReport",
    "ClassifyError",
    "classify",
    "SearchBudgets",
    "Witness",
    "witness_for",
    "DensityReport",
    "count_range",
    "growth_exponent",
    "landau_baseline",
    "CurvePoint",
    "EllipticCurve",
    "danilov_family",
    "ec_add",
    "ec_mul",
    "hall_scan",
    "pell_solve",
    "rouse_family",
    "__version__",
]
