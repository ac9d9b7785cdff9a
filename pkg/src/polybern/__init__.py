"""Symmetrized poly-Bernoulli polynomials and nine combinatorial models of them.

Every model is a finite class of objects with an integer weight; its weight
enumerator equals ``spb_formula(n, k)``.  The package enumerates each class
exhaustively, implements the maps between classes, and checks all of it
with exact integer arithmetic.
"""

from .bijections import (
    MAPS, MODEL_IDS, MODELS, VerifyReport, callan_to_tableau, model_polynomial,
    verify_all, verify_map,
)
from .callan import CallanPerm, Token, blue, red
from .errors import DomainError, OrderMismatchError, PolyBernError, UnknownModelError, ValidationError
from .exactnum import BiSeries, Poly, RatPoly
from .excedance import ExcPerm
from .oracle import egf_check, spb_formula, spb_recurrence, stirling2
from .tableaux import AltTableau, PackedTableau
from .trees import DoubleTree

__version__ = "0.1.0"

__all__ = [
    "AltTableau", "BiSeries", "CallanPerm", "DomainError", "DoubleTree", "ExcPerm", "MAPS",
    "MODELS", "MODEL_IDS", "OrderMismatchError", "PackedTableau", "Poly", "PolyBernError",
    "RatPoly", "Token", "UnknownModelError", "ValidationError", "VerifyReport", "blue",
    "callan_to_tableau", "egf_check", "model_polynomial", "red", "spb_formula",
    "spb_recurrence", "stirling2", "verify_all", "verify_map",
]
