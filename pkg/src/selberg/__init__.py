"""Exact evaluation of int_{S_n} (prod x_i)^p prod_{i<j} (x_i^2 - x_j^2)^d dx.

Four independent routes: a signed permutation sum (even d), a Jack-polynomial
expansion with a closed form in p, a dimension-reduction recursion, and
brute-force polynomial integration used as the reference.
"""
from .errors import (ConsistencyError, DomainError, ResourceLimitError, SelbergError,
                     UnsupportedParameterError)
from .exact import ClosedForm, GammaValue, HalfInt, UniPoly
from .jackeval import closed_form, theorem2_eval
from .oracle import oracle_I, oracle_J
from .perm import phi_det_d2, phi_eq21, theorem1_eval
from .recursion import eval_I_via_recursion, recursion_eval
from .symfunc import Partition, SymPoly, jack, monomial, schur

__version__ = "0.1.0"

__all__ = [
    "ClosedForm", "ConsistencyError", "DomainError", "GammaValue", "HalfInt", "Partition",
    "ResourceLimitError", "SelbergError", "SymPoly", "UniPoly", "UnsupportedParameterError",
    "closed_form", "eval_I_via_recursion", "jack", "monomial", "oracle_I", "oracle_J",
    "phi_det_d2", "phi_eq21", "recursion_eval", "schur", "theorem1_eval", "theorem2_eval",
]
