"""Exact polynomial arithmetic, Gröbner bases and the linkage certificates."""

from .groebner import BuchbergerStats, GroebnerBasis, buchberger, is_groebner, normal_form, s_polynomial
from .multipoly import MultiPoly, Ring, VariableMismatchError
from .proofs import (DegenerateEliminationError, Derivation, Model, ProofReport, derive,
                     derive_soliton_constants, model, run_all, variety_points, verify_constant,
                     verify_y1_curvature)

__all__ = ["BuchbergerStats", "DegenerateEliminationError", "Derivation", "GroebnerBasis", "Model",
           "MultiPoly", "ProofReport", "Ring", "VariableMismatchError", "buchberger", "derive",
           "derive_soliton_constants", "is_groebner", "model", "normal_form", "run_all",
           "s_polynomial", "variety_points", "verify_constant", "verify_y1_curvature"]
