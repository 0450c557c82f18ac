"""Defining-function language: expression trees, surface files, jets."""
from .expr import (
    Add, Const, Expr, Im, Mul, Pow, Re, Var, conjugate, derive, evaluate, fold,
    substitute, to_text,
)
from .parser import format_surface, parse_expr, parse_surface
from .surface import JetF, RealnessReport, SurfaceDef, check_real_valued, jet


def wirtinger_derive(e: Expr, index: int, conj: bool = False) -> Expr:
    """Exact d/dz_index (or d/dconj(z_index)) of ``e``, constant-folded."""
    return derive(e, index, conj)


__all__ = [
    "Add", "Const", "Expr", "Im", "Mul", "Pow", "Re", "Var", "conjugate", "derive",
    "wirtinger_derive", "evaluate", "fold", "substitute", "to_text", "format_surface",
    "parse_expr", "parse_surface", "JetF", "RealnessReport", "SurfaceDef",
    "check_real_valued", "jet",
]
