"""First-order formulas over groups: syntax, parsing, evaluation, builders."""

from .builders import (
    build_phi_defining,
    build_phi_nm,
    build_psi_defining,
    check_phi_nm_lazy,
    check_Tp,
    word_to_term,
)
from .evaluate import EvalResult, definable_set, evaluate
from .parser import parse, parse_term
from .syntax import alpha_equal, canonical, render, render_term

__all__ = [
    "EvalResult",
    "alpha_equal",
    "build_phi_defining",
    "build_phi_nm",
    "build_psi_defining",
    "canonical",
    "check_Tp",
    "check_phi_nm_lazy",
    "definable_set",
    "evaluate",
    "parse",
    "parse_term",
    "render",
    "render_term",
    "word_to_term",
]
