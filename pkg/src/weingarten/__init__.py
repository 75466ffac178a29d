"""Exact symplectic Weingarten calculus."""

from .gram import GramMatrix, gram, join_lambda, orthogonal_gram_entry, pairings_of_degree, symplectic_gram_entry
from .linalg import inverse_matrix, solve_consistent
from .scalars import N, ScalarField, coefficients, evaluate_at, format_scalar, simplify, to_fraction
from .series import catalan_asymptote, orthogonal_relation_check, orthogonal_table, weingarten_series_check
from .table import (
    CONVENTION,
    WeingartenTable,
    class_residuals,
    class_structure,
    haar_weight,
    normalized,
    weingarten_table,
    wg_normalized,
)

__all__ = [
    "CONVENTION",
    "GramMatrix",
    "N",
    "ScalarField",
    "WeingartenTable",
    "catalan_asymptote",
    "class_residuals",
    "class_structure",
    "coefficients",
    "evaluate_at",
    "format_scalar",
    "gram",
    "haar_weight",
    "inverse_matrix",
    "join_lambda",
    "normalized",
    "orthogonal_gram_entry",
    "orthogonal_relation_check",
    "orthogonal_table",
    "pairings_of_degree",
    "simplify",
    "solve_consistent",
    "symplectic_gram_entry",
    "to_fraction",
    "wg_normalized",
    "weingarten_table",
]
