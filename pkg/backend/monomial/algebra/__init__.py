"""
Algebra Package

Finite fields, the group Z_p^d and its group algebra.
"""

from .field import ExtField, PrimeModulus, QuotientRing, ext_field_make, is_prime, prime_field
from .group import GroupVector, group_vec_mul, group_vec_pow, linearly_independent, rank_mod_p
from .group_algebra import (
    GroupAlgebraElement,
    SurvivalExpansion,
    ga_add,
    ga_mul,
    ga_pow,
    ga_scale,
    substitution_element,
    survival_expand,
)
from .linalg import matrix_rank_mod_p, row_reduce_mod_p

__all__ = [
    "ExtField",
    "PrimeModulus",
    "QuotientRing",
    "ext_field_make",
    "is_prime",
    "prime_field",
    "GroupVector",
    "group_vec_mul",
    "group_vec_pow",
    "linearly_independent",
    "rank_mod_p",
    "GroupAlgebraElement",
    "SurvivalExpansion",
    "ga_add",
    "ga_mul",
    "ga_pow",
    "ga_scale",
    "substitution_element",
    "survival_expand",
    "matrix_rank_mod_p",
    "row_reduce_mod_p",
]
