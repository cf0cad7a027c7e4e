"""Testers and the algorithms they rely on."""

from .abp import Abp, formula_to_abp, noncommutative_expand, rs_identity_test
from .derandomized_tester import dt_mlm
from .identity_testing import identity_test_eval, identity_test_modpoly
from .perfect_hash import PerfectHashFamily, build_phf
from .randomized_tester import rt_mlm, sample_substitution
from .structured_tester import (
    ProductInstance,
    base_case_sigma2,
    bb_test,
    enum_test,
    enumerate_selections,
    narrow_test,
    pi_sigma_test,
)

__all__ = [
    "Abp",
    "formula_to_abp",
    "noncommutative_expand",
    "rs_identity_test",
    "dt_mlm",
    "identity_test_eval",
    "identity_test_modpoly",
    "PerfectHashFamily",
    "build_phf",
    "rt_mlm",
    "sample_substitution",
    "ProductInstance",
    "base_case_sigma2",
    "bb_test",
    "enum_test",
    "enumerate_selections",
    "narrow_test",
    "pi_sigma_test",
]
