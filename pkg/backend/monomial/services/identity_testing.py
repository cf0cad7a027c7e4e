"""
Identity Testing Module

One-sided tests of whether the tag polynomials f_j of a substituted circuit
vanish identically.

Key Features:
- Shared substituted evaluation over (coefficient ring)[Z_p^d], optionally
  graded by x-degree
- identity_test_eval: random tags from GF(p^l), one evaluation pass
- identity_test_modpoly: Kronecker substitution of the tags into Z_p[y] and
  evaluation modulo a random monic polynomial
"""

from math import ceil, log2
from typing import Optional, Sequence

import numpy as np

from ..algebra.field import ExtField, QuotientRing, as_prime, random_monic
from ..algebra.group_algebra import GroupAlgebraElement
from ..circuit.evaluator import GradedRing, GroupAlgebraRing, eval_augmented
from ..circuit.expansion import degree_bound, y_degree_bound
from ..circuit.models import AugmentedCircuit
from ..utils.errors import ConfigurationError, UsageError
from ..utils.logger import tester_logger as logger


def tag_degree_bound(ac: AugmentedCircuit, degree: Optional[int] = None) -> int:
    """Total degree bound of the f_j in the tag variables"""
    if ac.sites == "input":
        return degree if degree is not None else degree_bound(ac.base)
    return y_degree_bound(ac)


def tag_individual_degree(ac: AugmentedCircuit, p: int) -> int:
    """
    Bound on the degree of any single tag in the f_j.

    Input tags follow the exponents of surviving monomials (< p); a Mul tag
    appears at most once per parse tree of a formula.
    """
    if ac.sites == "input":
        return p - 1
    if ac.base.is_formula:
        return 1
    return max(y_degree_bound(ac), 1)


def evaluate_substituted(ac: AugmentedCircuit, subs: Sequence[GroupAlgebraElement], tags: Sequence,
                         coeff_ring: QuotientRing, degree: Optional[int] = None,
                         engine: str = "auto") -> GroupAlgebraElement:
    """
    Evaluate C' with x_i -> subs[i] and y_t -> tags[t] over coeff_ring[Z_p^d].

    With a degree, inputs enter at grade 1 and the grade-`degree` component is
    returned.
    """
    if len(subs) < ac.base.n:
        raise UsageError(f"{len(subs)} substitutions for {ac.base.n} variables")
    if not subs:
        p, dim = coeff_ring.p, 1
    else:
        p, dim = subs[0].p, subs[0].dim
    lifted = [s if s.ring == coeff_ring else s.embed(coeff_ring) for s in subs]
    ga_ring = GroupAlgebraRing(p, dim, coeff_ring, engine)
    if degree is None:
        return eval_augmented(ac, lifted, tags, ga_ring)
    graded = GradedRing(ga_ring, degree)
    value = eval_augmented(ac, [graded.lift(s, 1) for s in lifted], tags, graded)
    return graded.component(value, degree)


def identity_test_eval(ac: AugmentedCircuit, subs: Sequence[GroupAlgebraElement], field: ExtField,
                       rng: np.random.Generator, degree: Optional[int] = None,
                       engine: str = "auto") -> bool:
    """
    Random-evaluation identity test over GF(p^l).

    Returns:
        True iff the evaluated element has a nonzero coefficient; never True
        when every f_j is identically zero

    Raises:
        ConfigurationError: if p^l < 4 * (tag degree bound + 1)
    """
    bound = tag_degree_bound(ac, degree)
    if field.order < 4 * (bound + 1):
        raise ConfigurationError(
            f"GF({field.p}^{field.ell}) has {field.order} elements; need at least {4 * (bound + 1)}")
    tags = [field.random(rng) for _ in range(ac.h)]
    value = evaluate_substituted(ac, subs, tags, field, degree, engine)
    return not value.is_zero()


def modpoly_degree(ac: AugmentedCircuit, p: int) -> int:
    """Degree of the random modulus used by identity_test_modpoly"""
    h = ac.h
    base = tag_individual_degree(ac, p) + 1
    kronecker_degree = base ** h - 1
    delta = ceil(log2(6 * ac.base.size * (h + 1))) + 1
    while p ** delta <= 6 * kronecker_degree:
        delta += 1
    return delta


def identity_test_modpoly(ac: AugmentedCircuit, subs: Sequence[GroupAlgebraElement], p,
                          rng: np.random.Generator, degree: Optional[int] = None,
                          engine: str = "auto") -> bool:
    """
    Kronecker-substitution identity test.

    y_t -> y^((D+1)^t) with D the per-tag degree bound, then evaluation in
    (Z_p[y] / r(y))[Z_p^d] for a random monic r.
    """
    p = as_prime(p)
    base = tag_individual_degree(ac, p) + 1
    delta = modpoly_degree(ac, p)
    modulus = random_monic(p, delta, rng)
    ring = QuotientRing(p, modulus)
    y = ring.from_poly((0, 1))
    tags = [ring.pow(y, base ** t) for t in range(ac.h)]
    logger.debug(f"modulus-polynomial test: deg r = {delta}, {ac.h} tags, base {base}")
    value = evaluate_substituted(ac, subs, tags, ring, degree, engine)
    return not value.is_zero()
