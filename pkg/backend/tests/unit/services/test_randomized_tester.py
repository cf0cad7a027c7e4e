"""
Unit tests for the randomized group-algebra tester and its identity tests.
"""
import pytest

from monomial.algebra.field import ext_field_make, prime_field
from monomial.algebra.group import GroupVector
from monomial.algebra.group_algebra import substitution_element
from monomial.circuit.evaluator import augment_circuit
from monomial.circuit.expansion import degree_bound, expand_oracle, has_p_monomial_oracle
from monomial.circuit.parser import parse_circuit
from monomial.schemas import RtConfig
from monomial.services.corpus import random_circuit, random_formula
from monomial.services.identity_testing import (
    identity_test_eval,
    identity_test_modpoly,
    modpoly_degree,
    tag_degree_bound,
)
from monomial.services.randomized_tester import check_memory, rt_mlm, sample_substitution
from monomial.utils.errors import ConfigurationError, PreconditionError, ResourceLimitError
from monomial.utils.rng import make_rng

X1X2 = "input x1\ninput x2\nmul g3 = g1 g2\noutput g3\n"
X1X1 = "input x1\ninput x1\nmul g3 = g1 g2\noutput g3\n"
SQUARE = "input x1\ninput x2\nadd s = g1 g2\nmul sq = s s\noutput sq\n"


def run(text, p, k, **kwargs):
    kwargs.setdefault("seed", 11)
    return rt_mlm(parse_circuit(text), RtConfig(p=p, k=k, **kwargs))


def test_product_of_two_variables_is_found():
    report = run(X1X2, 2, 2)
    assert report.answer == "yes"
    assert report.witness.startswith("trial ")
    assert report.per_trial[-1].verdict


def test_square_of_a_variable_is_never_found_mod_2():
    report = run(X1X1, 2, 2)
    assert report.answer == "no"
    assert report.trials == 20
    assert not any(o.verdict for o in report.per_trial)


def test_square_of_a_sum_depends_on_p():
    # mod 2 the cross term 2*x1*x2 vanishes and both squares are killed
    assert run(SQUARE, 2, 2).answer == "no"
    assert run(SQUARE, 3, 2).answer == "yes"


@pytest.mark.parametrize("pit", ["eval", "modpoly"])
@pytest.mark.parametrize("tags", ["input", "mul"])
def test_identity_test_variants_agree_on_examples(pit, tags):
    assert run(X1X2, 2, 2, pit=pit, tags=tags).answer == "yes"
    assert run(X1X1, 2, 2, pit=pit, tags=tags).answer == "no"


def test_degree_below_k_is_a_precondition_error():
    with pytest.raises(PreconditionError):
        run(X1X2, 2, 3)


def test_report_records_configuration():
    report = run(X1X2, 3, 2, trials=5)
    assert report.config["seed"] == 11
    assert report.config["d"] == 4
    assert report.config["tags"] == "input"
    assert report.stats["d"] == 4
    assert report.stats["tags"] == 2
    assert report.stats["gates"] == 3


def test_same_seed_gives_identical_canonical_reports():
    first = run(SQUARE, 3, 2, seed=5)
    second = run(SQUARE, 3, 2, seed=5)
    assert first.canonical_json() == second.canonical_json()
    assert [o.seed for o in first.per_trial] == [o.seed for o in second.per_trial]


def test_threads_do_not_change_the_answer():
    sequential = run(X1X1, 2, 2, trials=8)
    threaded = run(X1X1, 2, 2, trials=8, threads=4)
    assert sequential.canonical_json() == threaded.canonical_json().replace(b'"threads": 4', b'"threads": 1')


def test_memory_budget():
    assert check_memory(2, 4, 1, 2) == 3 * 16 * 8 * 3
    with pytest.raises(ResourceLimitError):
        check_memory(3, 20, 1, 5, mem_mb=1)
    with pytest.raises(ResourceLimitError):
        run(X1X2, 3, 2, d=20, mem_mb=1)


def test_sample_substitution(rng):
    cfg = RtConfig(p=3, k=2)
    subs = sample_substitution(5, cfg, rng)
    assert len(subs) == 5
    for s in subs:
        support = s.support()
        assert len(support) == 2
        assert support[GroupVector.zero(3, cfg.d)] == (1,)
        assert sorted(c[0] for c in support.values()) == [1, 2]


def test_eval_needs_a_large_enough_field(rng):
    ac = augment_circuit(parse_circuit(X1X2), sites="input")
    subs = sample_substitution(2, RtConfig(p=2, k=2), rng)
    with pytest.raises(ConfigurationError):
        identity_test_eval(ac, subs, prime_field(2), rng, degree=2)


def test_identity_tests_on_fixed_substitutions():
    """x1*x2 with independent vectors is nonzero; x1*x1 mod 2 is zero"""
    p, d = 2, 3
    subs = [substitution_element(GroupVector.basis(p, d, i)) for i in range(2)]
    product = augment_circuit(parse_circuit(X1X2), sites="input")
    square = augment_circuit(parse_circuit(X1X1), sites="input")
    field = ext_field_make(p, 5)
    assert tag_degree_bound(product, 2) == 2
    hits = 0
    for seed in range(40):
        assert not identity_test_eval(square, subs, field, make_rng(seed), degree=2)
        assert not identity_test_modpoly(square, subs, p, make_rng(seed), degree=2)
        assert identity_test_modpoly(product, subs, p, make_rng(seed), degree=2)
        hits += identity_test_eval(product, subs, field, make_rng(seed), degree=2)
    assert hits >= 30


def test_modpoly_degree_exceeds_kronecker_degree():
    ac = augment_circuit(parse_circuit(SQUARE), sites="input")
    delta = modpoly_degree(ac, 3)
    assert 3 ** delta > 6 * (3 ** ac.h - 1)


@pytest.mark.parametrize("p", [2, 3])
def test_agreement_with_the_expansion_oracle(rng, p):
    """Yes answers are always backed by the oracle; oracle yes is found within 20 trials"""
    checked = 0
    for i in range(30):
        make = random_formula if i % 2 else random_circuit
        c = make(rng, n=4, gates=5, p=p)
        k = 2 + i % 2
        if degree_bound(c) < k:
            continue
        try:
            tbl = expand_oracle(c, p, cap=20_000)
        except ResourceLimitError:
            continue
        expected, _ = has_p_monomial_oracle(tbl, p, k)
        report = rt_mlm(c, RtConfig(p=p, k=k, seed=i))
        assert report.is_yes == expected
        checked += 1
    assert checked >= 10
