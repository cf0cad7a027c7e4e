"""
Unit tests for the seeded instance generators and the corpus writer.
"""
import os

from monomial.circuit.structured import Shape
from monomial.services.corpus import (
    random_circuit,
    random_formula,
    random_graph,
    random_pi_sigma,
    random_product_instance,
    write_corpus,
)
from monomial.utils.rng import make_rng


def test_random_formula_is_a_tree(rng):
    for _ in range(50):
        f = random_formula(rng, n=5, gates=8, p=3)
        assert f.is_formula
        assert f.n == 5


def test_random_circuit_uses_every_variable_name(rng):
    c = random_circuit(rng, n=4, gates=10, p=2)
    assert c.variables == ("x1", "x2", "x3", "x4")
    assert c.output == c.size - 1


def test_structured_generators(rng):
    sp = random_pi_sigma(rng, m=4, n=5)
    assert sp.shape == Shape.PI_SIGMA and sp.m == 4 and sp.s <= 3
    sp = random_product_instance(rng, m=3, k=2, n=6)
    assert sp.shape == Shape.PRODUCT
    assert (sp.m, sp.k) == (3, 2)
    assert sp.t <= 2


def test_random_graph(rng):
    g = random_graph(rng, 6, edge_prob=1.0)
    assert len(g.edges) == 15
    assert random_graph(rng, 6, edge_prob=0.0).edges == ()


def test_generators_are_reproducible():
    first = random_formula(make_rng(3), n=4, gates=6, p=5)
    second = random_formula(make_rng(3), n=4, gates=6, p=5)
    assert first == second


def test_write_corpus(tmp_path, storage):
    written = write_corpus(str(tmp_path / "a"), 4, seed=9, storage=storage, max_k=3)
    assert [len(written[kind]) for kind in ("circuits", "structured", "graphs")] == [4, 4, 4]
    for path in written["circuits"]:
        assert 1 <= storage.load_circuit(path).n <= 5
    ks = [storage.load_structured(path).k for path in written["structured"]]
    assert ks == [1, 2, 3, 1]
    for path in written["graphs"]:
        assert 3 <= storage.load_graph(path).m <= 7

    again = write_corpus(str(tmp_path / "b"), 4, seed=9, storage=storage, max_k=3)
    for one, two in zip(written["circuits"] + written["structured"], again["circuits"] + again["structured"]):
        assert os.path.basename(one) == os.path.basename(two)
        with open(one, "rb") as f1, open(two, "rb") as f2:
            assert f1.read() == f2.read()
