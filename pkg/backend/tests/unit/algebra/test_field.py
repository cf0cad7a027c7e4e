"""
Unit tests for finite-field arithmetic.
"""
import numpy as np
import pytest

from monomial.algebra.field import (
    ExtField,
    PrimeModulus,
    QuotientRing,
    as_prime,
    ext_field_make,
    extension_degree_for,
    is_irreducible,
    is_prime,
    next_prime,
    poly_mul,
    prime_field,
)
from monomial.utils.errors import UsageError


@pytest.mark.parametrize("n,expected", [(0, False), (1, False), (2, True), (3, True), (4, False),
                                        (9, False), (97, True), (101, True), (221, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_next_prime():
    assert next_prime(0) == 2
    assert next_prime(14) == 17
    assert next_prime(17) == 17


def test_prime_modulus_rejects_composites():
    assert as_prime(PrimeModulus(5)) == 5
    with pytest.raises(UsageError):
        PrimeModulus(4)
    with pytest.raises(UsageError):
        as_prime(1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_frobenius(p):
    """(x+y)^p = x^p + y^p for every pair in Z_p"""
    for x in range(p):
        for y in range(p):
            assert pow(x + y, p, p) == (pow(x, p, p) + pow(y, p, p)) % p


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_frobenius_with_negated_term(p):
    for x in range(p):
        for y in range(p):
            lhs = pow((p - 1) * x + y, p, p)
            rhs = ((p - 1) * pow(x, p, p) + pow(y, p, p)) % p
            assert lhs == rhs


def test_ext_field_moduli():
    assert ext_field_make(2, 1).modulus == (0, 1)
    assert ext_field_make(2, 2).modulus == (1, 1, 1)
    assert ext_field_make(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("p,ell", [(2, 3), (2, 5), (3, 3), (5, 2), (2, 6)])
def test_smallest_irreducible_is_irreducible(p, ell):
    field = ext_field_make(p, ell)
    assert field.ell == ell
    assert is_irreducible(field.modulus, p)


def test_reducible_polynomials_are_rejected():
    # (y+1)^2 over Z_2 and (y^2+y+1)^2 over Z_2
    assert not is_irreducible((1, 0, 1), 2)
    assert not is_irreducible(poly_mul((1, 1, 1), (1, 1, 1), 2), 2)
    with pytest.raises(UsageError):
        ExtField(2, (1, 0, 1))


@pytest.mark.parametrize("p,ell", [(2, 2), (2, 4), (3, 2), (5, 2)])
def test_every_nonzero_element_has_an_inverse(p, ell):
    field = ext_field_make(p, ell)
    for index in range(1, field.order):
        a = np.array([(index // p ** i) % p for i in range(ell)], dtype=np.int64)
        assert np.array_equal(field.mul(a, field.inverse(a)), field.one())


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ext_field_make(3, 2).inverse(np.zeros(2, dtype=np.int64))


def test_quotient_ring_broadcasts(rng):
    ring = QuotientRing(3, (2, 0, 1, 1))
    a = ring.random(rng, (4, 5))
    b = ring.random(rng, (5,))
    out = ring.mul(a, b)
    assert out.shape == (4, 5, 3)
    for i in range(4):
        for j in range(5):
            assert np.array_equal(out[i, j], ring.mul(a[i, j], b[j]))


def test_quotient_ring_matches_polynomial_reduction(rng):
    ring = QuotientRing(5, (1, 3, 0, 1))
    for _ in range(50):
        a, b = ring.random(rng), ring.random(rng)
        expected = ring.from_poly(poly_mul(a.tolist(), b.tolist(), 5))
        assert np.array_equal(ring.mul(a, b), expected)


def test_pow_matches_repeated_multiplication(rng):
    field = ext_field_make(3, 3)
    a = field.random(rng)
    acc = field.one()
    for e in range(10):
        assert np.array_equal(field.pow(a, e), acc)
        acc = field.mul(acc, a)


def test_prime_field_is_z_p():
    field = prime_field(7)
    assert field.ell == 1
    assert field.to_poly(field.mul(field.from_int(3), field.from_int(5))) == (1,)


def test_extension_degree_for():
    assert extension_degree_for(2, 1) == 1
    assert extension_degree_for(2, 9) == 4
    assert extension_degree_for(3, 27) == 3
