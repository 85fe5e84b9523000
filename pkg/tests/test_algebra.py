import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cires.algebra import (ExtensionField, PrimeField, build_extension, field_arith,
                           frobenius, is_irreducible, is_prime)
from cires.errors import DivisionByZero, MixedParents, NotPrime

FIELDS = [PrimeField(2), PrimeField(3), PrimeField(5), PrimeField(7),
          build_extension(2, 2), build_extension(2, 3), build_extension(3, 2),
          build_extension(2, 8), build_extension(5, 2)]


def _has_factor(modulus, p):
    """Oracle: trial division by every monic polynomial of degree 1..k/2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            rem = list(modulus)
            for shift in range(k - d, -1, -1):
                c = rem[shift + d]
                if c:
                    for j, b in enumerate(divisor):
                        rem[shift + j] = (rem[shift + j] - c * b) % p
            if not any(rem):
                return True
    return False


def test_is_prime_matches_trial_division():
    for n in range(-3, 200):
        assert is_prime(n) == (n > 1 and all(n % d for d in range(2, n)))


def test_prime_field_rejects_composites():
    with pytest.raises(NotPrime):
        PrimeField(9)
    with pytest.raises(NotPrime):
        build_extension(4, 2)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (2, 5), (5, 2)])
def test_irreducibility_oracle(p, k):
    for low in itertools.product(range(p), repeat=k):
        modulus = tuple(low) + (1,)
        assert is_irreducible(modulus, p) == (not _has_factor(modulus, p)), modulus


def test_spec_examples_arith():
    F3, F5, F2 = PrimeField(3), PrimeField(5), PrimeField(2)
    assert field_arith(F3(2), F3(2), "add") == 1
    assert field_arith(F5(2), F5(3), "div") == 4
    assert field_arith(F2(1), F2(1), "add") == 0
    assert F5(2) / F5(3) == F5(4)


def test_arith_errors():
    F5 = PrimeField(5)
    with pytest.raises(DivisionByZero):
        field_arith(F5(1), F5(0), "div")
    with pytest.raises(ZeroDivisionError):
        F5(1) / F5(0)
    with pytest.raises(MixedParents):
        field_arith(F5(1), PrimeField(7)(1), "add")


def test_spec_examples_frobenius():
    F2 = PrimeField(2)
    assert frobenius(F2(1)) == F2(1)
    F4 = build_extension(2, 2, 0)
    assert F4.modulus == (1, 1, 1)
    t = F4.wrap(F4.generator)
    assert frobenius(t) == t + F4(1)
    F9 = build_extension(3, 2, 0)
    assert F9.modulus == (1, 0, 1)
    t = F9.wrap(F9.generator)
    assert frobenius(t) == t * F9(2)


def test_build_extension_is_deterministic_and_irreducible():
    for p, k in [(2, 2), (2, 8), (3, 2), (3, 4), (5, 3)]:
        for seed in (0, 1, 7):
            a, b = build_extension(p, k, seed), build_extension(p, k, seed)
            assert a.modulus == b.modulus
            assert len(a.modulus) == k + 1 and a.modulus[-1] == 1
            assert is_irreducible(a.modulus, p)


def test_build_extension_degree_one_is_prime_field():
    F = build_extension(2, 1, 5)
    assert F.order == 2 and F.k == 1
    assert F.add(1, 1) == 0


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_inverse_by_exhaustive_search(F):
    elements = list(F.elements())
    if len(elements) > 64:
        elements = elements[:64]
    for a in elements:
        if a == F.zero:
            continue
        hits = [b for b in F.elements() if F.mul(a, b) == F.one]
        assert hits == [F.inv(a)]


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_multiplicative_group_order(F):
    rest = [a for a in itertools.islice(F.elements(), 50) if a != F.zero]
    for a in rest:
        assert F.pow(a, F.order - 1) == F.one


@pytest.mark.parametrize("F", FIELDS, ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms_and_frobenius(F, data):
    draw = lambda: F.wrap(data.draw(st.integers(0, F.order - 1)))
    a, b, c = draw(), draw(), draw()
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.wrap(F.zero) and a + (-a) == F.wrap(F.zero)
    if not b.is_zero():
        assert (a / b) * b == a
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius(a) == a ** F.characteristic
    x = a
    for _ in range(getattr(F, "k", 1)):
        x = frobenius(x)
    assert x == a


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_frobenius_fixes_prime_subfield(F):
    for n in range(F.characteristic):
        assert frobenius(F(n)) == F(n)


def test_extension_reference_multiplication():
    # schoolbook product mod t^3 + t + 1 over F_2 as an independent oracle
    F8 = ExtensionField(2, 3, (1, 1, 0, 1))
    for a, b in itertools.product(range(8), repeat=2):
        prod = [0] * 5
        for i in range(3):
            for j in range(3):
                prod[i + j] ^= ((a >> i) & 1) & ((b >> j) & 1)
        for d in (4, 3):
            if prod[d]:
                prod[d] = 0
                prod[d - 3] ^= 1
                prod[d - 2] ^= 1
        assert F8.mul(a, b) == prod[0] + 2 * prod[1] + 4 * prod[2]


def test_element_serialization():
    F9 = build_extension(3, 2)
    t = F9.wrap(F9.generator)
    assert t.coeffs == [0, 1]
    assert (t * t).to_json() == [2, 0]
    assert PrimeField(5)(7).to_json() == 2
