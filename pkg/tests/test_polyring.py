import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cires.algebra import PrimeField, build_extension, frobenius
from cires.errors import DegreeCapExceeded, DegreeMismatch, Inhomogeneous, MixedAmbient
from cires.polyring import (LaurentPolynomial, PolyRing, Polynomial, contraction,
                            graded_component, laurent_truncate, monomials_of_degree, p_th_root)
from cires.quotient import random_homogeneous


def ring(p, m):
    return PolyRing(PrimeField(p), m)


def test_spec_examples_arith():
    R2 = ring(2, 2)
    x1, x2 = R2.gens()
    assert (x1 + x2) * (x1 + x2) == x1 ** 2 + x2 ** 2
    R3 = ring(3, 2)
    y1, y2 = R3.gens()
    assert (y1 + y2) ** 2 == y1 ** 2 + y1 * y2 * 2 + y2 ** 2
    assert ((y1 + y2) ** 2).coeff((1, 1)) == 2
    assert (x1 * x2 + x1) * R2.zero() == R2.zero()
    assert (x1 * R2.zero()).is_zero()


def test_mixed_ambient():
    with pytest.raises(MixedAmbient):
        ring(2, 2).gen(0) + ring(3, 2).gen(0)


def test_no_stored_zero_and_homogeneity():
    R = ring(3, 2)
    x1, x2 = R.gens()
    f = x1 * 2 + x1
    assert f.is_zero() and f.terms == {}
    assert (x1 ** 2 + x1 * x2).homogeneous_degree() == 2
    assert (x1 ** 2 + x2).homogeneous_degree() is None


def _to_sympy(f, gens):
    expr = 0
    for e, c in f.terms.items():
        term = int(c)
        for g, k in zip(gens, e):
            term *= g ** k
        expr += term
    return expr


@pytest.mark.parametrize("p", [2, 3, 5])
def test_multiplication_matches_sympy(p):
    rng = random.Random(p)
    R = ring(p, 3)
    gens = sympy.symbols("a b c")
    for _ in range(10):
        f = random_homogeneous(R, rng.randint(1, 4), rng)
        g = random_homogeneous(R, rng.randint(1, 4), rng)
        ours = sympy.Poly(_to_sympy(f * g, gens), *gens, modulus=p)
        ref = sympy.Poly(_to_sympy(f, gens), *gens, modulus=p) * sympy.Poly(
            _to_sympy(g, gens), *gens, modulus=p)
        assert ours == ref


def test_extension_coefficients_polynomial_power():
    F4 = build_extension(2, 2)
    R = PolyRing(F4, 2)
    t = F4.wrap(F4.generator)
    f = R.gen(0).scale(t) + R.gen(1)
    assert f ** 2 == (R.gen(0) ** 2).scale(t * t) + R.gen(1) ** 2


def test_degree_cap(monkeypatch):
    monkeypatch.setenv("CIRES_MAX_DEGREE", "10")
    x = ring(2, 1).gen(0)
    with pytest.raises(DegreeCapExceeded):
        x ** 11
    monkeypatch.setenv("CIRES_MAX_DEGREE", "20")
    assert (x ** 11).degree() == 11


def test_contraction_examples():
    R = ring(3, 2)
    x1, x2 = R.gens()
    assert contraction(x1 * x2, x1 * x2) == 1
    assert contraction(x1 ** 2, x1 * x2) == 0
    assert contraction(x1 ** 2 + x1 * x2, x1 ** 2 + x1 * x2 * 2) == 0


def test_contraction_errors():
    R = ring(3, 2)
    x1, x2 = R.gens()
    with pytest.raises(DegreeMismatch):
        contraction(x1, x1 * x2)
    with pytest.raises(Inhomogeneous):
        contraction(x1 + x1 * x2, x1 * x2)


def test_p_th_root_examples():
    assert p_th_root((2, -4), 2) == (1, -2)
    assert p_th_root((3,), 2) is None
    assert p_th_root((3, 6), 3) == (1, 2)


def test_laurent_truncate_examples():
    R = ring(2, 2)
    f = LaurentPolynomial(R, {(1, -1): 1, (2, 0): 1})
    assert laurent_truncate(f) == R.monomial((2, 0))
    g = LaurentPolynomial(R, {(2, 1): 1})
    assert laurent_truncate(g) == R.monomial((2, 1))
    R1 = ring(2, 1)
    assert laurent_truncate(LaurentPolynomial(R1, {(-1,): 1})).is_zero()


def test_laurent_truncate_idempotent_and_linear():
    rng = random.Random(3)
    R = ring(5, 2)
    for _ in range(20):
        a = LaurentPolynomial(R, {(rng.randint(-2, 3), rng.randint(-2, 3)): rng.randint(1, 4)
                                  for _ in range(4)})
        b = LaurentPolynomial(R, {(rng.randint(-2, 3), rng.randint(-2, 3)): rng.randint(1, 4)
                                  for _ in range(4)})
        ta = laurent_truncate(a)
        assert laurent_truncate(LaurentPolynomial.from_polynomial(ta)) == ta
        assert laurent_truncate(a + b.scale(3)) == ta + laurent_truncate(b).scale(3)


def test_graded_component_examples():
    R = ring(2, 2)
    x1, x2 = R.gens()
    assert graded_component(x1 + x1 * x2, 2) == x1 * x2
    assert graded_component(x1 + x2, 5).is_zero()
    assert graded_component(x1 ** 2 * x2, 3) == x1 ** 2 * x2


def test_monomials_of_degree():
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert monomials_of_degree(1, 4) == [(4,)]
    assert len(monomials_of_degree(3, 2)) == 6
    assert monomials_of_degree(3, 0) == [(0, 0, 0)]


def test_grevlex_order():
    # x1 > x2 > x3; grevlex on degree 2: x1^2 > x1x2 > x2^2 > x1x3 > x2x3 > x3^2
    assert monomials_of_degree(3, 2) == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1),
                                         (0, 1, 1), (0, 0, 2)]
    R = ring(2, 3)
    x1, x2, x3 = R.gens()
    assert (x2 ** 2 + x1 * x3).leading_monomial() == (0, 2, 0)


FIELDS = [PrimeField(2), PrimeField(3), PrimeField(5), build_extension(2, 2), build_extension(3, 2)]


@pytest.mark.parametrize("F", FIELDS, ids=str)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), d=st.integers(0, 3), m=st.integers(1, 3))
def test_contraction_power_compatibility(F, seed, d, m):
    rng = random.Random(seed)
    R = PolyRing(F, m)
    u, w = random_homogeneous(R, d, rng), random_homogeneous(R, d, rng)
    p = F.characteristic
    assert contraction(u ** p, w ** p) == frobenius(contraction(u, w))


@pytest.mark.parametrize("F", FIELDS, ids=str)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), d=st.integers(0, 4), m=st.integers(1, 3))
def test_contraction_reproduces(F, seed, d, m):
    R = PolyRing(F, m)
    w = random_homogeneous(R, d, random.Random(seed))
    total = R.zero()
    for u in monomials_of_degree(m, d):
        total = total + R.monomial(u).scale(contraction(R.monomial(u), w))
    assert total == w


@settings(max_examples=50, deadline=None)
@given(exps=st.lists(st.integers(-6, 6), min_size=1, max_size=4), p=st.sampled_from([2, 3, 5]))
def test_p_th_root_property(exps, p):
    root = p_th_root(tuple(exps), p)
    if root is not None:
        assert tuple(p * x for x in root) == tuple(exps)
    else:
        assert any(x % p for x in exps)


def test_frobenius_twist_and_derivative():
    F9 = build_extension(3, 2)
    R = PolyRing(F9, 2)
    t = F9.wrap(F9.generator)
    f = R.gen(0).scale(t) * R.gen(1)
    assert f.frobenius_twist() == (R.gen(0) ** 3 * R.gen(1) ** 3).scale(frobenius(t))
    g = f + R.gen(1) ** 2
    assert g.frobenius_twist() == g ** 3
    x = ring(3, 1).gen(0)
    assert (x ** 3).derivative(0).is_zero()
    assert (x ** 2).derivative(0) == x * 2


def test_evaluate():
    R = ring(5, 2)
    x1, x2 = R.gens()
    assert (x1 ** 2 + x2 * 3).evaluate([2, 1]) == (4 + 3) % 5
