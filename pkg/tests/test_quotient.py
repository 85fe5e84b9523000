import random

import pytest
import sympy

from cires.algebra import PrimeField, build_extension
from cires.errors import DegreeOutOfRange, Inhomogeneous, RegularSequenceViolation
from cires.polyring import PolyRing, monomials_of_degree
from cires.quotient import (CompleteIntersection, QuotientStructure, buchberger,
                            expected_hilbert_function, hilbert_check, macaulay_vol_solver,
                            normal_form, random_complete_intersection, random_homogeneous,
                            require_regular, standard_monomials)


def gens(p, m):
    return PolyRing(PrimeField(p), m).gens()


def worked():
    x1, x2 = gens(3, 2)
    return CompleteIntersection([x1 ** 2 + x2 ** 2, x1 * x2]), x1, x2


def _sympy_basis(polys, p):
    m = polys[0].ring.nvars
    syms = sympy.symbols(f"y1:{m + 1}")
    exprs = []
    for f in polys:
        e = 0
        for exps, c in f.terms.items():
            t = int(c)
            for s, k in zip(syms, exps):
                t *= s ** k
            e += t
        exprs.append(e)
    G = sympy.groebner(exprs, *syms, modulus=p, order="grevlex")
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *syms, modulus=p)
        lc = P.LC(order="grevlex") % p
        inv = pow(int(lc), -1, p)
        out.add(frozenset((mono, int(c) * inv % p) for mono, c in P.terms()))
    return out


def _ours(basis):
    return {frozenset((e, int(c)) for e, c in g.terms.items()) for g in basis}


def test_buchberger_examples():
    x1, x2 = gens(2, 2)
    assert buchberger([x1 ** 2, x2 ** 2]) == [x1 ** 2, x2 ** 2]
    G = buchberger([x1 + x2, x2 ** 2])
    assert set(map(str, G)) == {str(x1 + x2), str(x2 ** 2)}
    ci, y1, y2 = worked()
    q = QuotientStructure(ci)
    flat = [u for d in range(3) for u in q.standard_monomials(d)]
    assert sorted(flat) == sorted([(0, 0), (1, 0), (0, 1), (0, 2)])


@pytest.mark.parametrize("p,m,degrees", [(2, 2, (2, 2)), (3, 2, (2, 3)), (5, 2, (2, 2)),
                                         (2, 3, (2, 2, 2)), (3, 3, (1, 2, 2)), (2, 2, (3, 3))])
def test_buchberger_matches_sympy(p, m, degrees):
    rng = random.Random(p * 100 + m)
    R = PolyRing(PrimeField(p), m)
    for _ in range(4):
        polys = [random_homogeneous(R, d, rng) for d in degrees]
        if any(f.is_zero() for f in polys):
            continue
        G = buchberger(polys)
        assert _ours(G) == _sympy_basis(polys, p)
        assert buchberger(G) == G
        for g in G:
            assert g.leading_coeff() == 1


def test_normal_form_examples():
    x1, x2 = gens(2, 2)
    q = QuotientStructure(CompleteIntersection([x1 ** 2, x2 ** 2]))
    assert normal_form(x1 ** 2 * x2, q).is_zero()
    assert normal_form(x1 * x2, q) == x1 * x2
    ci, y1, y2 = worked()
    q = QuotientStructure(ci)
    assert normal_form(y1 ** 2, q) == y2 ** 2 * 2
    for g in ci.generators:
        assert normal_form(g, q).is_zero()


def test_standard_monomials_examples():
    x1, x2 = gens(2, 2)
    q = QuotientStructure(CompleteIntersection([x1 ** 2, x2 ** 2]))
    assert standard_monomials(q, 2) == [(1, 1)]
    assert standard_monomials(q, 0) == [(0, 0)]
    assert standard_monomials(q, 3) == []
    with pytest.raises(DegreeOutOfRange):
        standard_monomials(q, 4)
    with pytest.raises(DegreeOutOfRange):
        standard_monomials(q, -1)


def test_hilbert_check_examples():
    x1, x2 = gens(2, 2)
    rep = hilbert_check(CompleteIntersection([x1 ** 2, x2 ** 2]))
    assert rep.passed and rep.details["hilbert_function"][:3] == [1, 2, 1]
    bad = hilbert_check(CompleteIntersection([x1 ** 2, x1 * x2]))
    assert not bad.passed and bad.witnesses
    # the Hilbert function is (1, 2, 1, 1, ...): degree 2 still matches, degree 3 does not
    assert bad.witnesses[0]["degree"] == 3
    (x,) = gens(5, 1)
    rep = hilbert_check(CompleteIntersection([x ** 4]))
    assert rep.passed and rep.details["hilbert_function"] == [1, 1, 1, 1, 0]
    with pytest.raises(RegularSequenceViolation) as exc:
        require_regular(CompleteIntersection([x1 ** 2, x1 * x2]))
    assert exc.value.report is not None and not exc.value.report.passed


def test_complete_intersection_validation():
    x1, x2 = gens(2, 2)
    with pytest.raises(Inhomogeneous):
        CompleteIntersection([x1 ** 2 + x2, x2 ** 2])
    with pytest.raises(ValueError):
        CompleteIntersection([x1 ** 2])
    with pytest.raises(ValueError):
        CompleteIntersection([x1 ** 2, x1 * 0])


def test_macaulay_examples():
    x1, x2 = gens(2, 2)
    ci = CompleteIntersection([x1 ** 2, x2 ** 2])
    sp = macaulay_vol_solver(ci, 2)
    assert sp.dimension == 2 and sp.codimension == 1
    sp1 = macaulay_vol_solver(ci, 1)
    assert sp1.dimension == 0 and sp1.codimension == 2
    wci, _, _ = worked()
    sp = macaulay_vol_solver(wci, 2)
    assert sp.dimension == 2 and len(sp.columns) == 3


def test_expected_hilbert_function():
    assert expected_hilbert_function((2, 2), 3) == [1, 2, 1, 0]
    assert expected_hilbert_function((2, 3), 4) == [1, 2, 2, 1, 0]
    assert expected_hilbert_function((2, 2, 2), 4) == [1, 3, 3, 1, 0]


SHAPES = [(2, 2, (2, 2)), (2, 3, (2, 2, 2)), (3, 2, (2, 3)), (5, 2, (2, 2)), (2, 2, (3, 4)),
          (3, 3, (1, 2, 3))]


@pytest.mark.parametrize("p,m,degrees", SHAPES)
def test_random_quotient_invariants(p, m, degrees):
    rng = random.Random(11)
    F = PrimeField(p)
    for _ in range(5):
        ci = random_complete_intersection(F, m, degrees, rng)
        q = QuotientStructure(ci)
        s = ci.socle_degree
        h = q.hilbert_function(s + 1)
        assert h == expected_hilbert_function(degrees, s + 1)
        assert h[s] == 1 and h[s + 1] == 0
        assert all(h[j] == h[s - j] for j in range(s + 1))
        for d in range(s + 2):
            assert macaulay_vol_solver(ci, d).codimension == q.dim(d)
        R = ci.ring
        for _ in range(5):
            a = random_homogeneous(R, rng.randint(0, s), rng)
            b = random_homogeneous(R, rng.randint(0, s), rng)
            assert q.normal_form(a * b) == q.normal_form(q.normal_form(a) * q.normal_form(b))
            assert q.normal_form(a + b) == q.normal_form(a) + q.normal_form(b)


def test_quotient_over_extension_field():
    rng = random.Random(4)
    ci = random_complete_intersection(build_extension(2, 4), 2, (2, 3), rng)
    q = QuotientStructure(ci)
    assert q.hilbert_function() == [1, 2, 2, 1, 0][:len(q.hilbert_function())]
    assert len(q.standard_monomials(3)) == 1


def test_macaulay_residual_agrees_with_normal_form():
    rng = random.Random(8)
    ci = random_complete_intersection(PrimeField(3), 3, (2, 2, 2), rng)
    q = QuotientStructure(ci)
    for d in range(ci.socle_degree + 1):
        sp = macaulay_vol_solver(ci, d)
        for u in monomials_of_degree(3, d):
            f = ci.ring.monomial(u)
            assert sp.contains(f) == q.normal_form(f).is_zero()
