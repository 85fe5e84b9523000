import pytest

from cires.algebra import build_extension
from cires.errors import DegreeMismatch, FeasibilityCapExceeded, PropertyStarViolated
from cires.generic import (DiffMultiset, IndexSet, RationalFunction, build_generic_ci,
                           derivative_delta_check, diff_operator, differential_rhs,
                           generic_vol, partial_derivative, property_star_multisets,
                           specialization_agreement, verify_differential,
                           verify_wilson_expansion)


def test_index_set_size():
    assert len(IndexSet(2, (2, 2))) == 6
    assert len(IndexSet(3, (3, 3, 3))) == 30
    assert len(IndexSet(2, (2, 3))) == 7


def test_build_generic_examples():
    g = build_generic_ci(2, 2, (2, 2))
    assert len(g.generators) == 2 and all(len(x.terms) == 3 for x in g.generators)
    assert len(g.index_set) == 6 and g.socle_degree == 2
    g1 = build_generic_ci(2, 1, (3,))
    assert len(g1.index_set) == 1 and g1.socle_degree == 2
    g3 = build_generic_ci(3, 2, (2, 2))
    assert len(g3.index_set) == 6 and g3.K.characteristic == 3
    with pytest.raises(FeasibilityCapExceeded):
        build_generic_ci(2, 3, (3, 3, 3))


def test_generic_vol_examples():
    g = build_generic_ci(2, 1, (2,))
    a = g.K.gen(0)
    assert generic_vol(g, (1,)) == a.inverse()
    g2 = build_generic_ci(2, 2, (2, 2))
    assert g2.residue.vol(g2.residue.z0).value == g2.K.one
    with pytest.raises(DegreeMismatch):
        generic_vol(g2, (1, 0))


def test_partial_derivative_examples():
    g = build_generic_ci(3, 2, (1, 1))
    K = g.K
    a, b = K.gen(0), K.gen(1)
    assert partial_derivative(a.inverse(), 0) == K.from_int(2) / (a * a)
    assert partial_derivative(a ** 3, 0).is_zero()
    assert partial_derivative(a * b + b * b, 0) == b
    idx = g.index_set.entries[0]
    assert partial_derivative(a * b, idx) == b


def test_diff_operator_examples():
    g = build_generic_ci(3, 1, (2,))
    K = g.K
    a = K.gen(0)
    (idx,) = g.index_set.entries
    assert diff_operator(a, []) == a
    assert diff_operator(a * a, DiffMultiset([idx, idx])) == K.from_int(2)
    g2 = build_generic_ci(2, 2, (1, 2))
    K2 = g2.K
    f = (K2.gen(0) * K2.gen(1) + K2.gen(2)) / (K2.gen(3) + K2.one)
    e = g2.index_set.entries
    assert diff_operator(f, [e[0], e[3]]) == diff_operator(f, [e[3], e[0]])


def test_rational_function_equality_by_cross_multiplication():
    g = build_generic_ci(2, 2, (1, 1))
    K = g.K
    a, b = K.gen(0), K.gen(1)
    assert (a * b) / (a * a) == b / a
    assert (a + b) / (a + b) == K.one
    assert a / b != b / a
    assert (a / b).frobenius() == (a * a) / (b * b)


def test_differential_rhs_examples():
    g = build_generic_ci(2, 1, (2,))
    a = g.K.gen(0)
    (idx,) = g.index_set.entries
    rhs = differential_rhs(g, (1,), DiffMultiset([idx]))
    assert rhs == (a * a).inverse()
    g2 = build_generic_ci(2, 2, (2, 2))
    # combined exponent (2+2-1, 0+2-1) = (3, 1) has odd entries: no square root
    I = DiffMultiset([(1, (1, 1)), (2, (1, 1))])
    assert differential_rhs(g2, (2, 0), I).is_zero()
    # (1+2-1, 1+2-1) = (2, 2) has root (1, 1)
    J = DiffMultiset([(1, (1, 1)), (2, (1, 1))])
    assert differential_rhs(g2, (1, 1), J) == -generic_vol(g2, (1, 1)).frobenius()
    with pytest.raises(PropertyStarViolated):
        differential_rhs(g2, (1, 1), DiffMultiset([(1, (2, 0))]))


def test_property_star_counts():
    assert len(property_star_multisets(IndexSet(2, (2, 2)), 2)) == 9
    assert len(property_star_multisets(IndexSet(1, (2,)), 3)) == 1
    assert len(property_star_multisets(IndexSet(2, (2, 2)), 3)) == 36
    for I in property_star_multisets(IndexSet(2, (2, 3)), 3):
        assert I.satisfies_property_star(3, 2)


@pytest.mark.parametrize("shape,count", [((2, 1, (2,)), 1), ((2, 1, (3,)), 1),
                                         ((3, 1, (2,)), 1), ((2, 2, (2, 2)), 27),
                                         ((2, 2, (1, 3)), 24)])
def test_verify_differential(shape, count):
    rep = verify_differential(build_generic_ci(*shape))
    assert rep.passed, rep.witnesses
    assert rep.details["identities_checked"] == count


@pytest.mark.parametrize("shape", [(2, 2, (2, 2)), (3, 1, (2,)), (2, 1, (3,)), (3, 2, (1, 2))])
def test_wilson_and_delta(shape):
    g = build_generic_ci(*shape)
    assert verify_wilson_expansion(g).passed
    assert derivative_delta_check(g).passed


@pytest.mark.parametrize("shape", [(2, 2, (2, 2)), (3, 2, (2, 2)), (2, 2, (2, 3)), (5, 1, (3,))])
def test_specialization_agreement(shape):
    g = build_generic_ci(*shape)
    F = build_extension(shape[0], 8 if shape[0] == 2 else 4)
    for seed in range(3):
        assert specialization_agreement(g, F, seed).passed
