"""Coefficient matrices, the socle representative ``z0 = det N`` and the
normalized residue map ``vol`` with ``vol(z0) = 1``.

:class:`ResidueMap` evaluates ``vol`` through Groebner normal forms;
:class:`MacaulayResidueMap` evaluates it through the row-reduced Macaulay
matrix in the socle degree.  The latter needs no Groebner basis and works
over any field object, including the rational function field of
:mod:`cires.generic`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import FieldElement
from .errors import DegreeCapExceeded, DegreeMismatch, Inhomogeneous, SocleDegenerate
from .polyring import Polynomial, monomials_of_degree, max_degree
from .quotient import (CompleteIntersection, QuotientStructure, macaulay_vol_solver,
                       require_regular)

__all__ = [
    "CoefficientMatrix",
    "coefficient_matrix",
    "determinant",
    "socle_representative",
    "ResidueMap",
    "MacaulayResidueMap",
    "build_residue_map",
    "vol",
]

STRATEGIES = ("min_var", "max_var")


@dataclass(frozen=True)
class CoefficientMatrix:
    """Rows ``n_i`` with ``n_i . (x1..xm) = g_i``."""

    entries: tuple
    strategy: str

    @property
    def size(self) -> int:
        return len(self.entries)

    def row_dot_variables(self, i: int) -> Polynomial:
        row = self.entries[i]
        ring = row[0].ring
        total = ring.zero()
        for j, n in enumerate(row):
            total = total + n * ring.gen(j)
        return total

    def frobenius_power(self, p: int) -> CoefficientMatrix:
        """Entrywise ``p``-th powers (computed by literal multiplication)."""
        return CoefficientMatrix(tuple(tuple(n ** p for n in row) for row in self.entries),
                                 self.strategy + f"^({p})")

    def to_json(self):
        return {"strategy": self.strategy,
                "entries": [[n.format() for n in row] for row in self.entries]}


def coefficient_matrix(ci: CompleteIntersection, strategy: str = "min_var") -> CoefficientMatrix:
    """Split each term of ``g_i`` by the smallest (``min_var``) or largest
    (``max_var``) index variable dividing it."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    ring, m = ci.ring, ci.m
    f = ring.field
    rows = []
    for g in ci.generators:
        cols = [dict() for _ in range(m)]
        for e, c in g.terms.items():
            support = [j for j, x in enumerate(e) if x]
            j = support[0] if strategy == "min_var" else support[-1]
            e2 = list(e)
            e2[j] -= 1
            e2 = tuple(e2)
            cols[j][e2] = f.add(cols[j][e2], c) if e2 in cols[j] else c
        rows.append(tuple(Polynomial(ring, col) for col in cols))
    return CoefficientMatrix(tuple(rows), strategy)


def determinant(entries) -> Polynomial:
    """Cofactor expansion along the first row."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    total = None
    for j in range(n):
        if entries[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = entries[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else entries[0][0].ring.zero()


def socle_representative(N: CoefficientMatrix) -> Polynomial:
    return determinant([list(row) for row in N.entries])


class _ResidueBase:
    """Shared plumbing: caching of ``vol`` on monomials and of the product
    ``g_1^{p-1} ... g_m^{p-1}`` used by the identity checks."""

    ci: CompleteIntersection
    z0: Polynomial
    socle_degree: int

    @property
    def field(self):
        return self.ci.field

    @property
    def ring(self):
        return self.ci.ring

    def _check_degree(self, w: Polynomial):
        d = w.homogeneous_degree()
        if d is None:
            raise Inhomogeneous("vol needs a homogeneous argument")
        if w.terms and d != self.socle_degree:
            raise DegreeMismatch(f"vol is defined on degree {self.socle_degree}, got {d}")

    def vol_raw(self, w: Polynomial):
        raise NotImplementedError

    def vol(self, w: Polynomial) -> FieldElement:
        return FieldElement(self.field, self.vol_raw(w))

    def vol_monomial(self, u) -> object:
        """Raw ``vol`` of a monic monomial, cached."""
        cache = self.__dict__.setdefault("_vol_cache", {})
        u = tuple(u)
        if u not in cache:
            cache[u] = self.vol_raw(self.ring.monomial(u))
        return cache[u]

    @cached_property
    def socle_monomials(self):
        return monomials_of_degree(self.ci.m, self.socle_degree)

    @cached_property
    def parseval_factor(self) -> Polynomial:
        """``g_1^{p-1} ... g_m^{p-1}``, computed once."""
        p = self.field.characteristic
        deg = (p - 1) * (self.socle_degree + self.ci.m)
        if deg > max_degree():
            raise DegreeCapExceeded(f"(p-1)(s+m) = {deg} exceeds cap {max_degree()}")
        G = self.ring.one()
        for g in self.ci.generators:
            G = G * g ** (p - 1)
        return G


class ResidueMap(_ResidueBase):
    """``vol`` through Groebner normal forms."""

    def __init__(self, quotient: QuotientStructure, matrix: CoefficientMatrix):
        self.quotient = quotient
        self.ci = quotient.ci
        self.matrix = matrix
        self.socle_degree = quotient.socle_degree
        self.z0 = socle_representative(matrix)
        self.socle_monomial = quotient.socle_monomial
        nf = quotient.normal_form(self.z0)
        c0 = nf.coeff(self.socle_monomial)
        if self.field.is_zero(c0):
            raise SocleDegenerate("normal form of z0 vanishes")
        self.z0_coefficient = FieldElement(self.field, c0)
        self._c0_inv = self.field.inv(c0)

    def vol_raw(self, w: Polynomial):
        self._check_degree(w)
        nf = self.quotient.normal_form(w)
        return self.field.mul(nf.coeff(self.socle_monomial), self._c0_inv)


class MacaulayResidueMap(_ResidueBase):
    """``vol`` through the row-reduced Macaulay matrix of ``I_s``."""

    def __init__(self, ci: CompleteIntersection, strategy: str = "min_var"):
        self.ci = ci
        self.matrix = coefficient_matrix(ci, strategy)
        self.socle_degree = ci.socle_degree
        self.space = macaulay_vol_solver(ci, self.socle_degree)
        if self.space.codimension != 1:
            raise SocleDegenerate(f"I_s has codimension {self.space.codimension}, expected 1")
        (self.socle_monomial,) = self.space.complement
        self.z0 = socle_representative(self.matrix)
        c0 = self.space.residual(self.z0)[self.socle_monomial]
        if self.field.is_zero(c0):
            raise SocleDegenerate("z0 lies in I_s")
        self.z0_coefficient = FieldElement(self.field, c0)
        self._c0_inv = self.field.inv(c0)

    def vol_raw(self, w: Polynomial):
        self._check_degree(w)
        if w.is_zero():
            return self.field.zero
        c = self.space.residual(w)[self.socle_monomial]
        return self.field.mul(c, self._c0_inv)


def build_residue_map(ci: CompleteIntersection, strategy: str = "min_var",
                      quotient: QuotientStructure | None = None) -> ResidueMap:
    """Residue map normalized by ``det N`` for the chosen splitting of ``N``.

    Raises :class:`~cires.errors.RegularSequenceViolation` when the generators
    fail :func:`~cires.quotient.hilbert_check`.
    """
    q = quotient or require_regular(ci)
    return ResidueMap(q, coefficient_matrix(ci, strategy))


def vol(rm: _ResidueBase, w: Polynomial) -> FieldElement:
    return rm.vol(w)
