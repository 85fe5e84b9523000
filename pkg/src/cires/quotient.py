"""Artinian quotients R/I of complete intersections.

Two independent backends describe the graded pieces of ``I``: a reduced
Groebner basis (Buchberger, grevlex) and Macaulay matrices spanning ``I_d``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DegreeOutOfRange, Inhomogeneous, RegularSequenceViolation
from .linalg import reduce_vector, rref
from .polyring import (PolyRing, Polynomial, _divides, _mono_div, grevlex_key,
                       monomials_of_degree)
from .report import make_report

__all__ = [
    "CompleteIntersection",
    "QuotientStructure",
    "MacaulaySpace",
    "buchberger",
    "normal_form",
    "standard_monomials",
    "hilbert_check",
    "expected_hilbert_function",
    "macaulay_vol_solver",
    "random_complete_intersection",
]


class CompleteIntersection:
    """``m`` homogeneous generators of positive degree in ``m`` variables.

    Generator order is kept exactly as given.  Regularity of the sequence is
    not checked here; see :func:`hilbert_check`.
    """

    def __init__(self, generators):
        generators = tuple(generators)
        if not generators:
            raise ValueError("need at least one generator")
        ring = generators[0].ring
        if any(g.ring != ring for g in generators):
            raise ValueError("generators live in different rings")
        if len(generators) != ring.nvars:
            raise ValueError(f"need {ring.nvars} generators, got {len(generators)}")
        degrees = []
        for i, g in enumerate(generators):
            if g.is_zero():
                raise ValueError(f"generator {i + 1} is zero")
            d = g.homogeneous_degree()
            if d is None:
                raise Inhomogeneous(f"generator {i + 1} is not homogeneous")
            if d < 1:
                raise ValueError(f"generator {i + 1} is a nonzero constant")
            degrees.append(d)
        self.ring: PolyRing = ring
        self.generators = generators
        self.degrees = tuple(degrees)

    @property
    def field(self):
        return self.ring.field

    @property
    def m(self) -> int:
        return self.ring.nvars

    @property
    def socle_degree(self) -> int:
        return sum(self.degrees) - self.m

    @classmethod
    def from_terms(cls, field, m: int, generators) -> CompleteIntersection:
        """``generators``: per generator, an iterable of ``(coeff, exponents)``."""
        ring = PolyRing(field, m)
        return cls([ring.from_terms(t) for t in generators])

    def to_json(self) -> dict:
        desc = self.field.describe() if hasattr(self.field, "describe") else {}
        return {
            "field": desc,
            "num_vars": self.m,
            "degrees": list(self.degrees),
            "generators": [g.to_json() for g in self.generators],
        }

    def __repr__(self):
        return f"CompleteIntersection({[g.format() for g in self.generators]} over {self.field})"


# --- Groebner machinery on raw term dicts ---

def _reduce_terms(terms: dict, basis, field) -> dict:
    """Fully reduce ``terms`` by ``basis`` = [(lm, lc_inv, term_dict)]."""
    work = dict(terms)
    rem = {}
    prime = field.is_prime_field
    if prime:
        p = field.p
    else:
        iz, sub, mul = field.is_zero, field.sub, field.mul
    while work:
        e = max(work, key=grevlex_key)
        c = work[e]
        for lm, lc_inv, gt in basis:
            if _divides(lm, e):
                q = _mono_div(e, lm)
                if prime:
                    f = c * lc_inv % p
                    for ge, gc in gt.items():
                        t = tuple(a + b for a, b in zip(ge, q))
                        v = (work.get(t, 0) - f * gc) % p
                        if v:
                            work[t] = v
                        else:
                            work.pop(t, None)
                else:
                    f = mul(c, lc_inv)
                    for ge, gc in gt.items():
                        t = tuple(a + b for a, b in zip(ge, q))
                        v = sub(work[t], mul(f, gc)) if t in work else sub(field.zero, mul(f, gc))
                        if iz(v):
                            work.pop(t, None)
                        else:
                            work[t] = v
                break
        else:
            rem[e] = c
            del work[e]
    return rem


def _monic(g: Polynomial) -> Polynomial:
    f = g.ring.field
    return g.scale(f.inv(g.leading_coeff()))


def _basis_entry(g: Polynomial):
    lm = g.leading_monomial()
    return (lm, g.ring.field.inv(g.terms[lm]), g.terms)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def buchberger(generators) -> list[Polynomial]:
    """Reduced Groebner basis under grevlex, monic, sorted by leading monomial.

    Pairs are processed by the normal selection strategy (smallest lcm
    first); pairs with coprime leading monomials are skipped.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    field = ring.field
    G = [_monic(g) for g in gens]
    lms = [g.leading_monomial() for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        i, j = min(pairs, key=lambda ij: (grevlex_key(_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        a, b = lms[i], lms[j]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        L = _lcm(a, b)
        s_poly = G[i].mul_monomial(_mono_div(L, a)) - G[j].mul_monomial(_mono_div(L, b))
        r = _reduce_terms(s_poly.terms, [_basis_entry(g) for g in G], field)
        if r:
            h = _monic(Polynomial(ring, r, _clean=True))
            G.append(h)
            lms.append(h.leading_monomial())
            k = len(G) - 1
            pairs.update((t, k) for t in range(k))
    # minimalize
    keep = []
    for idx, g in enumerate(G):
        lm = lms[idx]
        redundant = False
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            if _divides(lms[jdx], lm) and (lms[jdx] != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # inter-reduce
    reduced = []
    for idx, g in enumerate(keep):
        others = [_basis_entry(h) for j, h in enumerate(keep) if j != idx]
        lm = g.leading_monomial()
        tail = {e: c for e, c in g.terms.items() if e != lm}
        r = _reduce_terms(tail, others, field)
        r[lm] = g.terms[lm]
        reduced.append(_monic(Polynomial(ring, r, _clean=True)))
    reduced.sort(key=lambda g: grevlex_key(g.leading_monomial()), reverse=True)
    return reduced


def expected_hilbert_function(degrees, top: int) -> list[int]:
    """Coefficients of t^0..t^top in prod_i (1 + t + ... + t^{d_i - 1})."""
    coeffs = [1] + [0] * top
    for d in degrees:
        new = [0] * (top + 1)
        for j, c in enumerate(coeffs):
            if c:
                for k in range(d):
                    if j + k <= top:
                        new[j + k] += c
        coeffs = new
    return coeffs


class QuotientStructure:
    """``R/I`` via a reduced Groebner basis, with standard monomials by degree."""

    def __init__(self, ci: CompleteIntersection, groebner=None):
        self.ci = ci
        self.ring = ci.ring
        self.field = ci.field
        self.groebner = list(groebner) if groebner is not None else buchberger(ci.generators)
        self.leading_monomials = [g.leading_monomial() for g in self.groebner]
        self._basis = [_basis_entry(g) for g in self.groebner]
        self.socle_degree = ci.socle_degree
        self.std_monomials = {d: self._standard(d) for d in range(self.socle_degree + 2)}

    def _standard(self, d: int):
        lms = self.leading_monomials
        return [u for u in monomials_of_degree(self.ring.nvars, d)
                if not any(_divides(lm, u) for lm in lms)]

    def standard_monomials(self, d: int):
        if not 0 <= d <= self.socle_degree + 1:
            raise DegreeOutOfRange(f"degree {d} outside 0..{self.socle_degree + 1}")
        return self.std_monomials[d]

    def dim(self, d: int) -> int:
        if d < 0 or d > self.socle_degree + 1:
            return len(self._standard(d)) if d >= 0 else 0
        return len(self.std_monomials[d])

    def hilbert_function(self, top: int | None = None) -> list[int]:
        top = self.socle_degree + 1 if top is None else top
        return [self.dim(d) for d in range(top + 1)]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("polynomial from another ring")
        return Polynomial(self.ring, _reduce_terms(f.terms, self._basis, self.field), _clean=True)

    def coordinates(self, f: Polynomial, d: int) -> list:
        """Coordinates of the normal form of a degree-``d`` element."""
        nf = self.normal_form(f)
        z = self.field.zero
        return [nf.terms.get(u, z) for u in self.standard_monomials(d)]

    @property
    def socle_monomial(self):
        (u,) = self.std_monomials[self.socle_degree]
        return u


def normal_form(f: Polynomial, q: QuotientStructure) -> Polynomial:
    return q.normal_form(f)


def standard_monomials(q: QuotientStructure, d: int):
    return q.standard_monomials(d)


def hilbert_check(ci: CompleteIntersection, quotient: QuotientStructure | None = None):
    """PASS iff dim (R/I)_j matches the product formula for all j <= s+1."""
    q = quotient or QuotientStructure(ci)
    s = ci.socle_degree
    expected = expected_hilbert_function(ci.degrees, s + 1)
    observed = q.hilbert_function(s + 1)
    witnesses = []
    for j, (a, b) in enumerate(zip(observed, expected)):
        if a != b:
            witnesses.append({"degree": j, "observed": a, "expected": b})
            break
    return make_report("hilbert_check", witnesses, ci.to_json(), {
        "socle_degree": s,
        "hilbert_function": observed,
        "expected": expected,
    })


def require_regular(ci: CompleteIntersection) -> QuotientStructure:
    """Build the quotient, raising :class:`RegularSequenceViolation` if irregular."""
    q = QuotientStructure(ci)
    rep = hilbert_check(ci, q)
    if not rep.passed:
        raise RegularSequenceViolation("generators are not a regular sequence", rep)
    return q


@dataclass
class MacaulaySpace:
    """The subspace ``I_d`` of ``R_d`` spanned by ``g_i * M_{d - d_i}``."""

    ring: PolyRing
    degree: int
    columns: list
    basis: list
    pivots: list

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def codimension(self) -> int:
        return len(self.columns) - len(self.basis)

    @property
    def complement(self) -> list:
        """Monomials of non-pivot columns; they span ``R_d / I_d``."""
        piv = set(self.pivots)
        return [u for j, u in enumerate(self.columns) if j not in piv]

    def vector(self, f: Polynomial) -> list:
        z = self.ring.field.zero
        index = {u: j for j, u in enumerate(self.columns)}
        vec = [z] * len(self.columns)
        for e, c in f.terms.items():
            if e not in index:
                raise ValueError(f"term {e} is not of degree {self.degree}")
            vec[index[e]] = c
        return vec

    def contains(self, f: Polynomial) -> bool:
        iz = self.ring.field.is_zero
        return all(iz(x) for x in reduce_vector(self.vector(f), self.basis, self.pivots,
                                                 self.ring.field))

    def residual(self, f: Polynomial) -> dict:
        """Coordinates of ``f`` modulo ``I_d`` on :attr:`complement`."""
        red = reduce_vector(self.vector(f), self.basis, self.pivots, self.ring.field)
        piv = set(self.pivots)
        return {u: red[j] for j, u in enumerate(self.columns) if j not in piv}


def macaulay_vol_solver(ci: CompleteIntersection, d: int) -> MacaulaySpace:
    """Row-reduced Macaulay matrix of ``I_d`` over the monomials of degree ``d``."""
    if d < 0:
        raise DegreeOutOfRange("negative degree")
    ring = ci.ring
    cols = monomials_of_degree(ring.nvars, d)
    index = {u: j for j, u in enumerate(cols)}
    z = ring.field.zero
    rows = []
    for g, dg in zip(ci.generators, ci.degrees):
        if d < dg:
            continue
        for h in monomials_of_degree(ring.nvars, d - dg):
            row = [z] * len(cols)
            for e, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(e, h))]] = c
            rows.append(row)
    basis, pivots = rref(rows, ring.field)
    return MacaulaySpace(ring, d, cols, basis, pivots)


def random_homogeneous(ring: PolyRing, d: int, rng: random.Random) -> Polynomial:
    f = ring.field
    return Polynomial(ring, {u: f.random_element(rng) for u in monomials_of_degree(ring.nvars, d)})


def random_complete_intersection(field, m: int, degrees, rng: random.Random,
                                 max_tries: int = 100) -> CompleteIntersection:
    """Uniformly random generators, resampled until they form a regular sequence."""
    ring = PolyRing(field, m)
    for _ in range(max_tries):
        gens = [random_homogeneous(ring, d, rng) for d in degrees]
        if any(g.is_zero() for g in gens):
            continue
        ci = CompleteIntersection(gens)
        if hilbert_check(ci).passed:
            return ci
    raise RegularSequenceViolation(f"no regular sequence found in {max_tries} tries")
