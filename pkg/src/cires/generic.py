"""The generic complete intersection over K = F_p(a_{i,r}) and its
differential identities.

Scalars of ``K`` are :class:`RationalFunction` values: a numerator
polynomial over the auxiliary indeterminates and a denominator kept as a
product of monic factor polynomials with multiplicities.  No gcd is ever
computed; known denominator factors are cancelled by exact division when
possible, and equality is decided by cross-multiplication.
"""

from __future__ import annotations

import random
from collections import Counter
from functools import cached_property
from itertools import combinations_with_replacement, product
from math import comb, factorial

from .algebra import PrimeField
from .errors import (DegreeMismatch, DivisionByZero, FeasibilityCapExceeded,
                     PropertyStarViolated, RegularSequenceViolation)
from .polyring import (LaurentPolynomial, PolyRing, Polynomial, _divides, _mono_div,
                       grevlex_key, laurent_truncate, monomials_of_degree, p_th_root)
from .quotient import CompleteIntersection, hilbert_check
from .report import make_report
from .residue import MacaulayResidueMap, build_residue_map

__all__ = [
    "FEASIBILITY_CAP",
    "IndexSet",
    "RationalFunction",
    "FunctionField",
    "DiffMultiset",
    "GenericCI",
    "build_generic_ci",
    "generic_vol",
    "partial_derivative",
    "diff_operator",
    "differential_rhs",
    "property_star_multisets",
    "verify_differential",
    "verify_wilson_expansion",
    "derivative_delta_check",
    "specialize_generators",
    "specialization_agreement",
]

FEASIBILITY_CAP = 12


# --- rational functions -------------------------------------------------

def _exact_quotient(f: Polynomial, b: Polynomial):
    """``f / b`` if ``b`` divides ``f`` exactly, else ``None``."""
    if f.is_zero():
        return f
    field = f.ring.field
    p = field.p
    lm = b.leading_monomial()
    lc_inv = field.inv(b.terms[lm])
    work = dict(f.terms)
    quot = {}
    while work:
        e = max(work, key=grevlex_key)
        if not _divides(lm, e):
            return None
        q = _mono_div(e, lm)
        c = work[e] * lc_inv % p
        quot[q] = c
        for be, bc in b.terms.items():
            t = tuple(x + y for x, y in zip(be, q))
            v = (work.get(t, 0) - c * bc) % p
            if v:
                work[t] = v
            else:
                work.pop(t, None)
    return Polynomial(f.ring, quot, _clean=True)


def _monic_part(b: Polynomial):
    lc = b.leading_coeff()
    return b.scale(b.ring.field.inv(lc)), lc


class RationalFunction:
    """``num / prod(base**exp)`` over ``F_p[a_{i,r}]``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den=None, _normalize: bool = True):
        self.num = num
        self.den = dict(den or {})
        if _normalize:
            self._normalize()

    def _normalize(self):
        ring = self.num.ring
        field = ring.field
        num = self.num
        den: dict = {}
        for base, e in self.den.items():
            if e == 0:
                continue
            if base.is_zero():
                raise DivisionByZero("zero denominator")
            if base.degree() == 0:
                c = base.terms[(0,) * ring.nvars]
                num = num.scale(field.pow(field.inv(c), e))
                continue
            mb, lc = _monic_part(base)
            if lc != 1:
                num = num.scale(field.pow(field.inv(lc), e))
            den[mb] = den.get(mb, 0) + e
        if num.is_zero():
            den = {}
        else:
            for base in list(den):
                while den[base]:
                    q = _exact_quotient(num, base)
                    if q is None:
                        break
                    num = q
                    den[base] -= 1
                if not den[base]:
                    del den[base]
        self.num = num
        self.den = den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def numerator(self) -> Polynomial:
        return self.num

    @property
    def denominator(self) -> Polynomial:
        out = self.ring.one()
        for base, e in self._sorted_den():
            out = out * base ** e
        return out

    def _sorted_den(self):
        return sorted(self.den.items(), key=lambda t: (t[0].format(), t[1]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _scaled_to(self, common: dict) -> Polynomial:
        out = self.num
        for base, e in common.items():
            k = e - self.den.get(base, 0)
            if k:
                out = out * base ** k
        return out

    def _common(self, other) -> dict:
        common = dict(self.den)
        for base, e in other.den.items():
            common[base] = max(common.get(base, 0), e)
        return common

    def __add__(self, other: RationalFunction) -> RationalFunction:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        common = self._common(other)
        return RationalFunction(self._scaled_to(common) + other._scaled_to(common), common)

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, _normalize=False)

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return self + (-other)

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        if self.is_zero() or other.is_zero():
            return RationalFunction(self.ring.zero())
        den = dict(self.den)
        for base, e in other.den.items():
            den[base] = den.get(base, 0) + e
        return RationalFunction(self.num * other.num, den)

    def inverse(self) -> RationalFunction:
        if self.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        num = self.ring.one()
        for base, e in self.den.items():
            num = num * base ** e
        return RationalFunction(num, {self.num: 1})

    def __truediv__(self, other: RationalFunction) -> RationalFunction:
        return self * other.inverse()

    def __pow__(self, n: int) -> RationalFunction:
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, {b: e * n for b, e in self.den.items()})

    def frobenius(self) -> RationalFunction:
        """The ``p``-th power, via ``(sum c a^e)^p = sum c a^{pe}`` over F_p."""
        return RationalFunction(self.num.frobenius_twist(),
                                {b.frobenius_twist(): e for b, e in self.den.items()})

    def derivative(self, var: int) -> RationalFunction:
        """Quotient rule for ``num / prod f_i^{e_i}`` in variable ``var``."""
        field = self.ring.field
        moving = [(b, e, b.derivative(var)) for b, e in self.den.items()]
        moving = [(b, e, db) for b, e, db in moving if not db.is_zero()]
        num = self.num.derivative(var)
        for b, _, _ in moving:
            num = num * b
        for k, (b, e, db) in enumerate(moving):
            coeff = field.from_int(e)
            if field.is_zero(coeff):
                continue
            term = self.num * db
            for j, (b2, _, _) in enumerate(moving):
                if j != k:
                    term = term * b2
            num = num - term.scale(coeff)
        den = dict(self.den)
        for b, _, _ in moving:
            den[b] += 1
        return RationalFunction(num, den)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # cross-multiplication against the common denominator
        common = self._common(other)
        return self._scaled_to(common) == other._scaled_to(common)

    __hash__ = None

    def evaluate(self, field, point):
        """Value at ``point`` (raw elements of ``field``); ``None`` if a
        denominator factor vanishes there."""
        den = field.one
        for base, e in self.den.items():
            v = base.evaluate(point, field)
            if field.is_zero(v):
                return None
            den = field.mul(den, field.pow(v, e))
        return field.div(self.num.evaluate(point, field), den)

    def format(self) -> str:
        if not self.den:
            return self.num.format()
        den = " * ".join(f"({b.format()})" + (f"^{e}" if e > 1 else "")
                         for b, e in self._sorted_den())
        return f"({self.num.format()}) / {den}"

    def to_json(self) -> dict:
        return {"numerator": self.num.format(), "denominator": self.denominator.format()}

    def __repr__(self):
        return f"RationalFunction({self.format()})"


class FunctionField:
    """``F_p(a_1..a_n)`` presented with the raw-value field protocol."""

    is_prime_field = False

    def __init__(self, aux_ring: PolyRing):
        self.aux_ring = aux_ring
        self.base = aux_ring.field
        self.characteristic = self.base.characteristic
        self.p = self.characteristic
        self.zero = RationalFunction(aux_ring.zero())
        self.one = RationalFunction(aux_ring.one())

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.aux_ring == self.aux_ring

    def __hash__(self):
        return hash(("K", self.aux_ring))

    def __repr__(self):
        return f"F_{self.p}({', '.join(self.aux_ring.names)})"

    def gen(self, i: int) -> RationalFunction:
        return RationalFunction(self.aux_ring.gen(i))

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction(self.aux_ring.constant(n))

    def from_polynomial(self, f: Polynomial) -> RationalFunction:
        return RationalFunction(f)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a / b

    def pow(self, a, n):
        return a ** n

    def frob(self, a):
        return a.frobenius()

    def format(self, a) -> str:
        return a.format()

    def to_json(self, a):
        return a.to_json()

    def describe(self) -> dict:
        return {"p": self.p, "indeterminates": list(self.aux_ring.names)}


# --- index set, multisets -------------------------------------------------

def _aux_name(i: int, r) -> str:
    return f"a{i}_" + "_".join(str(x) for x in r)


class IndexSet:
    """All pairs ``(i, r)``, ``i`` 1-based, ``r`` of degree ``d_i``; the
    position of a pair is the index of its auxiliary indeterminate."""

    def __init__(self, m: int, degrees):
        self.m = m
        self.degrees = tuple(degrees)
        self.per_generator = {i + 1: sorted(monomials_of_degree(m, d))
                              for i, d in enumerate(self.degrees)}
        self.entries = [(i, r) for i in sorted(self.per_generator)
                        for r in self.per_generator[i]]
        self.position = {e: k for k, e in enumerate(self.entries)}
        assert len(self.entries) == sum(comb(d + m - 1, m - 1) for d in self.degrees)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def names(self):
        return [_aux_name(i, r) for i, r in self.entries]


class DiffMultiset:
    """A finite multiset of index pairs; order of entries is irrelevant."""

    def __init__(self, entries):
        self.entries = tuple(sorted((int(i), tuple(r)) for i, r in entries))
        self.multiplicities = Counter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, DiffMultiset) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"DiffMultiset({list(self.entries)})"

    def factorial(self) -> int:
        out = 1
        for n in self.multiplicities.values():
            out *= factorial(n)
        return out

    def x_exponent(self, m: int) -> tuple:
        e = [0] * m
        for _, r in self.entries:
            for t, x in enumerate(r):
                e[t] += x
        return tuple(e)

    def satisfies_property_star(self, p: int, m: int) -> bool:
        counts = Counter(i for i, _ in self.entries)
        return all(counts.get(i, 0) == p - 1 for i in range(1, m + 1)) and set(counts) <= set(
            range(1, m + 1))

    def to_json(self):
        return [[i, list(r)] for i, r in self.entries]


def property_star_multisets(index_set: IndexSet, p: int):
    """All multisets with exactly ``p - 1`` entries per generator."""
    per = [list(combinations_with_replacement(
        [(i, r) for r in index_set.per_generator[i]], p - 1))
        for i in sorted(index_set.per_generator)]
    return [DiffMultiset([e for part in choice for e in part]) for choice in product(*per)]


# --- the generic complete intersection ----------------------------------

class GenericCI:
    def __init__(self, p: int, m: int, degrees):
        self.p = p
        self.m = m
        self.degrees = tuple(degrees)
        self.index_set = IndexSet(m, self.degrees)
        self.base_field = PrimeField(p)
        self.aux_ring = PolyRing(self.base_field, len(self.index_set), self.index_set.names())
        self.K = FunctionField(self.aux_ring)
        self.ring = PolyRing(self.K, m)
        gens = []
        for i in range(1, m + 1):
            terms = {}
            for r in self.index_set.per_generator[i]:
                terms[tuple(r)] = self.K.gen(self.index_set.position[(i, tuple(r))])
            gens.append(Polynomial(self.ring, terms))
        self.generators = gens
        self.ci = CompleteIntersection(gens)
        self.socle_degree = self.ci.socle_degree

    @property
    def shape(self):
        return (self.p, self.m, self.degrees)

    @cached_property
    def residue(self) -> MacaulayResidueMap:
        return MacaulayResidueMap(self.ci, "min_var")

    def vol(self, w) -> RationalFunction:
        return self.residue.vol_monomial(tuple(w))

    def aux_index(self, idx) -> int:
        if isinstance(idx, int):
            return idx
        i, r = idx
        return self.index_set.position[(int(i), tuple(r))]

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "degrees": list(self.degrees),
                "indeterminates": len(self.index_set), "socle_degree": self.socle_degree}


def build_generic_ci(p: int, m: int, degrees, cap: int = FEASIBILITY_CAP) -> GenericCI:
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != m or any(d < 1 for d in degrees):
        raise ValueError("need m positive degrees")
    size = sum(comb(d + m - 1, m - 1) for d in degrees)
    if size > cap:
        raise FeasibilityCapExceeded(f"index set has {size} > {cap} indeterminates")
    return GenericCI(p, m, degrees)


def generic_vol(gci: GenericCI, w) -> RationalFunction:
    """``vol`` of the monomial ``w`` (exponent tuple) over ``K``."""
    w = tuple(w)
    if sum(w) != gci.socle_degree:
        raise DegreeMismatch(f"deg w = {sum(w)}, socle degree is {gci.socle_degree}")
    return gci.vol(w)


def _resolve(f: RationalFunction, idx) -> int:
    if isinstance(idx, int):
        return idx
    i, r = idx
    return f.ring.names.index(_aux_name(i, r))


def partial_derivative(f: RationalFunction, idx) -> RationalFunction:
    """``d f / d a_{i,r}``; ``idx`` is a pair ``(i, r)`` or a variable index."""
    return f.derivative(_resolve(f, idx))


def diff_operator(f: RationalFunction, I) -> RationalFunction:
    entries = I.entries if isinstance(I, DiffMultiset) else I
    for idx in entries:
        if f.is_zero():
            break
        f = partial_derivative(f, idx)
    return f


def differential_rhs(gci: GenericCI, s_vec, I: DiffMultiset) -> RationalFunction:
    """``(-1)^m (vol o trunc)((x^s x^I x^{(1-p)1})^{1/p})^p``; the zero root
    and truncated roots contribute 0."""
    p, m = gci.p, gci.m
    if not I.satisfies_property_star(p, m):
        raise PropertyStarViolated(f"{I} does not have p-1 entries per generator")
    s_vec = tuple(s_vec)
    if sum(s_vec) != gci.socle_degree or len(s_vec) != m:
        raise DegreeMismatch("s_vec must have length m and total degree s")
    xI = I.x_exponent(m)
    exponent = tuple(a + b + 1 - p for a, b in zip(s_vec, xI))
    root = p_th_root(exponent, p)
    K = gci.K
    if root is None:
        return K.zero
    truncated = laurent_truncate(LaurentPolynomial(gci.ring, {root: K.one}))
    if truncated.is_zero():
        return K.zero
    (mono,) = truncated.terms
    value = gci.vol(mono).frobenius()
    return -value if m % 2 else value


def verify_differential(gci: GenericCI):
    """Exhaustive check over every ``s_vec`` of degree ``s`` and every
    Property-(*) multiset."""
    witnesses = []
    count = 0
    multisets = property_star_multisets(gci.index_set, gci.p)
    for s_vec in monomials_of_degree(gci.m, gci.socle_degree):
        base = gci.vol(s_vec)
        for I in multisets:
            lhs = diff_operator(base, I)
            rhs = differential_rhs(gci, s_vec, I)
            count += 1
            if lhs != rhs:
                witnesses.append({"s_vec": list(s_vec), "I": I.to_json(),
                                  "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return make_report("differential", witnesses, gci.to_json(),
                       {"identities_checked": count, "multisets": len(multisets)})


def verify_wilson_expansion(gci: GenericCI):
    """Symbolic check of ``prod g_i^{p-1} = (-1)^m sum_I x^I a^I / I!`` in the
    polynomial ring over both the ``x`` and the ``a`` variables."""
    p, m = gci.p, gci.m
    F = gci.base_field
    n_aux = len(gci.index_set)
    big = PolyRing(F, m + n_aux, [f"x{i + 1}" for i in range(m)] + gci.index_set.names())
    lhs = big.one()
    for i in range(1, m + 1):
        g = big.zero()
        for r in gci.index_set.per_generator[i]:
            e = [0] * (m + n_aux)
            e[:m] = r
            e[m + gci.index_set.position[(i, tuple(r))]] += 1
            g = g + big.monomial(e)
        lhs = lhs * g ** (p - 1)
    terms = {}
    sign = F.from_int((-1) ** m)
    for I in property_star_multisets(gci.index_set, p):
        e = list(I.x_exponent(m)) + [0] * n_aux
        for i, r in I.entries:
            e[m + gci.index_set.position[(i, r)]] += 1
        e = tuple(e)
        c = F.mul(sign, F.inv(F.from_int(I.factorial())))
        terms[e] = F.add(terms.get(e, 0), c)
    rhs = Polynomial(big, terms)
    witnesses = []
    if lhs != rhs:
        diff = lhs - rhs
        witnesses.append({"difference_terms": len(diff), "sample": diff.format()[:200]})
    return make_report("wilson_expansion", witnesses, gci.to_json(),
                       {"terms": len(lhs)})


def derivative_delta_check(gci: GenericCI, multisets=None):
    """``d^I (prod_{I'} a) = I! * delta_{I,I'}`` over pairs of multisets of
    equal length (Property-(*) multisets by default)."""
    F = gci.base_field
    multisets = multisets if multisets is not None else property_star_multisets(
        gci.index_set, gci.p)
    witnesses = []
    for Ip in multisets:
        mono = gci.aux_ring.one()
        for idx in Ip.entries:
            mono = mono * gci.aux_ring.gen(gci.aux_index(idx))
        f = RationalFunction(mono)
        for I in multisets:
            if len(I) != len(Ip):
                continue
            got = diff_operator(f, I)
            want = gci.K.from_int(I.factorial() if I == Ip else 0)
            if got != want:
                witnesses.append({"I": I.to_json(), "I_prime": Ip.to_json(),
                                  "got": got.to_json(), "expected": F.from_int(
                                      I.factorial() if I == Ip else 0)})
    return make_report("derivative_delta", witnesses, gci.to_json(),
                       {"pairs": len(multisets) ** 2})


# --- specialization -----------------------------------------------------

def specialize_generators(gci: GenericCI, field, values) -> CompleteIntersection:
    """Substitute raw elements of ``field`` for the auxiliary indeterminates.

    Raises ``ValueError`` if a generator becomes zero.
    """
    ring = PolyRing(field, gci.m)
    gens = []
    for i in range(1, gci.m + 1):
        terms = {}
        for r in gci.index_set.per_generator[i]:
            terms[tuple(r)] = values[gci.index_set.position[(i, tuple(r))]]
        gens.append(Polynomial(ring, terms))
    return CompleteIntersection(gens)


def specialization_agreement(gci: GenericCI, field, seed: int, max_tries: int = 100):
    """Compare the generic ``vol`` at a random point with the concrete ``vol``
    (Groebner backend) of the specialized ideal on every degree-``s`` monomial."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        values = [field.random_element(rng) for _ in gci.index_set]
        try:
            ci = specialize_generators(gci, field, values)
        except ValueError:
            continue
        if not hilbert_check(ci).passed:
            continue
        generic_values = {u: gci.vol(u).evaluate(field, values)
                          for u in monomials_of_degree(gci.m, gci.socle_degree)}
        if any(v is None for v in generic_values.values()):
            continue
        rm = build_residue_map(ci, "min_var")
        witnesses = []
        for u, gv in generic_values.items():
            cv = rm.vol_monomial(u)
            if cv != gv:
                witnesses.append({"w": list(u), "generic": field.to_json(gv),
                                  "concrete": field.to_json(cv)})
        return make_report("specialization", witnesses, gci.to_json(), {
            "seed": seed, "field": field.describe(),
            "point": [field.to_json(v) for v in values],
        })
    raise RegularSequenceViolation(f"no usable specialization in {max_tries} tries")
