"""Sparse multivariate polynomials over a field.

Monomials are exponent tuples.  A :class:`Polynomial` stores a dict mapping
exponent tuples to nonzero raw coefficients of its ring's field.  Terms are
ordered graded reverse lexicographically with ``x1 > x2 > ... > xm``.
"""

from __future__ import annotations

import os
from itertools import combinations
from math import comb

from .algebra import FieldElement
from .errors import DegreeCapExceeded, DegreeMismatch, Inhomogeneous, MixedAmbient

__all__ = [
    "PolyRing",
    "Polynomial",
    "LaurentPolynomial",
    "grevlex_key",
    "monomials_of_degree",
    "contraction",
    "p_th_root",
    "laurent_truncate",
    "graded_component",
    "max_degree",
]

DEFAULT_MAX_DEGREE = 512


def max_degree() -> int:
    """Total-degree cap; ``CIRES_MAX_DEGREE`` overrides the default 512."""
    env = os.environ.get("CIRES_MAX_DEGREE")
    return int(env) if env else DEFAULT_MAX_DEGREE


def grevlex_key(e: tuple[int, ...]):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomials_of_degree(m: int, d: int) -> list[tuple[int, ...]]:
    """All monic monomials of degree ``d`` in ``m`` variables, grevlex descending."""
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    out = []
    # stars and bars over the m-1 separators
    for bars in combinations(range(d + m - 1), m - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(d + m - 1 - prev - 1)
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    assert len(out) == comb(d + m - 1, m - 1)
    return out


class PolyRing:
    """The polynomial ring ``field[x1..xm]``."""

    def __init__(self, field, nvars: int, names=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.field = field
        self.nvars = nvars
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(nvars))

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.nvars == other.nvars
                and self.field == other.field and self.names == other.names)

    def __hash__(self):
        return hash((self.field, self.nvars, self.names))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(self.field.one)

    def constant(self, c) -> Polynomial:
        return self.monomial((0,) * self.nvars, c)

    def gen(self, i: int) -> Polynomial:
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e))

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=None) -> Polynomial:
        exps = tuple(int(x) for x in exps)
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector {exps} has wrong length for {self}")
        if any(x < 0 for x in exps):
            raise ValueError("negative exponent in a polynomial")
        c = self.field.one if coeff is None else self._raw(coeff)
        return Polynomial(self, {exps: c})

    def from_terms(self, terms) -> Polynomial:
        """Build from ``(coeff, exponents)`` pairs, summing repeated monomials."""
        f = self.field
        out: dict = {}
        for c, e in terms:
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            c = self._raw(c)
            out[e] = f.add(out[e], c) if e in out else c
        return Polynomial(self, out)

    def linear_form(self, coeffs=None) -> Polynomial:
        """``sum c_i x_i``; all-ones by default."""
        coeffs = coeffs or [1] * self.nvars
        return self.from_terms((c, tuple(int(i == j) for j in range(self.nvars)))
                               for i, c in enumerate(coeffs))

    def _raw(self, c):
        if isinstance(c, FieldElement):
            if c.parent != self.field:
                raise MixedAmbient("coefficient from another field")
            return c.value
        if isinstance(c, int):
            return self.field.from_int(c)
        return c


class Polynomial:
    """An immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict, _clean: bool = False):
        self.ring = ring
        if not _clean:
            iz = ring.field.is_zero
            terms = {e: c for e, c in terms.items() if not iz(c)}
        self.terms = terms
        self._hash = None
        if terms:
            cap = max_degree()
            if max(sum(e) for e in terms) > cap:
                raise DegreeCapExceeded(f"total degree exceeds cap {cap}")

    # -- queries --
    @property
    def field(self):
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self):
        """Common degree of all terms, ``None`` if inhomogeneous (0 for zero)."""
        degs = {sum(e) for e in self.terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def coeff(self, exps):
        """Raw coefficient of a monomial (field zero if absent)."""
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def coefficient(self, exps) -> FieldElement:
        return FieldElement(self.ring.field, self.coeff(exps))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self):
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    # -- arithmetic --
    def _check(self, other):
        if not isinstance(other, Polynomial):
            return False
        if other.ring != self.ring:
            raise MixedAmbient(f"{self.ring} vs {other.ring}")
        return True

    def _coerce_scalar(self, c):
        if isinstance(c, FieldElement):
            if c.parent != self.ring.field:
                raise MixedAmbient("scalar from another field")
            return c.value
        if isinstance(c, int):
            return self.ring.field.from_int(c)
        return NotImplemented

    def __add__(self, other):
        if not self._check(other):
            c = self._coerce_scalar(other)
            if c is NotImplemented:
                return c
            other = self.ring.constant(c)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out[e], c) if e in out else c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {e: neg(c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if not self._check(other):
            c = self._coerce_scalar(other)
            if c is NotImplemented:
                return c
            other = self.ring.constant(c)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Polynomial:
        """Multiply by a scalar (raw value or :class:`FieldElement`)."""
        f = self.ring.field
        if isinstance(c, FieldElement):
            c = self.ring._raw(c)
        if f.is_zero(c):
            return self.ring.zero()
        mul = f.mul
        return Polynomial(self.ring, {e: mul(v, c) for e, v in self.terms.items()}, _clean=True)

    def mul_monomial(self, exps, c=None) -> Polynomial:
        f = self.ring.field
        if c is None:
            return Polynomial(self.ring, {_mono_mul(e, exps): v for e, v in self.terms.items()},
                              _clean=True)
        if f.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {_mono_mul(e, exps): f.mul(v, c)
                                      for e, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if not self._check(other):
            c = self._coerce_scalar(other)
            if c is NotImplemented:
                return c
            return self.scale(c)
        if not self.terms or not other.terms:
            return self.ring.zero()
        cap = max_degree()
        if self.degree() + other.degree() > cap:
            raise DegreeCapExceeded(f"product degree exceeds cap {cap}")
        f = self.ring.field
        out: dict = {}
        if f.is_prime_field:
            p = f.p
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            return Polynomial(self.ring, {e: c % p for e, c in out.items() if c % p})
        add, mul = f.add, f.mul
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = mul(c1, c2)
                out[e] = add(out[e], v) if e in out else v
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power")
        if n and self.degree() * n > max_degree():
            raise DegreeCapExceeded(f"power degree exceeds cap {max_degree()}")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius_twist(self) -> Polynomial:
        """Apply Frobenius to coefficients and multiply exponents by ``p``.

        In characteristic ``p`` this equals ``self ** p`` but avoids the
        expansion.
        """
        f = self.ring.field
        p = f.characteristic
        if self.degree() * p > max_degree():
            raise DegreeCapExceeded(f"power degree exceeds cap {max_degree()}")
        return Polynomial(self.ring, {tuple(p * x for x in e): f.frob(c)
                                      for e, c in self.terms.items()}, _clean=True)

    def map_coefficients(self, fn, ring: PolyRing | None = None) -> Polynomial:
        ring = ring or self.ring
        return Polynomial(ring, {e: fn(c) for e, c in self.terms.items()})

    def derivative(self, i: int) -> Polynomial:
        """Formal partial derivative in the ``i``-th variable (0-based)."""
        f = self.ring.field
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            if n == 0:
                continue
            v = f.mul(c, f.from_int(n))
            if f.is_zero(v):
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = v
        return Polynomial(self.ring, out, _clean=True)

    def evaluate(self, point, field=None, embed=None):
        """Evaluate at a point of raw values of ``field`` (default: own field).

        ``embed`` maps own raw coefficients into ``field``; by default
        coefficients are taken to be integers of the prime subfield.
        """
        field = field or self.ring.field
        embed = embed or (field.from_int if field is not self.ring.field else (lambda c: c))
        total = field.zero
        for e, c in self.terms.items():
            v = embed(c)
            for x, k in zip(point, e):
                if k:
                    v = field.mul(v, field.pow(x, k))
            total = field.add(total, v)
        return total

    # -- comparison / display --
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring or len(other.terms) != len(self.terms):
                return False
            f = self.ring.field
            for e, c in self.terms.items():
                if e not in other.terms or not f.is_zero(f.sub(c, other.terms[e])):
                    return False
            return True
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return self.format()

    def format(self) -> str:
        if not self.terms:
            return "0"
        f = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = f.format(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> list:
        f = self.ring.field
        return [{"coeff": f.to_json(c), "exponents": list(e)} for e, c in self.sorted_terms()]


class LaurentPolynomial:
    """Polynomial whose exponent vectors may contain negative entries.

    Only the truncation pipeline of :mod:`cires.generic` builds these.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        iz = ring.field.is_zero
        self.ring = ring
        self.terms = {tuple(e): c for e, c in terms.items() if not iz(c)}

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> LaurentPolynomial:
        return cls(f.ring, dict(f.terms))

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        if other.ring != self.ring:
            raise MixedAmbient("Laurent polynomials from different rings")
        fld = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = fld.add(out[e], c) if e in out else c
        return LaurentPolynomial(self.ring, out)

    def scale(self, c) -> LaurentPolynomial:
        mul = self.ring.field.mul
        return LaurentPolynomial(self.ring, {e: mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.ring == other.ring and _dict_eq(self.ring.field, self.terms, other.terms)

    def __repr__(self):
        return f"LaurentPolynomial({self.terms!r})"


def _dict_eq(f, a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(f.is_zero(f.sub(a.get(k, f.zero), b.get(k, f.zero))) for k in keys)


def contraction(u: Polynomial, w: Polynomial) -> FieldElement:
    """Bilinear pairing making distinct monic monomials orthonormal."""
    if u.ring != w.ring:
        raise MixedAmbient("contraction across rings")
    du, dw = u.homogeneous_degree(), w.homogeneous_degree()
    if du is None or dw is None:
        raise Inhomogeneous("contraction needs homogeneous arguments")
    if u.terms and w.terms and du != dw:
        raise DegreeMismatch(f"degrees {du} and {dw} differ")
    f = u.ring.field
    small, big = (u, w) if len(u.terms) <= len(w.terms) else (w, u)
    total = f.zero
    for e, c in small.terms.items():
        d = big.terms.get(e)
        if d is not None:
            total = f.add(total, f.mul(c, d))
    return FieldElement(f, total)


def p_th_root(u: tuple[int, ...], p: int):
    """The monic Laurent monomial ``v`` with ``v^p = u``, or ``None`` (zero)."""
    if any(x % p for x in u):
        return None
    return tuple(x // p for x in u)


def laurent_truncate(f: LaurentPolynomial) -> Polynomial:
    """Drop every term having a negative exponent."""
    return Polynomial(f.ring, {e: c for e, c in f.terms.items() if min(e, default=0) >= 0},
                      _clean=True)


def graded_component(f: Polynomial, d: int) -> Polynomial:
    return Polynomial(f.ring, {e: c for e, c in f.terms.items() if sum(e) == d}, _clean=True)
