"""Exact arithmetic in prime fields F_p and extension fields F_{p^k}.

Field objects work on *raw* values so that polynomial kernels can avoid
wrapper overhead: a prime-field element is an ``int`` in ``[0, p)``, an
extension-field element is an ``int`` in ``[0, p^k)`` whose base-``p`` digits
are the coefficients ``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` modulo the
defining polynomial.  :class:`FieldElement` wraps a raw value together with
its parent for the public API.
"""

from __future__ import annotations

import random

from .errors import DivisionByZero, MixedParents, NotPrime

__all__ = [
    "PrimeField",
    "ExtensionField",
    "FieldElement",
    "build_extension",
    "field_arith",
    "frobenius",
    "is_prime",
]

# Tables of discrete logarithms are built for fields up to this order.
_TABLE_LIMIT = 1 << 13


def is_prime(n: int) -> bool:
    """Trial division; inputs are desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- univariate polynomials over F_p as coefficient lists, low degree first ---

def _utrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _umul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _utrim([c % p for c in out])


def _umod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _utrim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _utrim(a)
    return a


def _ugcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        a, b = b, _umod(a, b, p)
    return a


def _upowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _umod(base, m, p)
    while e:
        if e & 1:
            result = _umod(_umul(result, base, p), m, p)
        base = _umod(_umul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p (coefficients low first).

    Degrees up to 3 are decided by the absence of roots in F_p.  In general
    the Ben-Or test is used: ``gcd(f, x^{p^i} - x) = 1`` for ``i <= k/2``.
    """
    k = len(modulus) - 1
    f = list(modulus)
    if k < 1:
        return False
    if k == 1:
        return True
    if k <= 3:
        for r in range(p):
            v = 0
            for c in reversed(f):
                v = (v * r + c) % p
            if v == 0:
                return False
        return True
    x = [0, 1]
    xp = x
    for _ in range(k // 2):
        xp = _upowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _ugcd(f, _utrim(diff), p)
        if len(g) > 1:
            return False
    return True


class PrimeField:
    """The prime field F_p."""

    is_prime_field = True
    degree = 1

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __str__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def wrap(self, raw) -> FieldElement:
        return FieldElement(self, raw)

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, self.from_int(value))

    # raw arithmetic
    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def frob(self, a: int) -> int:
        return pow(a, self.p, self.p)

    def elements(self):
        return range(self.p)

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def to_json(self, a: int):
        return a

    def format(self, a: int) -> str:
        return str(a)

    def describe(self) -> dict:
        return {"p": self.p, "k": 1}


class ExtensionField:
    """F_{p^k} = F_p[t]/(modulus) with elements encoded as base-p integers."""

    is_prime_field = False

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        p, k = int(p), int(k)
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.degree = k
        self.modulus = modulus
        self.characteristic = p
        self.order = p**k
        self.zero = 0
        self.one = 1
        self._log = self._exp = None
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"ExtensionField({self.p}, {self.k}, {self.modulus})"

    def __str__(self):
        return f"F_{self.p}^{self.k}"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("E", self.p, self.modulus))

    def wrap(self, raw) -> FieldElement:
        return FieldElement(self, raw)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.from_int(value))

    # encoding
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            rem = _umod([int(c) for c in coeffs], list(self.modulus), self.p)
            coeffs = rem
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + int(c) % self.p
        return v

    def from_int(self, n: int) -> int:
        """Embed an integer through the prime subfield."""
        return int(n) % self.p

    @property
    def generator(self) -> int:
        """The class of t."""
        return self.from_coeffs([0, 1])

    # raw arithmetic
    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            out += (-x % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        prod = _umul(self.digits(a), self.digits(b), self.p)
        return self.from_coeffs(_umod(prod, list(self.modulus), self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        if self._log is not None:
            return self._exp[self._log[a] * n % (self.order - 1)]
        result = 1
        while n:
            if n & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self):
        return range(self.order)

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def to_json(self, a: int):
        return self.digits(a) if self.k > 1 else a

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.digits(a)):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "(" + " + ".join(terms) + ")" if len(terms) > 1 else (terms[0] if terms else "0")

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def _build_tables(self):
        q = self.order
        if q == 2 or self.k == 1:
            # multiplicative group of the prime field
            g = next(x for x in range(1, q) if all(
                pow(x, (q - 1) // r, q) != 1 for r in _prime_factors(q - 1))) if q > 2 else 1
            exp = [pow(g, i, q) for i in range(q - 1)]
        else:
            factors = _prime_factors(q - 1)
            g = None
            for cand in range(2, q):
                if all(self._pow_poly(cand, (q - 1) // r) != 1 for r in factors):
                    g = cand
                    break
            exp = [1]
            for _ in range(q - 2):
                exp.append(self._mul_poly(exp[-1], g))
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp + exp
        self._log = log

    def _pow_poly(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            n >>= 1
        return result


def build_extension(p: int, k: int, seed: int = 0) -> ExtensionField:
    """Deterministically pick a monic irreducible modulus of degree ``k``.

    Candidates ``t^k + c_{k-1} t^{k-1} + ... + c_0`` are scanned in order of the
    integer code ``sum c_i p^i``.  Seed 0 starts the scan at code 0; other
    seeds start at a seeded random offset and wrap around.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        return ExtensionField(p, 1, (0, 1))
    count = p**k
    start = 0 if seed == 0 else random.Random(seed).randrange(count)
    for step in range(count):
        code = (start + step) % count
        low = []
        c = code
        for _ in range(k):
            c, r = divmod(c, p)
            low.append(r)
        modulus = tuple(low) + (1,)
        if low[0] != 0 and is_irreducible(modulus, p):
            return ExtensionField(p, k, modulus)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldElement:
    """An element of a field together with its parent."""

    __slots__ = ("parent", "value")

    def __init__(self, parent, value):
        self.parent = parent
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.parent != self.parent:
                raise MixedParents(f"{self.parent} vs {other.parent}")
            return other.value
        if isinstance(other, int):
            return self.parent.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.parent, v)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.parent.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.parent.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.parent.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.parent.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.parent.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.parent.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.parent.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.parent.pow(self.value, n))

    def inverse(self):
        return self._wrap(self.parent.inv(self.value))

    def frobenius(self):
        return self._wrap(self.parent.frob(self.value))

    def is_zero(self) -> bool:
        return self.parent.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.parent == other.parent and self.parent.is_zero(
                self.parent.sub(self.value, other.value))
        if isinstance(other, int):
            return self.parent.is_zero(self.parent.sub(self.value, self.parent.from_int(other)))
        return NotImplemented

    def __hash__(self):
        return hash((self.parent, self.value))

    @property
    def coeffs(self) -> list:
        """Canonical coefficient vector (length 1 for prime fields)."""
        if isinstance(self.parent, ExtensionField):
            return self.parent.digits(self.value)
        return [self.value]

    def to_json(self):
        return self.parent.to_json(self.value)

    def __repr__(self):
        return f"{self.parent.format(self.value)} in {self.parent}"

    def __str__(self):
        return self.parent.format(self.value)


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div} to two elements of one field."""
    if a.parent != b.parent:
        raise MixedParents(f"{a.parent} vs {b.parent}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: FieldElement) -> FieldElement:
    return a.frobenius()
