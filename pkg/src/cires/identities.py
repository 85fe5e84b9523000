"""Exact checks of the Parseval-Rayleigh identity and its supporting lemmas
over concrete finite-field complete intersections."""

from __future__ import annotations

import random
from math import comb

from .algebra import FieldElement
from .errors import DegreeMismatch, PreconditionViolated
from .polyring import Polynomial, contraction, monomials_of_degree
from .quotient import CompleteIntersection, QuotientStructure, hilbert_check
from .report import make_report
from .residue import CoefficientMatrix, _ResidueBase, socle_representative

__all__ = [
    "parseval_rhs",
    "verify_parseval",
    "verify_membership",
    "frobenius_det_check",
    "verify_vanish",
    "vol_functional",
]


def _fmt(field, raw):
    return field.to_json(raw) if hasattr(field, "to_json") else str(raw)


def _twisted(ring, u, p: int) -> Polynomial:
    """The monomial ``x^{(p-1)1} u^p``."""
    return ring.monomial(tuple(p - 1 + p * x for x in u))


def parseval_rhs(rm: _ResidueBase, w: Polynomial) -> FieldElement:
    """Right-hand side of the Parseval-Rayleigh identity at ``w``::

        sum_{u in M_s} (x^{(p-1)1} u^p  o  G w) * vol(u)^p,   G = prod g_i^{p-1}
    """
    d = w.homogeneous_degree()
    if d is None or (w.terms and d != rm.socle_degree):
        raise DegreeMismatch(f"expected a form of degree {rm.socle_degree}")
    field = rm.field
    p = field.characteristic
    Gw = rm.parseval_factor * w
    total = field.zero
    for u in rm.socle_monomials:
        c = contraction(_twisted(rm.ring, u, p), Gw)
        if not c.is_zero():
            total = field.add(total, field.mul(c.value, field.frob(rm.vol_monomial(u))))
    return FieldElement(field, total)


def verify_parseval(rm: _ResidueBase):
    """Compare ``vol(w)`` with :func:`parseval_rhs` for every monomial ``w`` of
    degree ``s``; monomials span ``R_s`` and both sides are linear."""
    field = rm.field
    witnesses = []
    for w in rm.socle_monomials:
        lhs = rm.vol_monomial(w)
        rhs = parseval_rhs(rm, rm.ring.monomial(w)).value
        if lhs != rhs:
            witnesses.append({"w": list(w), "lhs": _fmt(field, lhs), "rhs": _fmt(field, rhs)})
    return make_report("parseval", witnesses, rm.ci.to_json(),
                       {"checked": len(rm.socle_monomials), "backend": type(rm).__name__})


def verify_membership(rm: _ResidueBase):
    """Check ``G z0 - x^{(p-1)1} z0^p`` lies in ``(g_1^p, ..., g_m^p)``."""
    ci = rm.ci
    ring = ci.ring
    p = ci.field.characteristic
    J = CompleteIntersection([g ** p for g in ci.generators])
    qJ = QuotientStructure(J)
    hrep = hilbert_check(J, qJ)
    instance = ci.to_json()
    if not hrep.passed:
        return make_report("membership", [{"reason": "p-th powers fail hilbert_check",
                                           "hilbert": hrep.to_dict()}], instance)
    z0 = rm.z0
    lhs = rm.parseval_factor * z0
    rhs = ring.monomial((p - 1,) * ci.m) * (z0 ** p)
    nf = qJ.normal_form(lhs - rhs)
    witnesses = []
    if not nf.is_zero():
        witnesses.append({"normal_form": nf.format(), "lhs": lhs.format(), "rhs": rhs.format()})
    return make_report("membership", witnesses, instance, {
        "top_degree_of_power_quotient": J.socle_degree,
        "expression_degree": lhs.degree() if lhs else None,
    })


def frobenius_det_check(N: CoefficientMatrix):
    """``det N^{(p)} == (det N)^p`` with both sides expanded literally."""
    ring = N.entries[0][0].ring
    p = ring.field.characteristic
    left = socle_representative(N.frobenius_power(p))
    right = socle_representative(N) ** p
    witnesses = []
    if left != right:
        witnesses.append({"det_of_power": left.format(), "power_of_det": right.format()})
    return make_report("frobdet", witnesses, N.to_json(), {"p": p, "size": N.size})


def _phi_value(phi, u, field):
    v = phi.get(tuple(u), field.zero)
    return v.value if isinstance(v, FieldElement) else v


def verify_vanish(g: Polynomial, s: int, phi, samples: int = 50, seed: int = 0,
                  exhaustive_limit: int = 10_000):
    """Check the vanishing lemma for the functional ``phi`` on ``R_s``.

    ``phi`` maps degree-``s`` exponent tuples to field values (missing keys
    are zero) and must vanish on ``(g)_s``; this is validated first.  The
    identity is tested on every monomial ``v`` of the required degree when
    there are at most ``exhaustive_limit`` of them, otherwise on ``samples``
    seeded draws (half uniform, half of the form ``x^{(p-1)1} v0^p``, the only
    shape for which the sum is not trivially zero).
    """
    ring = g.ring
    field = ring.field
    m = ring.nvars
    p = field.characteristic
    d = g.homogeneous_degree()
    if d is None or g.is_zero():
        raise DegreeMismatch("g must be a nonzero form")
    if d > s:
        raise DegreeMismatch(f"deg g = {d} exceeds s = {s}")
    for h in monomials_of_degree(m, s - d):
        gh = g.mul_monomial(h)
        val = field.zero
        for e, c in gh.terms.items():
            val = field.add(val, field.mul(c, _phi_value(phi, e, field)))
        if not field.is_zero(val):
            raise PreconditionViolated(f"phi does not vanish on g*{h}")

    vdeg = m * (p - 1) + s * p - d * p
    count = comb(vdeg + m - 1, m - 1)
    if count <= exhaustive_limit:
        vs = monomials_of_degree(m, vdeg)
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        vs = []
        for k in range(samples):
            if k % 2 == 0 or s < d:
                vs.append(_random_monomial(rng, m, vdeg))
            else:
                v0 = _random_monomial(rng, m, s - d)
                vs.append(tuple(p - 1 + p * x for x in v0))
        mode = "sampled"

    gp = g ** p
    su = monomials_of_degree(m, s)
    frob_phi = {u: field.frob(_phi_value(phi, u, field)) for u in su}
    twisted = {u: _twisted(ring, u, p) for u in su}
    witnesses = []
    for v in vs:
        gpv = gp.mul_monomial(v)
        total = field.zero
        for u in su:
            if field.is_zero(frob_phi[u]):
                continue
            c = contraction(twisted[u], gpv)
            if not c.is_zero():
                total = field.add(total, field.mul(c.value, frob_phi[u]))
        if not field.is_zero(total):
            witnesses.append({"v": list(v), "lhs": _fmt(field, total), "rhs": 0})
    return make_report("vanish", witnesses, {"g": g.to_json(), "s": s}, {
        "v_degree": vdeg, "checked": len(vs), "mode": mode, "seed": seed,
    })


def _random_monomial(rng: random.Random, m: int, d: int) -> tuple:
    bars = sorted(rng.sample(range(d + m - 1), m - 1)) if m > 1 else []
    e, prev = [], -1
    for b in bars:
        e.append(b - prev - 1)
        prev = b
    e.append(d + m - 2 - prev)
    return tuple(e)


def vol_functional(rm: _ResidueBase) -> dict:
    """``vol`` as a dict on the monomials of degree ``s``."""
    return {u: rm.vol_monomial(u) for u in rm.socle_monomials}
