"""Certify p-anisotropy and the Strong Lefschetz Property for generic
complete intersections through random specialization and exact ranks.

Throughout, ``l = x1 + ... + xm``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from .algebra import build_extension
from .errors import (DegreeOutOfRange, FeasibilityCapExceeded, SpecializationExhausted,
                     WrongCharacteristic)
from .generic import IndexSet, build_generic_ci, specialize_generators
from .linalg import rank, transpose
from .polyring import Polynomial
from .quotient import (CompleteIntersection, QuotientStructure, hilbert_check,
                       macaulay_vol_solver)
from .report import PASS, make_report
from .residue import build_residue_map

__all__ = [
    "Shape",
    "SpecializedInstance",
    "Certificate",
    "specialize",
    "semilinear_power_matrix",
    "multiplication_matrix",
    "check_anisotropy",
    "check_power_sweep",
    "check_injectivity",
    "check_slp_char2",
    "certify_generic",
    "kernel_search",
    "pairing_matrix",
]

CERTIFIED = "CERTIFIED"
INCONCLUSIVE = "INCONCLUSIVE"
MAX_REJECTIONS = 100

CERTIFICATE_REASONING = (
    "Every rank condition checked is the nonvanishing of some minor, a rational "
    "function of the generator coefficients. A witness point where the minor is "
    "nonzero shows it is not identically zero, so the condition holds with the "
    "coefficients taken as independent indeterminates (lower semicontinuity of rank). "
    "Frobenius-semilinear maps over the coefficient field K are injective iff their "
    "image vectors are independent over the subfield of p-th powers; K-linear "
    "independence at the witness point suffices, and otherwise the vectors are "
    "expanded in the p-basis of K over its p-th powers before the rank test. "
    "This says nothing about any other fixed finite-field instance."
)


@dataclass(frozen=True)
class Shape:
    p: int
    m: int
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.degrees) != self.m:
            raise ValueError("need one degree per variable")

    @property
    def socle_degree(self) -> int:
        return sum(self.degrees) - self.m

    def to_json(self):
        return {"p": self.p, "m": self.m, "degrees": list(self.degrees)}


@dataclass
class SpecializedInstance:
    base: Shape
    field: object
    assignment: dict
    ci: CompleteIntersection
    seed: int
    quotient: QuotientStructure = dc_field(repr=False, default=None)

    def __post_init__(self):
        if self.quotient is None:
            self.quotient = QuotientStructure(self.ci)

    @property
    def values(self) -> list:
        """Raw coefficient values in index-set order."""
        return [v.value for v in self.assignment.values()]

    def generic(self):
        """The generic instance of the same shape, or ``None`` beyond the cap."""
        if not hasattr(self, "_generic"):
            try:
                self._generic = build_generic_ci(self.base.p, self.base.m, self.base.degrees)
            except FeasibilityCapExceeded:
                self._generic = None
        return self._generic

    def to_json(self):
        return {"shape": self.base.to_json(), "field": self.field.describe(), "seed": self.seed,
                "generators": [g.to_json() for g in self.ci.generators]}


@dataclass
class Certificate:
    property: str
    shape: Shape
    witness_seed: int | None
    status: str
    trials_run: int = 0
    reports: list = dc_field(default_factory=list)
    reasoning: str = CERTIFICATE_REASONING

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "shape": self.shape.to_json(),
            "witness_seed": self.witness_seed,
            "status": self.status,
            "trials_run": self.trials_run,
            "reasoning": self.reasoning,
            "reports": [r.to_dict() for r in self.reports],
        }


def _as_shape(shape) -> Shape:
    if isinstance(shape, Shape):
        return shape
    p, m, degrees = shape
    return Shape(int(p), int(m), tuple(degrees))


def specialize(shape, k: int = 8, seed: int = 0) -> SpecializedInstance:
    """Uniformly random coefficients in F_{p^k}, resampled until regular."""
    shape = _as_shape(shape)
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    field = build_extension(shape.p, k, 0)
    index = IndexSet(shape.m, shape.degrees)
    rng = random.Random(seed)
    shim = _ShapeShim(shape, index)
    for _ in range(MAX_REJECTIONS):
        values = [field.random_element(rng) for _ in index]
        try:
            ci = specialize_generators(shim, field, values)
        except ValueError:
            continue
        q = QuotientStructure(ci)
        if hilbert_check(ci, q).passed:
            assignment = {e: field.wrap(v) for e, v in zip(index.entries, values)}
            return SpecializedInstance(shape, field, assignment, ci, seed, q)
    raise SpecializationExhausted(f"{MAX_REJECTIONS} rejections for {shape}")


class _ShapeShim:
    """The parts of a generic instance that substitution needs."""

    def __init__(self, shape: Shape, index: IndexSet):
        self.m = shape.m
        self.index_set = index


def _quotient(inst) -> QuotientStructure:
    return inst.quotient if isinstance(inst, SpecializedInstance) else inst


def _ell(q: QuotientStructure) -> Polynomial:
    return q.ring.linear_form()


def semilinear_power_matrix(q, i: int, k: int):
    """Columns: coordinates of ``b^p l^k`` for the standard monomials ``b`` of
    degree ``i``, over the standard monomials of degree ``p*i + k``.

    Over a finite field ``c -> c^p`` is bijective, so the semilinear map
    ``alpha -> alpha^p l^k`` is injective iff these columns are independent.
    """
    q = _quotient(q)
    p = q.field.characteristic
    s = q.socle_degree
    if i < 0 or k < 0 or p * i + k > s:
        raise DegreeOutOfRange(f"need p*i + k <= s, got i={i}, k={k}, s={s}")
    lk = _ell(q) ** k
    cols = [q.coordinates(q.ring.monomial(b) ** p * lk, p * i + k)
            for b in q.standard_monomials(i)]
    return transpose(cols) if cols else []


def multiplication_matrix(q, i: int, k: int):
    """Matrix of multiplication by ``l^k`` from degree ``i`` to ``i + k``."""
    q = _quotient(q)
    if i < 0 or k < 0 or i + k > q.socle_degree + 1:
        raise DegreeOutOfRange(f"degrees {i}->{i + k} outside the quotient")
    lk = _ell(q) ** k
    cols = [q.coordinates(q.ring.monomial(b) * lk, i + k) for b in q.standard_monomials(i)]
    return transpose(cols) if cols else []


def _full_column_rank(matrix, ncols: int, field) -> tuple[bool, int]:
    if ncols == 0:
        return True, 0
    if not matrix:
        return False, 0
    r = rank(matrix, field)
    return r == ncols, r


def _p_basis_matrix(gci, i: int, k: int):
    """Rows ``(c, e)``, columns the generic basis monomials ``b`` of degree ``i``.

    Entry: the ``p``-th root of the ``a^e`` component of the ``c``-coordinate of
    ``b^p l^k`` over the generic field ``K``, as a pair ``(Q, D)`` meaning ``Q/D``.
    Writing a coordinate ``N/D`` as ``N D^{p-1} / D^p`` and grouping the terms of
    ``N D^{p-1}`` by exponents mod ``p`` gives ``sum_e a^e (Q_e / D)^p``.
    Full K-rank of this matrix is equivalent to injectivity of the semilinear map.
    """
    cache = gci.__dict__.setdefault("_p_basis_cache", {})
    if (i, k) in cache:
        return cache[(i, k)]
    p = gci.p
    ring = gci.ring
    aux = gci.aux_ring
    src = macaulay_vol_solver(gci.ci, i).complement
    tgt = macaulay_vol_solver(gci.ci, p * i + k)
    lk = ring.linear_form() ** k
    columns = []
    for b in src:
        res = tgt.residual(ring.monomial(b) ** p * lk)
        col = {}
        for c, f in res.items():
            if f.is_zero():
                continue
            D = f.denominator
            groups = {}
            for e, coeff in (f.num * D ** (p - 1)).terms.items():
                key = tuple(x % p for x in e)
                groups.setdefault(key, {})[tuple(x // p for x in e)] = coeff
            for key, terms in groups.items():
                col[(c, key)] = (Polynomial(aux, terms), D)
        columns.append(col)
    rows = sorted({key for col in columns for key in col})
    cache[(i, k)] = (rows, columns)
    return rows, columns


def _generic_semilinear_rank(inst, i: int, k: int):
    """Rank of the p-basis matrix at the instance's coefficient point, or
    ``None`` when the shape is beyond the cap or a denominator vanishes."""
    gci = inst.generic()
    if gci is None:
        return None
    rows, columns = _p_basis_matrix(gci, i, k)
    F, point = inst.field, inst.values
    values = {}
    matrix = []
    for key in rows:
        row = []
        for col in columns:
            if key not in col:
                row.append(F.zero)
                continue
            Q, D = col[key]
            d = values.get(id(D))
            if d is None:
                d = values[id(D)] = D.evaluate(point, F)
            if F.is_zero(d):
                return None
            row.append(F.div(Q.evaluate(point, F), d))
        matrix.append(row)
    return _full_column_rank(matrix, len(columns), F)[1]


def _semilinear_injective(inst, i: int, k: int) -> dict:
    """Decide injectivity of ``alpha -> alpha^p l^k`` from degree ``i``.

    For a fixed finite-field quotient the column rank decides it.  For a
    specialization standing in for the generic instance, full finite-field rank
    already certifies the generic map; otherwise (typically when the source
    is larger than the target, where no map over a perfect field can be
    injective) the p-basis expansion over ``K`` is used when within the cap.
    """
    q = _quotient(inst)
    n = len(q.standard_monomials(i))
    ok, r = _full_column_rank(semilinear_power_matrix(q, i, k), n, q.field)
    out = {"degree": i, "power": k, "rank": r, "dim": n,
           "target_dim": len(q.standard_monomials(q.field.characteristic * i + k)),
           "route": "finite-field rank", "ok": ok, "decided": True}
    if ok or not isinstance(inst, SpecializedInstance):
        return out
    gr = _generic_semilinear_rank(inst, i, k)
    if gr is None:
        out.update(route="p-basis rank unavailable", decided=False)
        return out
    out.update(route="p-basis rank", rank=gr, ok=gr == n)
    return out


def _witness(res: dict) -> dict:
    return {key: res[key] for key in ("degree", "power", "rank", "dim", "target_dim", "route")}


def check_power_sweep(inst, max_k: int | None = None):
    """Injectivity of ``alpha -> alpha^p l^k`` for every ``(i, k)`` with
    ``p*i + k <= s`` (and ``k <= max_k`` when given).

    Pairs that can only be decided over ``K`` for a shape beyond the
    feasibility cap are listed as skipped rather than failed.
    """
    q = _quotient(inst)
    p, s = q.field.characteristic, q.socle_degree
    witnesses, checked, skipped, routes = [], [], [], {}
    for i in range(s // p + 1):
        for k in range(s - p * i + 1):
            if max_k is not None and k > max_k:
                break
            res = _semilinear_injective(inst, i, k)
            if not res["decided"]:
                skipped.append([i, k])
                continue
            checked.append([i, k])
            routes[res["route"]] = routes.get(res["route"], 0) + 1
            if not res["ok"]:
                witnesses.append(_witness(res))
    name = "power_sweep" if max_k is None else f"power_sweep_k<={max_k}"
    return make_report(name, witnesses, _instance_json(inst),
                       {"pairs": checked, "skipped_beyond_cap": skipped, "routes": routes})


def check_anisotropy(inst):
    """No nonzero ``alpha`` of degree ``i <= s/p`` has ``alpha^p = 0``."""
    q = _quotient(inst)
    p, s = q.field.characteristic, q.socle_degree
    witnesses, routes = [], []
    for i in range(s // p + 1):
        res = _semilinear_injective(inst, i, 0)
        routes.append([i, res["route"]])
        if not res["ok"]:
            witnesses.append(_witness(res))
    return make_report("anisotropy", witnesses, _instance_json(inst),
                       {"degrees": list(range(s // p + 1)), "routes": routes})


def check_injectivity(inst, i: int):
    """Multiplication by ``l^{s-p i}`` from degree ``i`` is injective.

    The linear rank decides the check.  The semilinear map
    ``alpha -> alpha^p l^{s-p i}`` is computed alongside and fails the check
    whenever it is decided non-injective; when it cannot be decided (a
    specialization beyond the generic feasibility cap) this is recorded.
    """
    q = _quotient(inst)
    p, s = q.field.characteristic, q.socle_degree
    if i < 0 or p * i > s:
        raise DegreeOutOfRange(f"need 0 <= i <= s/p, got i={i}, s={s}, p={p}")
    k = s - p * i
    n = len(q.standard_monomials(i))
    lin_ok, lin_r = _full_column_rank(multiplication_matrix(q, i, k), n, q.field)
    semi = _semilinear_injective(inst, i, k)
    witnesses = []
    if not lin_ok:
        witnesses.append({"map": "linear", "degree": i, "power": k, "rank": lin_r, "dim": n})
    if semi["decided"] and not semi["ok"]:
        witnesses.append({"map": "semilinear", **_witness(semi)})
    return make_report("injectivity", witnesses, _instance_json(inst),
                       {"degree": i, "power": k, "source_dim": n,
                        "target_dim": len(q.standard_monomials(i + k)),
                        "semilinear_route": semi["route"],
                        "semilinear_decided": semi["decided"]})


def check_slp_char2(inst):
    """For ``p = 2``: ``l^{s-2i}`` maps degree ``i`` bijectively onto ``s-i``."""
    q = _quotient(inst)
    p, s = q.field.characteristic, q.socle_degree
    if p != 2:
        raise WrongCharacteristic(f"SLP certificate route needs p = 2, got {p}")
    witnesses, dims = [], []
    for i in range(s // 2 + 1):
        k = s - 2 * i
        n = len(q.standard_monomials(i))
        tgt = len(q.standard_monomials(i + k))
        ok, r = _full_column_rank(multiplication_matrix(q, i, k), n, q.field)
        dims.append([i, n, tgt])
        if not ok:
            witnesses.append({"degree": i, "power": k, "rank": r, "dim": n})
        elif n != tgt:
            witnesses.append({"degree": i, "power": k, "rank": r, "dim": n,
                              "reason": "source and target dimensions differ"})
    return make_report("slp", witnesses, _instance_json(inst), {"degree_dims": dims})


def _run_property(inst, prop: str):
    if prop == "slp":
        return [check_slp_char2(inst)]
    if prop == "anisotropy":
        return [check_anisotropy(inst), check_power_sweep(inst)]
    if prop == "injectivity":
        q = _quotient(inst)
        p = q.field.characteristic
        return [check_injectivity(inst, i) for i in range(q.socle_degree // p + 1)]
    raise ValueError(f"unknown property {prop!r}")


def certify_generic(shape, prop: str, trials: int = 5, k: int = 8, seed: int = 0) -> Certificate:
    """Run the property check on up to ``trials`` seeded specializations and
    certify on the first one where every check passes."""
    shape = _as_shape(shape)
    if trials < 1:
        raise ValueError("need at least one trial")
    if prop == "slp" and shape.p != 2:
        raise WrongCharacteristic(f"SLP certificate route needs p = 2, got {shape.p}")
    rng = random.Random(seed)
    trial_seeds = [rng.randrange(2**31) for _ in range(trials)]
    last = []
    for t, ts in enumerate(trial_seeds, start=1):
        inst = specialize(shape, k, ts)
        reports = _run_property(inst, prop)
        last = reports
        if all(r.status == PASS for r in reports):
            return Certificate(prop, shape, ts, CERTIFIED, t, reports)
    return Certificate(prop, shape, None, INCONCLUSIVE, trials, last)


def kernel_search(q, i: int, k: int):
    """Brute-force search for nonzero ``alpha`` of degree ``i`` with
    ``alpha^p l^k = 0`` in the quotient.  Returns the coefficient vector of
    the first such ``alpha`` (over the standard monomials) or ``None``."""
    q = _quotient(q)
    F = q.field
    p = F.characteristic
    basis = q.standard_monomials(i)
    lk = _ell(q) ** k
    ring = q.ring
    for coeffs in product(list(F.elements()), repeat=len(basis)):
        if all(c == 0 for c in coeffs):
            continue
        alpha = Polynomial(ring, {b: c for b, c in zip(basis, coeffs)})
        if q.normal_form(alpha ** p * lk).is_zero():
            return list(coeffs)
    return None


def pairing_matrix(inst, i: int):
    """``vol(b * l^{s-2i} * b')`` over standard monomials ``b, b'`` of degree ``i``."""
    q = _quotient(inst)
    rm = build_residue_map(q.ci, quotient=q)
    s = q.socle_degree
    lk = _ell(q) ** (s - 2 * i)
    basis = q.standard_monomials(i)
    return [[rm.vol_raw(q.ring.monomial(b) * q.ring.monomial(c) * lk) for c in basis]
            for b in basis]


def _instance_json(inst):
    if isinstance(inst, SpecializedInstance):
        return inst.to_json()
    return _quotient(inst).ci.to_json()
