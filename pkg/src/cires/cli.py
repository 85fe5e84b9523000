"""Command-line front end.

    cires verify {parseval|membership|vanish|frobdet} --input FILE [--out FILE] [--format json|text]
    cires differential --p P --m M --degrees D1,..,DM
    cires certify {slp|anisotropy|injectivity} --p P --m M --degrees ... [--trials N] [--ext-degree K] [--seed S]

Exit codes: 0 PASS/CERTIFIED, 1 FAIL/INCONCLUSIVE, 2 input or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import PrimeField, build_extension
from .errors import CiresError, ParseError, RegularSequenceViolation
from .generic import build_generic_ci, verify_differential
from .identities import (frobenius_det_check, verify_membership, verify_parseval,
                         verify_vanish, vol_functional)
from .lefschetz import certify_generic
from .polyring import PolyRing
from .quotient import CompleteIntersection, require_regular
from .residue import ResidueMap, coefficient_matrix

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
IDEAL_FIELDS = {"characteristic", "extension_degree", "num_vars", "generators"}
TERM_FIELDS = {"coeff", "exponents"}


# -- ideal files --

def _require_int(value, where: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {json.dumps(value)}")
    if minimum is not None and value < minimum:
        raise ParseError(f"{where}: must be >= {minimum}, got {value}")
    return value


def parse_ideal(text: str) -> dict:
    """Validate an ideal file and return it normalized (coefficients mod p)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    unknown = sorted(set(doc) - IDEAL_FIELDS)
    if unknown:
        raise ParseError(f"top level: unknown field(s) {', '.join(unknown)}")
    for key in ("characteristic", "num_vars", "generators"):
        if key not in doc:
            raise ParseError(f"top level: missing field {key!r}")
    p = _require_int(doc["characteristic"], "characteristic", 2)
    k = _require_int(doc.get("extension_degree", 1), "extension_degree", 1)
    m = _require_int(doc["num_vars"], "num_vars", 1)
    gens = doc["generators"]
    if not isinstance(gens, list):
        raise ParseError("generators: expected a list")
    if len(gens) != m:
        raise ParseError(f"generators: expected {m} (num_vars), got {len(gens)}")
    out = []
    for i, g in enumerate(gens):
        where = f"generators[{i}]"
        if not isinstance(g, list) or not g:
            raise ParseError(f"{where}: expected a nonempty list of terms")
        terms = []
        for j, t in enumerate(g):
            tw = f"{where}[{j}]"
            if not isinstance(t, dict):
                raise ParseError(f"{tw}: expected an object")
            extra = sorted(set(t) - TERM_FIELDS)
            if extra:
                raise ParseError(f"{tw}: unknown field(s) {', '.join(extra)}")
            if set(t) != TERM_FIELDS:
                raise ParseError(f"{tw}: need both 'coeff' and 'exponents'")
            c = _require_int(t["coeff"], f"{tw}.coeff")
            e = t["exponents"]
            if not isinstance(e, list) or len(e) != m:
                raise ParseError(f"{tw}.exponents: expected a list of {m} integers")
            e = [_require_int(x, f"{tw}.exponents[{n}]", 0) for n, x in enumerate(e)]
            terms.append({"coeff": c % p, "exponents": e})
        out.append(terms)
    return {"characteristic": p, "extension_degree": k, "num_vars": m, "generators": out}


def build_ideal(doc: dict) -> CompleteIntersection:
    """Construct the complete intersection, preserving generator order."""
    p, k, m = doc["characteristic"], doc["extension_degree"], doc["num_vars"]
    field = PrimeField(p) if k == 1 else build_extension(p, k, 0)
    ring = PolyRing(field, m)
    gens = []
    for i, g in enumerate(doc["generators"]):
        poly = ring.from_terms([(field.from_int(t["coeff"]), tuple(t["exponents"])) for t in g])
        if poly.is_zero():
            raise ParseError(f"generators[{i}]: reduces to zero mod {p}")
        gens.append(poly)
    return CompleteIntersection(gens)


def load_ideal(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    doc = parse_ideal(text)
    return doc, build_ideal(doc)


# -- reports --

def _document(command: dict, reports: list, status: str, **extra) -> dict:
    doc = {"tool_version": __version__, "input": command, "reports": reports, "status": status}
    doc.update(extra)
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _flatten(value, prefix: str, out: list):
    if isinstance(value, dict):
        if not value:
            out.append(f"{prefix} = {{}}")
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else key, out)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for n, v in enumerate(value):
            _flatten(v, f"{prefix}[{n}]", out)
    else:
        out.append(f"{prefix} = {json.dumps(value, sort_keys=True)}")


def render_text(doc: dict) -> str:
    """One ``path = json-value`` line per leaf; the JSON can be rebuilt from it."""
    lines = []
    _flatten(doc, "", lines)
    return "\n".join(lines) + "\n"


def _emit(doc: dict, args) -> None:
    text = render_text(doc) if getattr(args, "format", "json") == "text" else render_json(doc)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _status(reports) -> str:
    return "PASS" if all(r.passed for r in reports) else "FAIL"


# -- subcommands --

def cmd_verify(args) -> int:
    doc, ci = load_ideal(args.input)
    command = {"command": "verify", "subject": args.subject, "ideal": doc}
    if args.subject == "frobdet":
        reports = [frobenius_det_check(coefficient_matrix(ci, s)) for s in ("min_var", "max_var")]
    else:
        try:
            q = require_regular(ci)
        except RegularSequenceViolation as exc:
            _emit(_document(command, [exc.report.to_dict()], "ERROR", error=str(exc)), args)
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        rm = ResidueMap(q, coefficient_matrix(ci, args.strategy))
        if args.subject == "parseval":
            reports = [verify_parseval(rm)]
        elif args.subject == "membership":
            reports = [verify_membership(rm)]
        else:
            phi = vol_functional(rm)
            reports = [verify_vanish(g, ci.socle_degree, phi, samples=args.samples, seed=args.seed)
                       for g in ci.generators if g.homogeneous_degree() <= ci.socle_degree]
    status = _status(reports)
    _emit(_document(command, [r.to_dict() for r in reports], status), args)
    return EXIT_OK if status == "PASS" else EXIT_FAIL


def cmd_differential(args) -> int:
    command = {"command": "differential", "p": args.p, "m": args.m, "degrees": list(args.degrees)}
    gci = build_generic_ci(args.p, args.m, args.degrees)
    report = verify_differential(gci)
    status = _status([report])
    _emit(_document(command, [report.to_dict()], status,
                    identities_checked=report.details.get("identities_checked")), args)
    return EXIT_OK if status == "PASS" else EXIT_FAIL


def cmd_certify(args) -> int:
    command = {"command": "certify", "property": args.property, "p": args.p, "m": args.m,
               "degrees": list(args.degrees), "trials": args.trials,
               "ext_degree": args.ext_degree, "seed": args.seed}
    cert = certify_generic((args.p, args.m, tuple(args.degrees)), args.property,
                           trials=args.trials, k=args.ext_degree, seed=args.seed)
    data = cert.to_dict()
    reports = data.pop("reports")
    _emit(_document(command, reports, cert.status, certificate=data), args)
    return EXIT_OK if cert.certified else EXIT_FAIL


def _degrees(text: str) -> tuple:
    try:
        degrees = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(d < 1 for d in degrees):
        raise argparse.ArgumentTypeError("degrees must be >= 1")
    return degrees


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cires", description=__doc__.splitlines()[0] or None)
    parser.add_argument("--version", action="version", version=f"cires {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")

    v = sub.add_parser("verify", help="check an identity on an ideal file")
    v.add_argument("subject", choices=("parseval", "membership", "vanish", "frobdet"))
    v.add_argument("--input", required=True, help="ideal file (JSON)")
    v.add_argument("--strategy", choices=("min_var", "max_var"), default="min_var")
    v.add_argument("--samples", type=int, default=50, help="vanish: sampled monomials")
    v.add_argument("--seed", type=int, default=0)
    common(v)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("differential", help="check the differential identities over K")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--degrees", type=_degrees, required=True)
    common(d)
    d.set_defaults(func=cmd_differential)

    c = sub.add_parser("certify", help="certify a property of the generic instance")
    c.add_argument("property", choices=("slp", "anisotropy", "injectivity"))
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--degrees", type=_degrees, required=True)
    c.add_argument("--trials", type=int, default=5)
    c.add_argument("--ext-degree", type=int, default=8)
    c.add_argument("--seed", type=int, default=0)
    common(c)
    c.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "degrees", None) is not None and len(args.degrees) != args.m:
        print(f"error: --degrees needs {args.m} entries", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (CiresError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
