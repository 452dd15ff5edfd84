"""Command-line front end.

Subcommands: newton, series, poly, rational, puiseux, normalize, gcrd,
transcendence.  Input operators are JSON documents (path or "-" for
stdin); results go to stdout as JSON (default) or text.  Exit codes:
0 ok, 2 malformed input, 3 unsupported equation, 4 exponent overflow,
5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import errors as E
from .errors import (
    ExponentOverflowError,
    InputFormatError,
    InternalInvariantError,
    MahlerError,
    UnsupportedEquationError,
)
from .newton import lower_polygon, mu_nu, ramification_data, upper_polygon
from .normalize import gcrd_raw, normalization_content
from .operator import MahlerOperator, apply_to_poly, primitive_part, right_divide
from .poly import Poly, mahler_substitute
from .rational import (
    _consistent_extension,
    bell_coons_dimensions,
    bell_coons_rank,
    rational_basis,
    transcendence_test,
)
from .solver import _solving_operator
from .serialize import (
    basis_to_json,
    edge_to_json,
    operator_to_json,
    parse_fraction,
    parse_operator,
    poly_to_json,
)
from .solver import (
    PuiseuxSeries,
    TruncatedSeries,
    check_puiseux_element,
    check_series_element,
    polynomial_basis,
    puiseux_basis,
    puiseux_basis_all,
    series_basis,
)


def _load_operator(path: str) -> MahlerOperator:
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path) as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    return parse_operator(doc)


def _require_solvable(op: MahlerOperator) -> MahlerOperator:
    if not op:
        raise UnsupportedEquationError("the zero operator has no leading coefficient")
    return op


def _fmt_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in terms:
        e = Fraction(e)
        if e == 0:
            body = str(c)
        else:
            if e == 1:
                mono = "x"
            elif e.denominator == 1 and e > 0:
                mono = f"x^{e}"
            else:
                mono = f"x^({e})"
            if c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{c}*{mono}"
        if parts and not body.startswith("-"):
            parts.append("+")
        parts.append(body)
    return " ".join(parts)


def _basis_text(doc: dict) -> str:
    lines = [f"{doc['kind']} (dimension {doc['dimension']})"]
    if doc.get("note"):
        lines.append(f"note: {doc['note']}")
    for i, elem in enumerate(doc.get("elements", []), start=1):
        if "numerator" in elem:
            num = _fmt_terms([(e, Fraction(c)) for e, c in elem["numerator"]])
            den = _fmt_terms([(e, Fraction(c)) for e, c in elem["denominator"]])
            pole = f" / x^{elem['x_power']}" if elem["x_power"] else ""
            body = f"({num}) / ({den}){pole}"
            if "ramification" in elem and elem["ramification"] != 1:
                body += f"  in x^(1/{elem['ramification']})"
        else:
            body = _fmt_terms(
                [(Fraction(e), Fraction(c)) for e, c in elem["terms"]]
            )
            if "truncation_order" in elem:
                order = elem["truncation_order"]
                if "/" in order or order.startswith("-"):
                    order = f"({order})"
                body += f" + O(x^{order})"
        lines.append(f"[{i}] {body}")
    return "\n".join(lines)


def _certify_series(op, basis, doc):
    for elem, edoc in zip(basis.elements, doc["elements"]):
        if isinstance(elem, TruncatedSeries):
            edoc["certified_order"] = str(check_series_element(op, elem))
        elif isinstance(elem, PuiseuxSeries):
            edoc["certified_order"] = str(check_puiseux_element(op, elem))


def _cmd_newton(args) -> dict:
    op = _require_solvable(_load_operator(args.file))
    doc = {
        "kind": "newton",
        "lower": [edge_to_json(e) for e in lower_polygon(op)],
        "upper": [edge_to_json(e) for e in upper_polygon(op)],
    }
    if op.coefficient(0) and op.order >= 1:
        nu, mu = mu_nu(op)
        q_set, n = ramification_data(op)
        doc["nu"] = str(nu)
        doc["mu"] = str(mu)
        doc["Q"] = sorted(q_set)
        doc["N"] = n
    return doc


def _cmd_series(args) -> dict:
    op = _require_solvable(_load_operator(args.file))
    basis = series_basis(op, args.order, auto_normalize=args.auto_normalize)
    doc = basis_to_json(basis)
    if args.certify:
        _certify_series(op, basis, doc)
    return doc


def _cmd_poly(args) -> dict:
    op = _require_solvable(_load_operator(args.file))
    basis = polynomial_basis(op, auto_normalize=args.auto_normalize)
    doc = basis_to_json(basis)
    if args.certify:
        for p, edoc in zip(basis.elements, doc["elements"]):
            if apply_to_poly(op, p):
                raise InternalInvariantError("polynomial certificate failed")
            edoc["certified"] = True
    return doc


def _cmd_rational(args) -> dict:
    op = _require_solvable(_load_operator(args.file))
    basis = rational_basis(op, auto_normalize=args.auto_normalize)
    doc = basis_to_json(basis)
    if args.certify:
        for f, edoc in zip(basis.elements, doc["elements"]):
            if not _rational_solves(op, f):
                raise InternalInvariantError("rational certificate failed")
            edoc["certified"] = True
    return doc


def _rational_solves(op, f) -> bool:
    b = op.radix
    den = f.denominator.shift(f.x_power)
    total = Poly.zero()
    for k, lk in op.nonzero_coefficients():
        num_k = mahler_substitute(f.numerator, b, k) if k else f.numerator
        cofactor = Poly.one()
        for i in range(op.order + 1):
            if i != k:
                img = mahler_substitute(den, b, i) if i else den
                cofactor = cofactor * img
        total = total + lk * num_k * cofactor
    return not total


def _cmd_puiseux(args) -> dict:
    op = _require_solvable(_load_operator(args.file))
    if args.ramification:
        basis = puiseux_basis(op, args.ramification, args.order)
    else:
        basis = puiseux_basis_all(op, args.order)
    doc = basis_to_json(basis)
    if args.certify:
        _certify_series(op, basis, doc)
    return doc


def _cmd_normalize(args) -> dict:
    op = _require_solvable(_load_operator(args.file))
    content, primitive = normalization_content(op)
    doc = operator_to_json(primitive)
    doc["kind"] = "normalized_operator"
    doc["content"] = poly_to_json(content)
    return doc


def _cmd_gcrd(args) -> dict:
    ops = [_require_solvable(_load_operator(path)) for path in args.files]
    raw = gcrd_raw(ops)
    content, primitive = primitive_part(raw)
    if args.certify:
        for op in ops:
            _, _, rem = right_divide(op, primitive)
            if rem:
                raise InternalInvariantError("gcrd does not right-divide an input")
    doc = operator_to_json(primitive)
    doc["kind"] = "gcrd"
    doc["content"] = poly_to_json(content)
    return doc


def _cmd_transcendence(args) -> dict:
    op = _require_solvable(_load_operator(args.file))
    prefix = [parse_fraction(tok.strip()) for tok in args.initial.split(",")]
    if args.oracle == "bell-coons":
        solving = _solving_operator(op, True)
        kappa, bound = bell_coons_dimensions(solving)
        series = _consistent_extension(solving, prefix, kappa + bound + 1)
        transcendental = bell_coons_rank(solving, series)
        return {
            "kind": "transcendence",
            "method": "bell-coons",
            "verdict": "transcendental" if transcendental else "rational",
            "witness": None,
        }
    verdict = transcendence_test(op, prefix)
    doc = {
        "kind": "transcendence",
        "method": verdict.method,
        "verdict": verdict.verdict,
        "witness": None,
    }
    if verdict.witness is not None:
        doc["witness"] = {
            "numerator": poly_to_json(verdict.witness.numerator),
            "x_power": verdict.witness.x_power,
            "denominator": poly_to_json(verdict.witness.denominator),
        }
    return doc


def _render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2)
    if doc.get("kind") == "newton":
        lines = ["lower polygon:"]
        lines += [
            f"  {e['from']} -> {e['to']}  slope {e['slope']}"
            f"  {'admissible' if e['admissible'] else 'not admissible'}"
            for e in doc["lower"]
        ]
        lines.append("upper polygon:")
        lines += [
            f"  {e['from']} -> {e['to']}  slope {e['slope']}"
            f"  {'admissible' if e['admissible'] else 'not admissible'}"
            for e in doc["upper"]
        ]
        if "nu" in doc:
            lines.append(f"nu = {doc['nu']}, mu = {doc['mu']}, Q = {doc['Q']}, N = {doc['N']}")
        return "\n".join(lines)
    if doc.get("kind") in ("normalized_operator", "gcrd"):
        lines = [f"{doc['kind']}:"]
        for entry in doc["coefficients"]:
            lines.append(
                f"  M^{entry['order']}: "
                + _fmt_terms([(e, Fraction(c)) for e, c in entry["terms"]])
            )
        lines.append(
            "content: " + _fmt_terms([(e, Fraction(c)) for e, c in doc["content"]])
        )
        return "\n".join(lines)
    if doc.get("kind") == "transcendence":
        line = f"{doc['verdict']} (method: {doc['method']})"
        if doc.get("witness"):
            w = doc["witness"]
            num = _fmt_terms([(e, Fraction(c)) for e, c in w["numerator"]])
            den = _fmt_terms([(e, Fraction(c)) for e, c in w["denominator"]])
            pole = f" / x^{w['x_power']}" if w["x_power"] else ""
            line += f"; witness ({num}) / ({den}){pole}"
        return line
    return _basis_text(doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mahlersolve",
        description="Solve linear Mahler equations exactly over the rationals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, certify=True):
        p.add_argument("--format", choices=("json", "text"), default="json")
        if certify:
            p.add_argument("--certify", action="store_true")

    p = sub.add_parser("newton", help="Newton polygons and ramification data")
    p.add_argument("file")
    common(p, certify=False)
    p.set_defaults(handler=_cmd_newton)

    p = sub.add_parser("series", help="truncated power-series solution basis")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.add_argument(
        "--auto-normalize",
        action=argparse.BooleanOptionalAction,
        default=True,
    )
    common(p)
    p.set_defaults(handler=_cmd_series)

    p = sub.add_parser("poly", help="polynomial solution basis")
    p.add_argument("file")
    p.add_argument(
        "--auto-normalize",
        action=argparse.BooleanOptionalAction,
        default=True,
    )
    common(p)
    p.set_defaults(handler=_cmd_poly)

    p = sub.add_parser("rational", help="rational-function solution basis")
    p.add_argument("file")
    p.add_argument(
        "--auto-normalize",
        action=argparse.BooleanOptionalAction,
        default=True,
    )
    common(p)
    p.set_defaults(handler=_cmd_rational)

    p = sub.add_parser("puiseux", help="ramified (Puiseux) solution basis")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--ramification", type=int, default=None)
    common(p)
    p.set_defaults(handler=_cmd_puiseux)

    p = sub.add_parser("normalize", help="equivalent equation with nonzero trailing coefficient")
    p.add_argument("file")
    common(p, certify=False)
    p.set_defaults(handler=_cmd_normalize)

    p = sub.add_parser("gcrd", help="greatest common right divisor of operators")
    p.add_argument("files", nargs="+")
    common(p)
    p.set_defaults(handler=_cmd_gcrd)

    p = sub.add_parser("transcendence", help="rational-or-transcendental test")
    p.add_argument("file")
    p.add_argument("--initial", required=True, help="comma-separated coefficients")
    p.add_argument("--oracle", choices=("rational-basis", "bell-coons"), default="rational-basis")
    common(p, certify=False)
    p.set_defaults(handler=_cmd_transcendence)

    return parser


def _exit_code(exc: MahlerError) -> int:
    if isinstance(exc, InternalInvariantError):
        return E.EXIT_INTERNAL
    if isinstance(exc, ExponentOverflowError):
        return E.EXIT_OVERFLOW
    if isinstance(exc, UnsupportedEquationError):
        return E.EXIT_UNSUPPORTED
    return E.EXIT_BAD_INPUT


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "json")
    try:
        doc = args.handler(args)
    except MahlerError as exc:
        code = _exit_code(exc)
        if fmt == "json":
            json.dump({"error": code, "message": str(exc)}, sys.stderr)
            sys.stderr.write("\n")
        else:
            sys.stderr.write(f"error: {exc}\n")
        return code
    print(_render(doc, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
