"""Command-line front end.

Exit codes are stable: 0 on success, 1 when a verification suite finds
a mismatch, 2 on usage, parse or input errors.  ``--json`` / ``--format
json`` outputs follow the CommandOutcome schema shipped in
``weylkit/schemas/outcome.schema.json``; text output uses the same
ASCII syntax the parser accepts, so results can be piped back in.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import exprio, ordering as conv, phasexform, verify
from .opalg import (
    FreeExpression,
    Ordering,
    OrderedPolynomial,
    PowerNode,
    UnsupportedSymbolError,
    rewrite_to_pq,
    to_expression,
)

OK, MISMATCH, USAGE = 0, 1, 2

_TAGS = {"pq": Ordering.PQ, "qp": Ordering.QP, "weyl": Ordering.WEYL}
MAX_DEGREE_GUARD = 8
MAX_DIM_GUARD = 128


def _emit(outcome: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(outcome, indent=2))
    else:
        print(text)


def _error_outcome(message: str, span=None) -> dict:
    payload = {"message": message}
    if span is not None:
        payload["span"] = list(span)
    return {"status": "error", "payload": payload}


def _print_error(message: str, as_json: bool, span=None) -> int:
    if as_json:
        print(json.dumps(_error_outcome(message, span), indent=2))
    else:
        print(message, file=sys.stderr)
    return USAGE


def _parse_operator_input(text: str) -> OrderedPolynomial | FreeExpression:
    return exprio.parse(text)


def _to_polynomial(
    value: OrderedPolynomial | FreeExpression, target: Ordering
) -> OrderedPolynomial:
    if isinstance(value, OrderedPolynomial):
        return conv.convert(value, target)
    canonical = rewrite_to_pq(value)
    return conv.convert(canonical, target)


def _polynomial_text(poly: OrderedPolynomial) -> str:
    # P-Q and Q-P bodies re-parse as operator words with the same value;
    # the symbolic Weyl tag keeps its wrapper.
    if poly.ordering is Ordering.WEYL:
        return exprio.render(poly)
    return exprio.render_terms(poly)


def _polynomial_outcome(poly: OrderedPolynomial) -> dict:
    return {
        "status": "ok",
        "payload": {
            "result": exprio.polynomial_to_json(poly),
            "text": _polynomial_text(poly),
        },
    }


def cmd_convert(args) -> int:
    as_json = args.format == "json"
    try:
        value = _parse_operator_input(args.expr)
        poly = _to_polynomial(value, _TAGS[args.to])
    except exprio.ParseError as exc:
        return _print_error(exc.pretty(args.expr), as_json, exc.span)
    except UnsupportedSymbolError as exc:
        return _print_error(str(exc), as_json)
    outcome = _polynomial_outcome(poly)
    _emit(outcome, as_json, outcome["payload"]["text"])
    return OK


def cmd_commutator(args) -> int:
    as_json = args.format == "json"
    try:
        left = exprio.parse(args.left)
        right = exprio.parse(args.right)
        left_expr = (
            to_expression(conv.convert(left, Ordering.PQ))
            if isinstance(left, OrderedPolynomial)
            else left
        )
        right_expr = (
            to_expression(conv.convert(right, Ordering.PQ))
            if isinstance(right, OrderedPolynomial)
            else right
        )
        bracket = rewrite_to_pq(
            left_expr * right_expr - right_expr * left_expr
        )
    except exprio.ParseError as exc:
        source = args.left if exc.span[1] <= len(args.left) else args.right
        return _print_error(exc.pretty(source), as_json, exc.span)
    except UnsupportedSymbolError as exc:
        return _print_error(str(exc), as_json)
    outcome = _polynomial_outcome(bracket)
    _emit(outcome, as_json, outcome["payload"]["text"])
    return OK


def cmd_expand(args) -> int:
    as_json = args.format == "json"
    if args.power < 0:
        return _print_error("--power must be non-negative", as_json)
    try:
        value = _parse_operator_input(args.expr)
        base = (
            to_expression(conv.convert(value, Ordering.PQ))
            if isinstance(value, OrderedPolynomial)
            else value
        )
        poly = _to_polynomial(PowerNode(base, args.power), _TAGS[args.to])
    except exprio.ParseError as exc:
        return _print_error(exc.pretty(args.expr), as_json, exc.span)
    except UnsupportedSymbolError as exc:
        return _print_error(str(exc), as_json)
    outcome = _polynomial_outcome(poly)
    _emit(outcome, as_json, outcome["payload"]["text"])
    return OK


def cmd_verify(args) -> int:
    if args.max_degree is not None and args.max_degree > MAX_DEGREE_GUARD:
        return _print_error(
            f"--max-degree is capped at {MAX_DEGREE_GUARD}", args.json
        )
    if args.dim > MAX_DIM_GUARD:
        return _print_error(f"--dim is capped at {MAX_DIM_GUARD}", args.json)
    if args.max_degree is not None and args.max_degree < 0:
        return _print_error("--max-degree must be non-negative", args.json)
    if args.dim < 2:
        return _print_error("--dim must be at least 2", args.json)
    checks = verify.run_suite(args.suite, args.max_degree, args.dim)
    failed = [c for c in checks if not c.passed]
    status = "ok" if not failed else "mismatch"
    outcome = {
        "status": status,
        "payload": {
            "suite": args.suite,
            "passed": len(checks) - len(failed),
            "failed": len(failed),
            "checks": [c.to_json() for c in checks],
        },
    }
    if args.json:
        print(json.dumps(outcome, indent=2))
    else:
        for c in checks:
            mark = "PASS" if c.passed else "FAIL"
            metric = (
                f"max err {c.max_error:.3e} <= {c.tolerance:.0e}"
                if c.tolerance
                else ("exact" if c.passed else "MISMATCH")
            )
            line = f"{mark}  {c.name}  [{metric}]"
            if c.detail:
                line += f"  ({c.detail})"
            print(line)
            if not c.passed and c.computed is not None:
                print(f"      computed: {c.computed}")
                print(f"      oracle:   {c.oracle}")
        print(
            f"{args.suite}: {len(checks) - len(failed)}/{len(checks)} checks passed"
        )
    return OK if not failed else MISMATCH


def _gaussian_field() -> phasexform.SampledField:
    return phasexform.SampledField.from_function(
        lambda qg, pg: np.exp(-(pg**2) - qg**2)
    )


def cmd_transform(args) -> int:
    as_json = args.json
    if (args.input is None) == (not args.gaussian):
        return _print_error(
            "choose exactly one input: --input FILE or --gaussian", as_json
        )
    try:
        field = (
            _gaussian_field()
            if args.gaussian
            else phasexform.SampledField.from_csv(args.input)
        )
    except (OSError, ValueError) as exc:
        return _print_error(f"cannot read input grid: {exc}", as_json)
    payload: dict = {
        "grid": {
            "qmin": field.q_min,
            "qmax": field.q_max,
            "pmin": field.p_min,
            "pmax": field.p_max,
            "nq": field.nq,
            "np": field.np_,
        }
    }
    lines: list[str] = []
    if args.parseval:
        lhs, rhs = phasexform.parseval_check(field)
        payload["parseval"] = {"lhs": lhs, "rhs": rhs}
        lines.append(f"{lhs:.10f}")
        lines.append(f"{rhs:.10f}")
    if args.out is not None or not args.parseval:
        result = (
            phasexform.inverse_transform(field)
            if args.inverse
            else phasexform.forward_transform(field)
        )
        payload["reliable"] = result.reliable
        if args.out is not None:
            try:
                result.to_csv(args.out)
            except OSError as exc:
                return _print_error(f"cannot write output: {exc}", as_json)
            payload["output"] = args.out
            lines.append(f"wrote {args.out}")
        else:
            lines.append(
                "transform computed; use --out FILE to save it"
            )
    outcome = {"status": "ok", "payload": payload}
    _emit(outcome, as_json, "\n".join(lines))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylkit",
        description="Operator ordering conversions with built-in verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_convert = sub.add_parser(
        "convert", help="convert an operator expression between orderings"
    )
    p_convert.add_argument("expr", help="expression, e.g. 'Q*P' or 'weyl{Q^2*P}'")
    p_convert.add_argument("--to", required=True, choices=sorted(_TAGS))
    p_convert.add_argument("--format", choices=["text", "json"], default="text")
    p_convert.set_defaults(func=cmd_convert)

    p_comm = sub.add_parser("commutator", help="compute [x, y] in P-Q ordering")
    p_comm.add_argument("left")
    p_comm.add_argument("right")
    p_comm.add_argument("--format", choices=["text", "json"], default="text")
    p_comm.set_defaults(func=cmd_commutator)

    p_expand = sub.add_parser(
        "expand", help="raise an expression to a power and convert"
    )
    p_expand.add_argument("expr")
    p_expand.add_argument("--power", type=int, required=True)
    p_expand.add_argument("--to", required=True, choices=sorted(_TAGS))
    p_expand.add_argument("--format", choices=["text", "json"], default="text")
    p_expand.set_defaults(func=cmd_expand)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=sorted(verify.SUITES))
    p_verify.add_argument("--max-degree", type=int, default=None)
    p_verify.add_argument("--dim", type=int, default=64)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_tr = sub.add_parser("transform", help="apply the phase-space transform")
    p_tr.add_argument("--input", default=None, help="SampledField CSV file")
    p_tr.add_argument(
        "--gaussian",
        action="store_true",
        help="use the reference Gaussian exp(-p^2-q^2) on [-8,8]^2, 400x400",
    )
    p_tr.add_argument("--inverse", action="store_true")
    p_tr.add_argument("--parseval", action="store_true")
    p_tr.add_argument("--out", default=None)
    p_tr.add_argument("--json", action="store_true")
    p_tr.set_defaults(func=cmd_transform)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
