"""Command line interface.

Exit codes: 0 = verified/success, 1 = a mathematical check failed (the
report carries a witness), 2 = input or usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from .algebras import subalgebra_intersection_bounded
from .catalog import (
    char_p_square_entry,
    coordinate_maps,
    nonexample_suite,
    russell,
    russell_invariant_suite,
)
from .errors import DoesNotSplit, ExpmapsError, NotInvariantFraction
from .grading import FiltrationContext, compute_grdegU, homogenize_map, support_set
from .maps import min_positive_degree, express_in_localization
from .polynomials import (
    NEG_INF,
    PolyRing,
    VarList,
    WeightVector,
    weighted_homog_factor,
)
from .session import SessionFile, parse_session, parse_expression

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _fraction_str(value) -> str:
    # grdegU and friends always print as n/d to avoid ambiguity.
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def _degree_str(value) -> str:
    if value is NEG_INF:
        return "-inf"
    return str(value)


def _load_session(args) -> SessionFile:
    if not args.input:
        raise ExpmapsError("this subcommand needs --input FILE")
    try:
        with open(args.input, encoding="utf-8") as fh:
            return parse_session(fh.read())
    except OSError as exc:
        raise ExpmapsError(f"cannot read {args.input}: {exc}") from exc


def _get_map(session: SessionFile, name: str):
    if name not in session.maps:
        raise ExpmapsError(f"no map named {name!r} in the session")
    return session.maps[name]


def _get_weights(session: SessionFile, name: str) -> WeightVector:
    if name not in session.weights:
        raise ExpmapsError(f"no weights named {name!r} in the session")
    return session.weights[name]


def _element(session: SessionFile, text: str):
    poly = parse_expression(text, session.algebra.ring)
    return session.algebra.element(poly)


def _report(command: str, inputs: Dict, results: List[Dict], exit_code: int) -> Dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "exit_code": exit_code,
    }


def _verification_results(report) -> List[Dict]:
    out = []
    for check in report.checks:
        entry = {"check": check.name, "status": "PASS" if check.passed else "FAIL"}
        if check.witness is not None and not check.passed:
            entry["witness"] = check.witness.render()
        if check.detail:
            entry["detail"] = check.detail
        out.append(entry)
    if report.trivial:
        out.append({"check": "nontrivial", "status": "PASS", "detail": "map is the standard inclusion"})
    return out


def cmd_verify(args) -> Dict:
    session = _load_session(args)
    phi = _get_map(session, args.map)
    report = phi.verify()
    code = EXIT_OK if report.ok else EXIT_CHECK_FAILED
    return _report("verify", {"input": args.input, "map": args.map},
                   _verification_results(report), code)


def cmd_degree(args) -> Dict:
    session = _load_session(args)
    phi = _get_map(session, args.map)
    elem = _element(session, args.expr)
    degree = phi.phi_degree(elem)
    result = {"check": "phi-degree", "status": "PASS", "value": _degree_str(degree)}
    return _report("degree", {"input": args.input, "map": args.map, "expr": args.expr},
                   [result], EXIT_OK)


def cmd_invariant(args) -> Dict:
    session = _load_session(args)
    phi = _get_map(session, args.map)
    elem = _element(session, args.expr)
    invariant = phi.is_invariant(elem)
    result = {"check": "invariant", "status": "PASS" if invariant else "FAIL"}
    if not invariant:
        diff = phi.apply(elem) - elem.rep.lift(phi.algebra.uring)
        result["witness"] = diff.render(phi.algebra.order)
    code = EXIT_OK if invariant else EXIT_CHECK_FAILED
    return _report("invariant", {"input": args.input, "map": args.map, "expr": args.expr},
                   [result], code)


def cmd_homogenize(args) -> Dict:
    session = _load_session(args)
    phi = _get_map(session, args.map)
    w = _get_weights(session, args.weights)
    ctx = FiltrationContext(session.algebra, w)
    gu = compute_grdegU(ctx, phi)
    results = [{"check": "grdegU", "status": "PASS", "value": _fraction_str(gu)}]
    for name in session.algebra.var_names:
        s = support_set(ctx, phi, session.algebra.gen(name))
        results.append(
            {"check": f"support-set {name}", "status": "PASS",
             "value": str(sorted(s))}
        )
    phibar = homogenize_map(ctx, phi)
    for name in phibar.algebra.var_names:
        results.append(
            {"check": f"image {name}", "status": "PASS",
             "value": phibar.images[name].render(phibar.algebra.order)}
        )
    report = phibar.verify()
    results.extend(_verification_results(report))
    code = EXIT_OK if report.ok else EXIT_CHECK_FAILED
    return _report("homogenize", {"input": args.input, "map": args.map, "weights": args.weights},
                   results, code)


def cmd_express(args) -> Dict:
    session = _load_session(args)
    phi = _get_map(session, args.map)
    elem = _element(session, args.expr)
    if args.xmin:
        x_min = _element(session, args.xmin)
    else:
        rng = random.Random(args.seed)
        x_min, _ = min_positive_degree(phi, rng=rng)
    expr = express_in_localization(phi, x_min, elem)
    ok = expr.reconstructs(elem) and all(
        phi.is_invariant(h) for h in expr.coeffs.values()
    )
    results = [
        {"check": "x_min", "status": "PASS", "value": x_min.render()},
        {"check": "c", "status": "PASS", "value": expr.c.render()},
        {"check": "denominator-exponent", "status": "PASS", "value": str(expr.m)},
    ]
    for i in sorted(expr.coeffs):
        results.append(
            {"check": f"coefficient of x^{i}", "status": "PASS",
             "value": expr.coeffs[i].render()}
        )
    results.append({"check": "round-trip", "status": "PASS" if ok else "FAIL"})
    code = EXIT_OK if ok else EXIT_CHECK_FAILED
    return _report("express", {"input": args.input, "map": args.map, "expr": args.expr},
                   results, code)


def cmd_intersect(args) -> Dict:
    session = _load_session(args)
    gens1 = [_element(session, g) for g in args.gens1.split(",") if g.strip()]
    gens2 = [_element(session, g) for g in args.gens2.split(",") if g.strip()]
    basis = subalgebra_intersection_bounded(gens1, gens2, args.max_degree)
    results = [
        {"check": f"basis element {i}", "status": "PASS", "value": b.render()}
        for i, b in enumerate(basis)
    ]
    if not results:
        results = [{"check": "intersection", "status": "PASS", "value": "0"}]
    return _report(
        "intersect",
        {"input": args.input, "gens1": args.gens1, "gens2": args.gens2,
         "max_degree": args.max_degree},
        results, EXIT_OK)


def cmd_factor(args) -> Dict:
    session = _load_session(args)
    w = _get_weights(session, args.weights)
    poly = parse_expression(args.expr, session.algebra.ring)
    used = [
        n for i, n in enumerate(session.algebra.var_names)
        if any(exps[i] for exps in poly.terms)
    ]
    if len(used) > 2:
        raise ExpmapsError("factor expects a polynomial in at most two variables")
    # Pad with unused weight-3/2 variables so z-like comes first.
    names = sorted(used, key=lambda n: -w.weight(n))
    if len(names) < 2:
        candidates = [n for n in session.algebra.var_names if n not in names]
        for n in sorted(candidates, key=lambda n: -w.weight(n)):
            if len(names) == 2:
                break
            names.append(n)
    ring2 = PolyRing(session.field, VarList.of(tuple(names)))
    g = poly.project(ring2)
    try:
        lam, n, m, mus = weighted_homog_factor(g, w)
    except DoesNotSplit as exc:
        residual = ", ".join(str(c.value) for c in exc.residual)
        return _report(
            "factor", {"input": args.input, "expr": args.expr, "weights": args.weights},
            [{"check": "splits", "status": "FAIL", "witness": f"residual coefficients [{residual}]"}],
            EXIT_CHECK_FAILED)
    results = [
        {"check": "lambda", "status": "PASS", "value": str(lam.value)},
        {"check": f"{names[0]}-power", "status": "PASS", "value": str(n)},
        {"check": f"{names[1]}-power", "status": "PASS", "value": str(m)},
        {"check": "mu-values", "status": "PASS",
         "value": "[" + ", ".join(str(mu.value) for mu in mus) + "]"},
    ]
    return _report("factor", {"input": args.input, "expr": args.expr, "weights": args.weights},
                   results, EXIT_OK)


def _catalog_entries(name: Optional[str], chars: List[int]):
    for p in chars:
        if name in (None, "russell"):
            yield russell(p)
        if name in (None, "coordinate_maps"):
            yield coordinate_maps(2, p)
        if name in (None, "char_p_square") and p not in (0,):
            yield char_p_square_entry(p)


def cmd_catalog(args) -> Dict:
    chars = [args.char] if args.char is not None else [0, 2, 3, 5]
    results = []
    all_ok = True
    for entry in _catalog_entries(args.entry, chars):
        for desc, ok in entry.run_facts():
            all_ok &= ok
            results.append(
                {"check": f"{entry.name}: {desc}", "status": "PASS" if ok else "FAIL"}
            )
        if entry.name.startswith("russell"):
            suite = russell_invariant_suite(entry, d=min(args.max_degree, 6))
            all_ok &= suite.ok
            results.append(
                {"check": f"{entry.name}: bounded invariant/intersection suite",
                 "status": "PASS" if suite.ok else "FAIL"}
            )
    if args.entry in (None, "nonexamples"):
        for desc, ok in nonexample_suite():
            all_ok &= ok
            results.append({"check": f"nonexamples: {desc}", "status": "PASS" if ok else "FAIL"})
    code = EXIT_OK if all_ok else EXIT_CHECK_FAILED
    return _report("catalog", {"entry": args.entry, "char": args.char}, results, code)


def render_text(report: Dict) -> str:
    lines = [f"command: {report['command']}"]
    for key, value in report["inputs"].items():
        if value is not None:
            lines.append(f"  {key}: {value}")
    for result in report["results"]:
        line = f"{result['status']:4s} {result['check']}"
        if "value" in result:
            line += f" = {result['value']}"
        if "witness" in result:
            line += f"  witness: {result['witness']}"
        if "detail" in result:
            line += f"  ({result['detail']})"
        lines.append(line)
    lines.append(f"exit: {report['exit_code']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expmaps",
        description="Exact verification and analysis of exponential maps "
        "on finitely presented domains.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="session file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-degree", type=int, default=8, dest="max_degree")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the axiom suite")
    p.add_argument("--map", required=True)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("degree", parents=[common], help="phi-degree of an expression")
    p.add_argument("--map", required=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(handler=cmd_degree)

    p = sub.add_parser("invariant", parents=[common], help="invariance of an expression")
    p.add_argument("--map", required=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(handler=cmd_invariant)

    p = sub.add_parser("homogenize", parents=[common], help="homogenize a map")
    p.add_argument("--map", required=True)
    p.add_argument("--weights", required=True)
    p.set_defaults(handler=cmd_homogenize)

    p = sub.add_parser("express", parents=[common],
                       help="express an element in the invariant localization")
    p.add_argument("--map", required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--xmin")
    p.set_defaults(handler=cmd_express)

    p = sub.add_parser("intersect", parents=[common],
                       help="bounded-degree intersection of two subalgebras")
    p.add_argument("--gens1", required=True)
    p.add_argument("--gens2", required=True)
    p.set_defaults(handler=cmd_intersect)

    p = sub.add_parser("factor", parents=[common],
                       help="weighted-homogeneous bivariate factorization")
    p.add_argument("--expr", required=True)
    p.add_argument("--weights", required=True)
    p.set_defaults(handler=cmd_factor)

    p = sub.add_parser("catalog", parents=[common],
                       help="list built-in entries and run their fact suites")
    p.add_argument("--entry")
    p.add_argument("--char", type=int)
    p.set_defaults(handler=cmd_catalog)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report = args.handler(args)
    except NotInvariantFraction as exc:
        report = _report(args.subcommand, {},
                         [{"check": "invariant-fraction", "status": "FAIL",
                           "witness": str(exc)}], EXIT_CHECK_FAILED)
    except ExpmapsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return report["exit_code"]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
