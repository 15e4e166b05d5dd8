"""Command-line front end.

    weylseries hom --group "U(2)" --n 3
    weylseries hilbert --group G2 --n 2 --format json
    weylseries homhat --group "SU(3)" --m 2
    weylseries comm --group G2 --tmax 4 --nilpotency 3
    weylseries census --group E7 --out e7.census
    weylseries census --load e8.census --group E8
    weylseries check --group F4 --n 3
    weylseries examples

Exit status is 0 only if every computation and diagnostic succeeds.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib.metadata import PackageNotFoundError, version

from weylseries.census import (
    CensusFormatError,
    EnumerationLimitError,
    census_for,
    dump_census,
    load_census,
    read_census,
    save_census,
    validate_census,
)
from weylseries.exactpoly import IntPoly, TruncSeries
from weylseries.groups import DescriptorError, GroupDescriptor, parse_descriptor, weyl_order
from weylseries.known import KNOWN_POLYNOMIALS, SU2_RANGE
from weylseries.oracle import su2_reference
from weylseries.render import format_multi, format_poly, format_table
from weylseries.series import (
    Config,
    SeriesConsistencyError,
    SeriesReport,
    comm_report,
    hilbert_report,
    hom_report,
    homhat_report,
    poincare_hom,
)

SCHEMA = "weylseries.output/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def tool_version() -> str:
    try:
        return version("weylseries")
    except PackageNotFoundError:
        return "unknown"


# ---------------------------------------------------------------------------
# payload (de)serialisation


def _jsonable(x):
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def payload_to_json(payload) -> dict:
    if isinstance(payload, IntPoly):
        return {"variables": [payload.var], "coefficients": list(payload.coeffs)}
    if isinstance(payload, TruncSeries):
        return {"variables": list(payload.vars), "coefficients": payload.to_lists()}
    if isinstance(payload, list):
        return {
            "variables": list(payload[0].vars) + ["t"],
            "t_coefficients": [p.to_lists() for p in payload],
        }
    raise TypeError(f"cannot serialise {type(payload).__name__}")


def payload_from_json(obj: dict):
    """Inverse of payload_to_json."""
    vars_ = obj["variables"]
    if "t_coefficients" in obj:
        return [TruncSeries(c, vars_[:-1]).to_polynomial() for c in obj["t_coefficients"]]
    if len(vars_) == 1:
        return IntPoly(obj["coefficients"], vars_[0])
    return TruncSeries(obj["coefficients"], vars_).to_polynomial()


def report_to_json(rep: SeriesReport, census_source: str) -> dict:
    return {
        "schema": SCHEMA,
        "kind": rep.kind,
        "payload": payload_to_json(rep.payload),
        "diagnostics": [
            {"name": d.name, "expected": _jsonable(d.expected), "actual": _jsonable(d.actual), "passed": d.passed}
            for d in rep.diagnostics
        ],
        "notes": rep.notes,
        "passed": rep.passed,
        "provenance": {
            "descriptor": str(rep.descriptor),
            "params": rep.params,
            "census_source": census_source,
            "tool_version": tool_version(),
            "seconds": round(rep.seconds, 6),
        },
    }


# ---------------------------------------------------------------------------
# rendering


def _latex_lhs(rep: SeriesReport) -> str:
    g = str(rep.descriptor)
    if rep.kind == "poincare":
        return f"P(\\mathrm{{Hom}}(\\mathbb{{Z}}^{{{rep.params['n']}}},{g})_1;q)"
    if rep.kind == "hilbert":
        return f"P(\\mathrm{{Hom}}(\\mathbb{{Z}}^{{{rep.params['n']}}},{g})_1;q,s)"
    if rep.kind == "homhat":
        return f"P(\\widehat{{\\mathrm{{Hom}}}}(\\mathbb{{Z}}^{{{rep.params['m']}}},{g})_1;q,s)"
    return ""


def render(rep: SeriesReport, fmt: str, census_source: str) -> str:
    if fmt == "json":
        return json.dumps(report_to_json(rep, census_source), indent=2)
    latex = fmt == "latex"
    comment = "%" if latex else "#"
    lines = []
    p = rep.payload
    if isinstance(p, IntPoly):
        body = format_poly(p.coeffs, p.var, latex)
        lines.append(f"{_latex_lhs(rep)} = {body}" if latex else body)
    elif isinstance(p, TruncSeries):
        body = format_multi(p.coeffs, p.vars, latex)
        if latex:
            lines.append(f"{_latex_lhs(rep)} = {body}")
        else:
            lines.append(body)
            lines.append(format_table(p.coeffs, *p.vars))
    else:
        for m, c in enumerate(p):
            body = format_multi(c.coeffs, c.vars, latex)
            lines.append(f"t^{{{m}}}: {body}" if latex else f"t^{m}: {body}")
    for note in rep.notes:
        lines.append(f"{comment} note: {note}")
    for d in rep.diagnostics:
        lines.append(f"{comment} {d.line()}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def _config(args) -> Config:
    return Config.from_env(enum_limit=args.enum_limit, margin=args.margin, ncap=args.ncap)


def _census(args, desc: GroupDescriptor, config: Config):
    if getattr(args, "census", None):
        return load_census(args.census, desc), args.census
    return census_for(desc, limit=config.enum_limit), "generated"


def _emit(rep: SeriesReport, args, source: str) -> int:
    print(render(rep, args.format, source))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_hom(args) -> int:
    config = _config(args)
    desc = parse_descriptor(args.group)
    census, source = _census(args, desc, config)
    return _emit(hom_report(desc, args.n, census, config), args, source)


def cmd_check(args) -> int:
    config = _config(args)
    desc = parse_descriptor(args.group)
    census, source = _census(args, desc, config)
    rep = hom_report(desc, args.n, census, config)
    if args.format == "json":
        doc = report_to_json(rep, source)
        doc["kind"] = "check"
        del doc["payload"]
        print(json.dumps(doc, indent=2))
    else:
        for d in rep.diagnostics:
            print(d.line())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_hilbert(args) -> int:
    config = _config(args)
    desc = parse_descriptor(args.group)
    census, source = _census(args, desc, config)
    return _emit(hilbert_report(desc, args.n, census, config), args, source)


def cmd_homhat(args) -> int:
    config = _config(args)
    desc = parse_descriptor(args.group)
    census, source = _census(args, desc, config)
    return _emit(homhat_report(desc, args.m, census, config), args, source)


def cmd_comm(args) -> int:
    config = _config(args)
    desc = parse_descriptor(args.group)
    census, source = _census(args, desc, config)
    return _emit(comm_report(desc, args.tmax, census, args.nilpotency, config), args, source)


def cmd_census(args) -> int:
    config = _config(args)
    if args.load:
        census, desc = read_census(args.load, parse_descriptor(args.group) if args.group else None)
        source = args.load
    else:
        if not args.group:
            print("census: --group is required unless --load is given", file=sys.stderr)
            return EXIT_USAGE
        desc = parse_descriptor(args.group)
        census = census_for(desc, limit=config.enum_limit)
        source = "generated"
    report = validate_census(census, desc)
    if args.out:
        save_census(census, args.out, desc)
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "kind": "census",
            "payload": {
                "rank": census.rank,
                "weyl_order": str(weyl_order(desc)),
                "entries": [{"charpoly": list(p.coeffs), "count": str(c)} for p, c in census],
            },
            "diagnostics": [
                {"name": c.name, "expected": _jsonable(c.expected), "actual": _jsonable(c.actual), "passed": c.passed}
                for c in report.checks
            ],
            "passed": report.passed,
            "provenance": {"descriptor": str(desc), "census_source": source, "tool_version": tool_version()},
        }
        print(json.dumps(doc, indent=2))
    elif args.out is None:
        print(dump_census(census, desc), end="")
    if args.format != "json":
        for c in report.checks:
            print(f"# [{'PASS' if c.passed else 'FAIL'}] {c}", file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK if report.passed else EXIT_FAIL


def run_examples(config: Config | None = None) -> list[tuple[str, bool, str, str]]:
    """Recompute every reference polynomial: (label, ok, expected, actual)."""
    config = config or Config.from_env()
    results = []
    for label, (group, n, coeffs) in KNOWN_POLYNOMIALS.items():
        expected = IntPoly(coeffs, "q")
        actual = poincare_hom(parse_descriptor(group), n, config=config)
        results.append((label, actual == expected, str(expected), str(actual)))
    su2 = parse_descriptor("SU(2)")
    for n in SU2_RANGE:
        expected = IntPoly(su2_reference(n), "q")
        actual = poincare_hom(su2, n, config=config)
        results.append((f"SU(2), n={n}", actual == expected, str(expected), str(actual)))
    return results


def cmd_examples(args) -> int:
    results = run_examples(_config(args))
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "kind": "examples",
            "results": [{"label": l, "passed": ok, "expected": e, "actual": a} for l, ok, e, a in results],
            "passed": all(ok for _, ok, _, _ in results),
            "provenance": {"tool_version": tool_version()},
        }
        print(json.dumps(doc, indent=2))
    else:
        for label, ok, expected, actual in results:
            print(f"[{'PASS' if ok else 'FAIL'}] {label}: {actual}")
            if not ok:
                print(f"       expected {expected}")
    return EXIT_OK if all(ok for _, ok, _, _ in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylseries",
        description="Exact Poincare series of spaces of commuting tuples in compact Lie groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "latex", "json"), default="text")
    common.add_argument("--enum-limit", type=int, default=None, help="largest |W| to enumerate")
    common.add_argument("--margin", type=int, default=None, help="extra truncation degrees above the bound")
    common.add_argument("--ncap", type=int, default=None, help="largest n (or m) accepted")
    group = argparse.ArgumentParser(add_help=False, parents=[common])
    group.add_argument("--group", "-g", required=True, help='descriptor, e.g. "U(3)", "G2xT1", "B3"')
    group.add_argument("--census", default=None, help="census file to use instead of generating one")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("hom", parents=[group], help="Poincare polynomial of Hom(Z^n,G)_1")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hom)
    p = sub.add_parser("hilbert", parents=[group], help="bigraded (q,s) series of Hom(Z^n,G)_1")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hilbert)
    p = sub.add_parser("homhat", parents=[group], help="reduced (q,s) series of Hom-hat(Z^m,G)_1")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_homhat)
    p = sub.add_parser("comm", parents=[group], help="t-coefficients of the Comm(G)_1 series")
    p.add_argument("--tmax", type=int, required=True)
    p.add_argument("--nilpotency", type=int, default=None, help="report as X(m,G)_1 for class m >= 2")
    p.set_defaults(func=cmd_comm)
    p = sub.add_parser("check", parents=[group], help="diagnostics only")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("census", parents=[common], help="generate, validate or persist a census")
    p.add_argument("--group", "-g", default=None)
    p.add_argument("--load", default=None, help="census file to load and validate")
    p.add_argument("--out", default=None, help="write the census to this file")
    p.set_defaults(func=cmd_census)
    p = sub.add_parser("examples", parents=[common], help="recompute the reference polynomials")
    p.set_defaults(func=cmd_examples)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (CensusFormatError, SeriesConsistencyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
