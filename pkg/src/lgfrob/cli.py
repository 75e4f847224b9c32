"""Command-line front end.

Subcommands: validate, report, dims, gram (JSON report on stdout, human
summary on stderr) and fixture (emit a built-in input document).  Exit codes:
0 success, 2 input/schema error, 3 fan validation failure, 4 mathematical
certificate failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import frobenius
from .errors import InputSchemaError, LgfrobError
from .fixtures import fixture_names, get_fixture
from .report import RunConfig, parse_run_config, run_dims, run_gram, run_report, run_validate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VALIDATION = 3
EXIT_CERTIFICATE = 4


def _add_run_flags(parser: argparse.ArgumentParser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="PATH", help="input JSON document ('-' for stdin)")
    source.add_argument("--fixture", metavar="NAME", help="use a built-in fixture as input")
    parser.add_argument(
        "--strategy",
        choices=list(frobenius.STRATEGIES),
        help="trace normalization strategy",
    )
    parser.add_argument("--seed", type=int, help="seed for sampled axiom checks")
    parser.add_argument("--sample-count", type=int, help="number of sampled checks")
    parser.add_argument("--threads", type=int, help="worker count (results are identical)")
    parser.add_argument(
        "--max-degree-a", type=int, help="cap graded dimension computations at this a"
    )
    parser.add_argument(
        "--full", action="store_true", help="remove any max-degree cap from the input"
    )
    parser.add_argument(
        "--json-only",
        action="store_true",
        help="suppress the human summary and the non-reproducible timing block",
    )


def _load_document(args) -> dict:
    if args.fixture:
        try:
            return get_fixture(args.fixture).to_input_document()
        except InputSchemaError as exc:
            raise InputSchemaError(str(exc)) from exc
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise InputSchemaError(f"cannot read {args.input}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputSchemaError(f"malformed JSON: {exc}") from exc


def _build_config(args) -> RunConfig:
    doc = _load_document(args)
    overrides = {}
    if args.strategy is not None:
        overrides["strategy"] = args.strategy
    if args.seed is not None:
        overrides["sample_seed"] = args.seed
    if args.sample_count is not None:
        overrides["sample_count"] = args.sample_count
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.max_degree_a is not None:
        overrides["max_degree_a"] = args.max_degree_a
    if args.full:
        overrides["max_degree_a"] = None
    if args.json_only:
        overrides["json_only"] = True
    config = parse_run_config(doc, overrides)
    if args.fixture:
        fx = get_fixture(args.fixture)
        config.stated_degrees = fx.stated_degrees
        config.stated_beta = fx.stated_beta
    return config


# ---------------------------------------------------------------------------
# human-readable summary (stderr)


def _human_summary(report: dict, stream):
    def line(text=""):
        print(text, file=stream)

    line(f"== {report.get('name', '?')} ({report.get('command', '?')}) ==")
    validation = report.get("validation")
    if validation:
        for name, check in validation.items():
            status = "pass" if check["pass"] else "FAIL"
            suffix = f"  [{check['witness']}]" if check.get("witness") else ""
            line(f"  {name:20s} {status}{suffix}")
    grading = report.get("grading")
    if grading:
        line(f"  class group rank {grading['rank']}, beta = {tuple(grading['beta'])}")
    polytope = report.get("polytope")
    if polytope:
        line(f"  normalized volume m!Vol = {polytope['normalized_volume']}")
    if "betti" in report:
        line(f"  betti = {report['betti']}  extraisom: {report.get('extraisom')}")
    if "dims" in report:
        capped = " (capped)" if report.get("capped") else ""
        line(f"  dims = {report['dims']}{capped}")
    for key in ("macaulay", "socle", "euler"):
        section = report.get(key)
        if section:
            line(f"  {key}: {'pass' if section['pass'] else 'FAIL'}")
    for entry in report.get("crit_containment", []):
        status = "pass" if entry["pass"] else "FAIL"
        line(f"  crit containment {entry['zero_set']}: {status}")
    algebra = report.get("algebra")
    if algebra:
        tr = algebra["socle_generator_trace"]
        line(
            f"  trace(socle gen) = {tr['rational']} * (2*pi*i)^{tr['unit_exponent']}"
            f"  [{algebra['strategy']}]"
        )
    gram = report.get("gram")
    if gram:
        shapes = ", ".join(
            f"G_{a}: {tuple(entry['shape'])} rank {entry['rank']}"
            for a, entry in gram.items()
        )
        line(f"  gram: {shapes}")
    axioms = report.get("axioms")
    if axioms:
        summary = ", ".join(
            f"{k}: {'pass' if v['pass'] else 'FAIL'}"
            for k, v in axioms.items()
            if isinstance(v, dict)
        )
        line(f"  axioms: {summary}")
    error = report.get("error")
    if error:
        line(f"  error: {error['type']}: {error['message']}")
    if "certificates_pass" in report:
        line(f"  certificates: {'all pass' if report['certificates_pass'] else 'FAILED'}")
    timings = report.get("timings")
    if timings:
        line("  timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in timings.items()))


def _emit(report: dict, exit_code: int, json_only: bool) -> int:
    print(json.dumps(report, indent=2))
    if not json_only:
        _human_summary(report, sys.stderr)
    return exit_code


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lgfrob",
        description=(
            "Exact construction and certification of the graded Frobenius "
            "algebra of a Calabi-Yau hypersurface in a toric Fano variety."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("validate", "fan validation, grading, polytope and Betti numbers"),
        ("report", "full certificate report"),
        ("dims", "graded dimensions only"),
        ("gram", "Gram matrices of the trace pairing"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_run_flags(p)

    p_fix = sub.add_parser("fixture", help="emit a built-in input document")
    p_fix.add_argument("name", nargs="?", help="fixture name (omit to list)")

    args = parser.parse_args(argv)

    if args.command == "fixture":
        if not args.name:
            print("\n".join(fixture_names()))
            return EXIT_OK
        try:
            doc = get_fixture(args.name).to_input_document()
        except InputSchemaError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(json.dumps(doc, indent=2))
        return EXIT_OK

    try:
        config = _build_config(args)
    except InputSchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        if args.command == "validate":
            report, ok = run_validate(config)
            return _emit(report, EXIT_OK if ok else EXIT_VALIDATION, config.json_only)
        if args.command == "report":
            report, code = run_report(config)
            return _emit(report, code, config.json_only)
        if args.command == "dims":
            report, code = run_dims(config)
            return _emit(report, code, config.json_only)
        if args.command == "gram":
            report, code = run_gram(config)
            return _emit(report, code, config.json_only)
    except InputSchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LgfrobError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
