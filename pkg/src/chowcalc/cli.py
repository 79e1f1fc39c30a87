"""Command line entry point.

    chowcalc run FILE [--format text|json]
    chowcalc examples --paper [--format text|json]
    chowcalc --list-varieties

Exit status: 0 on success, 1 if any query failed or an example mismatched,
2 on a parse error.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import format_rational
from .dsl import DSLError, QueryResult, emit, execute, parse_program
from .suite import example_suite
from .varieties import builtin_varieties


def _list_varieties() -> str:
    lines = []
    for name, pres in builtin_varieties().items():
        gens = ",".join(g for g, _ in pres.generators)
        lines.append(f"{name}\tdim={pres.dimension}\tgenerators={gens}\tc(T)={pres.tangent_chern}")
    return "".join(line + "\n" for line in lines)


def _suite_results() -> tuple[list[QueryResult], bool]:
    results = []
    ok = True
    for rep in example_suite():
        value = rep.render(rep.computed)
        if rep.match:
            results.append(QueryResult(rep.example_id, value, "report", rep.provenance))
        else:
            ok = False
            results.append(
                QueryResult(
                    rep.example_id,
                    value,
                    "error",
                    rep.provenance,
                    f"expected {rep.render(rep.claimed)}, computed {value}",
                )
            )
    return results, ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowcalc",
        description="Exact intersection-theory calculator for K3-fibred Calabi-Yau 3-folds.",
    )
    parser.add_argument("--list-varieties", action="store_true", help="print the built-in varieties and exit")
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="execute a DSL program")
    run.add_argument("file", help="program file, or - for stdin")
    run.add_argument("--format", choices=("text", "json"), default="text")

    ex = sub.add_parser("examples", help="run the built-in worked examples")
    ex.add_argument("--paper", action="store_true", help="run the full worked-example suite")
    ex.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout.buffer

    if args.list_varieties:
        out.write(_list_varieties().encode())
        out.flush()
        return 0

    if args.command == "run":
        if args.file == "-":
            source = sys.stdin.read()
        else:
            try:
                with open(args.file, encoding="utf-8") as fh:
                    source = fh.read()
            except (OSError, UnicodeDecodeError) as exc:
                print(f"chowcalc: cannot read {args.file}: {exc}", file=sys.stderr)
                return 2
        try:
            program = parse_program(source)
        except DSLError as exc:
            print(f"{args.file}:{exc.line}:{exc.col}: {exc.message}", file=sys.stderr)
            return 2
        results = execute(program)
        out.write(emit(results, args.format))
        out.flush()
        return 1 if any(r.error for r in results) else 0

    if args.command == "examples":
        if not args.paper:
            parser.error("examples needs --paper")
        results, ok = _suite_results()
        out.write(emit(results, args.format))
        out.flush()
        return 0 if ok else 1

    parser.print_help()
    return 0


if __name__ == "__main__":
    sys.exit(main())
