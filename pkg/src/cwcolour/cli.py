"""Command-line interface.

Exit codes: 0 colourable / success, 1 not colourable, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .annotate import annotate
from .extract import extract_colouring, verify_colouring
from .oracle import GenParams, OracleLimitError, brute_force_colourable, random_term
from .solver import chromatic_number, solve
from .term import TermError, evaluate_graph, parse_term

SAT, UNSAT, ERROR = 0, 1, 2


def _read_term(path):
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_term(text)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=None if isinstance(obj, dict) else 1))


def _verdict(ok: bool) -> int:
    print("COLOURABLE" if ok else "NOT COLOURABLE")
    return SAT if ok else UNSAT


def cmd_check(args) -> int:
    t = _read_term(args.input)
    result = solve(t, args.colours, witnesses=args.witnesses)
    code = _verdict(result.colourable)
    if args.json:
        body = {
            "colourable": result.colourable,
            "colours": args.colours,
            "short_circuit": result.short_circuit,
            "stats": [s.to_json() for s in result.stats],
        }
        if args.witnesses and result.colourable:
            col = extract_colouring(t, args.colours, result)
            body["assignment"] = col
            body["verified"] = verify_colouring(evaluate_graph(t), col, args.colours)
        _dump(body)
    return code


def cmd_chromatic(args) -> int:
    print(chromatic_number(_read_term(args.input)))
    return SAT


def cmd_colouring(args) -> int:
    t = _read_term(args.input)
    col = extract_colouring(t, args.colours)
    if col is None:
        _dump({"unsat": True})
        return UNSAT
    _dump({"colours": args.colours, "assignment": col})
    return SAT


def cmd_annotate(args) -> int:
    _dump(annotate(_read_term(args.input)).to_json())
    return SAT


def cmd_stats(args) -> int:
    result = solve(_read_term(args.input), args.colours, short_circuit=False)
    _dump([s.to_json() for s in result.stats])
    return SAT


def cmd_graph(args) -> int:
    sys.stdout.write(evaluate_graph(_read_term(args.input)).export())
    return SAT


def cmd_oracle_check(args) -> int:
    t = _read_term(args.file if args.file is not None else args.input)
    return _verdict(brute_force_colourable(evaluate_graph(t), args.colours))


def cmd_gen(args) -> int:
    params = GenParams(args.seed, args.n, args.k, args.add_density, args.relab_density)
    print(random_term(params).to_text())
    return SAT


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _density(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cwcolour", description="Colour graphs given as clique-width terms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help, colours=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", "-i", help="term file (default: stdin)")
        if colours:
            p.add_argument("--colours", "-c", type=_positive, required=True)
        p.set_defaults(func=func)
        return p

    p = command("check", cmd_check, "decide c-colourability", colours=True)
    p.add_argument("--json", action="store_true", help="also print statistics as JSON")
    p.add_argument("--witnesses", action="store_true", help="record witnesses and verify an extracted colouring")
    command("chromatic", cmd_chromatic, "compute the chromatic number")
    p = command("colouring", cmd_colouring, "print a proper colouring as JSON", colours=True)
    p.add_argument("--witnesses", action="store_true", help="accepted for symmetry; always on")
    command("annotate", cmd_annotate, "dump used/boundary/pending labels")
    command("stats", cmd_stats, "per-position scheme set statistics", colours=True)
    command("graph", cmd_graph, "export the denoted graph")

    oracle = sub.add_parser("oracle", help="brute-force cross-checks")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)
    p = osub.add_parser("check", help="decide c-colourability by exhaustive search")
    p.add_argument("--colours", "-c", type=_positive, required=True)
    p.add_argument("--input", "-i")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("gen", help="print a random term")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--add-density", type=_density, default=0.5)
    p.add_argument("--relab-density", type=_density, default=0.3)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TermError, OracleLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
