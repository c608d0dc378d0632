"""Command line interface.

Verbs::

    findcode capacity <channel.json> --precision N
    findcode lambda <channel.json> <code.json>
    findcode find-code <channel.json> --rate a/b (--epsilon c/d | --epsilon-expr EXPR)
                       [--mode full|pruned] [--max-n K] [--workers W]
    findcode sequence <channel.json> --k K
    findcode enumerate M N m n [--mode full|pruned] [--limit L]
    findcode simulate <channel.json> <code.json> --trials T --seed S

Exit status is 0 on success, 1 for invalid input (or an infeasible ``k``) and
2 when a resource guard stops the computation; the latter prints a JSON
diagnostic on stdout.

Stream expressions (``--epsilon-expr`` and stream-mode channel entries) use
this prefix grammar::

    expr     := "(" "rat" RATIONAL ")"
              | "(" op expr expr+ ")"
    op       := "add" | "mul" | "max"
    RATIONAL := ["-"] DIGITS ["/" DIGITS]

``(add a b c)`` folds left as ``(add (add a b) c)``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .capacity import DEFAULT_MAX_ITERATIONS, capacity_bounds
from .channel import DEFAULT_CELL_LIMIT, parse_channel
from .codes import DEFAULT_BIT_LIMIT, EnumerationCursor, parse_code
from .creal import DEFAULT_STEP_BUDGET, Budget, parse_expression
from .errorprob import error_profile
from .exceptions import FindCodeError, InfeasibleError, InvalidInputError, ResourceLimitError
from .rational import format_rational, parse_rational
from .search import SearchOptions, capacity_sequence, find_code, find_code_ext
from .simulate import simulate


def _emit(payload: Any) -> None:
    sys.stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _options(args: argparse.Namespace) -> SearchOptions:
    return SearchOptions(
        mode=getattr(args, "mode", "full"),
        max_blocklength=args.max_n,
        cell_limit=args.cell_limit,
        bit_limit=args.bit_limit,
        step_budget=args.step_budget,
        parallelism=args.workers,
        max_candidates=args.max_candidates,
    )


def cmd_capacity(args: argparse.Namespace) -> None:
    channel = parse_channel(_read(args.channel))
    lo, hi = capacity_bounds(channel, args.precision, args.max_iterations)
    _emit({"lower": format_rational(lo), "upper": format_rational(hi), "precision": args.precision})


def cmd_lambda(args: argparse.Namespace) -> None:
    channel = parse_channel(_read(args.channel))
    code = parse_code(_read(args.code))
    profile = error_profile(code, channel)
    if channel.is_exact:
        _emit(profile.to_json())
        return
    budget = Budget(args.step_budget)
    n = args.precision
    _emit({
        "per_message": [format_rational(v.query(n, budget)) for v in profile.per_message],
        "lambda_max": format_rational(profile.lambda_max.query(n, budget)),
        "precision": n,
    })


def cmd_find_code(args: argparse.Namespace) -> None:
    channel = parse_channel(_read(args.channel))
    opts = _options(args)
    if args.epsilon_expr is not None:
        report = find_code_ext(channel, args.rate, parse_expression(args.epsilon_expr), opts)
    else:
        report = find_code(channel, args.rate, args.epsilon, opts)
    _emit(report.to_json())


def cmd_sequence(args: argparse.Namespace) -> None:
    channel = parse_channel(_read(args.channel))
    _emit(capacity_sequence(channel, args.k, _options(args)).to_json())


def cmd_enumerate(args: argparse.Namespace) -> None:
    cursor = EnumerationCursor(args.M, args.N, args.m, args.n, args.mode)
    for emitted, code in enumerate(cursor):
        if args.limit is not None and emitted >= args.limit:
            break
        _emit(code.to_json())


def cmd_simulate(args: argparse.Namespace) -> None:
    channel = parse_channel(_read(args.channel))
    code = parse_code(_read(args.code))
    _emit(simulate(code, channel, args.trials, args.seed, workers=args.workers).to_json())


def _add_guards(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-n", type=int, default=16, help="largest blocklength to try")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cell-limit", type=int, default=DEFAULT_CELL_LIMIT)
    p.add_argument("--bit-limit", type=int, default=DEFAULT_BIT_LIMIT)
    p.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET)
    p.add_argument("--max-candidates", type=int, default=1 << 26)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="findcode", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="certified capacity interval")
    p.add_argument("channel")
    p.add_argument("--precision", type=int, default=20)
    p.add_argument("--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("lambda", help="per-message and maximum block error probability")
    p.add_argument("channel")
    p.add_argument("code")
    p.add_argument("--precision", type=int, default=20, help="stream channels only")
    p.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("find-code", help="exhaustive search for a code")
    p.add_argument("channel")
    p.add_argument("--rate", type=_rational_arg, required=True)
    eps = p.add_mutually_exclusive_group(required=True)
    eps.add_argument("--epsilon", type=_rational_arg)
    eps.add_argument("--epsilon-expr")
    p.add_argument("--mode", choices=("full", "pruned"), default="full")
    _add_guards(p)
    p.set_defaults(func=cmd_find_code)

    p = sub.add_parser("sequence", help="k-th code of a capacity-achieving sequence")
    p.add_argument("channel")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("full", "pruned"), default="full")
    _add_guards(p)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("enumerate", help="list codes in canonical order as JSON lines")
    for name in ("M", "N", "m", "n"):
        p.add_argument(name, type=int)
    p.add_argument("--mode", choices=("full", "pruned"), default="full")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("simulate", help="Monte Carlo error counts")
    p.add_argument("channel")
    p.add_argument("code")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage; 2 is reserved for resource limits
        return 0 if exc.code in (0, None) else 1
    try:
        args.func(args)
    except ResourceLimitError as exc:
        _emit({"error": "resource-limit", "message": str(exc), **exc.details})
        return 2
    except InfeasibleError as exc:
        _emit({"error": "infeasible-k", "message": str(exc)})
        return 1
    except (FindCodeError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(json.dumps({"error": "invalid-input", "message": str(exc)}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
