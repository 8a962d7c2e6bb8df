"""Command-line front end: ``bangcalc <command> [options] [TERM]``.

Exit status: 0 on success, 1 on a bad term or flag, 2 when a check suite
finds counterexamples, 3 when a suite is only blocked by inconclusive cases.
"""

from __future__ import annotations

import argparse
import sys
from typing import NoReturn, Sequence

from bangcalc.props.generate import GenSpec
from bangcalc.props.suites import SUITES, SuiteError, run_suite
from bangcalc.redex import INF, enumerate_redexes, least_level
from bangcalc.reduction import (
    STRATEGIES,
    FuelExhausted,
    StrategyError,
    format_trace,
    reachable_graph,
    reduce,
    to_dot,
)
from bangcalc.surface import ParseError, parse, show
from bangcalc.syntax import Calculus, CalculusProfile, Term, subterm_at, validate
from bangcalc.translate import TranslationError, cbn_inverse, forgetful, translate

EXIT_OK, EXIT_USAGE, EXIT_FAILURES, EXIT_INCONCLUSIVE = 0, 1, 2, 3

STRATEGY_ALIASES = {"least-level": "ll", "leftmost-outermost": "lo"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_term_text(arg: str | None) -> str:
    text = arg if arg is not None else sys.stdin.read()
    if not text.strip():
        raise UsageError("no term given (pass it as an argument or on standard input)")
    return text


def _profile(args: argparse.Namespace, default: str = "bang") -> CalculusProfile:
    calculus = args.calculus or default
    ops = () if args.ops in (None, "none") else (args.ops,)
    return CalculusProfile(Calculus(calculus), ops)


def _load(args: argparse.Namespace, profile: CalculusProfile, *, allow_hole: bool = False) -> Term:
    try:
        t = parse(_read_term_text(args.term))
    except ParseError as e:
        raise UsageError(f"parse error: {e}") from None
    problems = validate(t, profile, allow_hole=allow_hole)
    if problems:
        raise UsageError(f"invalid {profile.calculus.value} term: " + "; ".join(map(str, problems)))
    return t


def _path_text(path) -> str:
    return "/" + "/".join(f"{s.kind}{s.index}" if s.kind == "op" else s.kind for s in path)


def cmd_parse(args: argparse.Namespace) -> int:
    profile = _profile(args)
    print(show(_load(args, profile, allow_hole=True)))
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    profile = _profile(args)
    t = _load(args, profile)
    out = reduce(t, profile, STRATEGY_ALIASES.get(args.strategy, args.strategy), args.fuel, args.seed)
    if args.trace:
        sys.stdout.write(format_trace(out.trace))
    if isinstance(out, FuelExhausted):
        print("outcome: fuel-exhausted")
        print(f"term: {show(out.term)}")
        print(f"steps: {len(out.trace)}")
        print(f"cycle-detected: {'yes' if out.cycle_detected else 'no'}")
        print(f"distinct-states: {out.distinct_states}")
    else:
        print("outcome: normal-form")
        print(f"term: {show(out.term)}")
        print(f"steps: {len(out.trace)}")
    return EXIT_OK


def cmd_translate(args: argparse.Namespace) -> int:
    if args.inverse and args.mode != "cbn":
        raise UsageError("--inverse is the call-by-name inverse; use --forget with --mode cbv")
    if args.forget and args.mode != "cbv":
        raise UsageError("--forget is the call-by-value forgetful map; use --inverse with --mode cbn")
    ops = () if args.ops in (None, "none") else (args.ops,)
    if args.inverse or args.forget:
        t = _load(args, CalculusProfile(Calculus.BANG, ops), allow_hole=True)
        print(show(cbn_inverse(t) if args.inverse else forgetful(t)))
    else:
        t = _load(args, CalculusProfile(Calculus(args.mode), ops), allow_hole=True)
        print(show(translate(t, args.mode)))
    return EXIT_OK


def cmd_ll(args: argparse.Namespace) -> int:
    profile = _profile(args)
    ll = least_level(_load(args, profile), profile)
    print("inf" if ll == INF else ll)
    return EXIT_OK


def cmd_redexes(args: argparse.Namespace) -> int:
    profile = _profile(args)
    t = _load(args, profile)
    for r in enumerate_redexes(t, profile):
        tag = " d" if r.is_d else ""
        print(f"{r.rule}@{r.level}{tag} {_path_text(r.path)} {show(subterm_at(t, r.path))}")
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    profile = _profile(args)
    g = reachable_graph(_load(args, profile), profile, args.fuel, args.cap)
    dot = to_dot(g)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
        print(f"nodes: {len(g.nodes)}")
        print(f"edges: {len(g.edges)}")
        print(f"truncated: {'yes' if g.truncated else 'no'}")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    suite = SUITES[args.suite]
    default = "bang" if Calculus.BANG in suite.calculi else sorted(c.value for c in suite.calculi)[0]
    ops = args.ops
    if ops is None:
        ops = "oplus" if suite.needs_ops else "none"
    args.ops = ops
    profile = _profile(args, default)
    spec = GenSpec(profile, args.size, pool=args.pool, count=args.count, seed=args.seed)
    report = run_suite(args.suite, spec, args.fuel, args.cap, args.workers)
    text = report.to_text()
    sys.stdout.write(text if args.out is None else report.summary() + "\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if report.failures:
        return EXIT_FAILURES
    return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bangcalc", description="Bang calculus rewriting workbench.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, *, calculus: bool = True, term: bool = True) -> None:
        if calculus:
            p.add_argument("--calculus", choices=[c.value for c in Calculus], default=None)
        p.add_argument("--ops", choices=["none", "oplus"], default=None, help="operator rules to activate")
        if term:
            p.add_argument("term", nargs="?", help="term in surface syntax (default: read standard input)")

    p = sub.add_parser("parse", help="parse, validate and pretty-print a term")
    common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("reduce", help="run a reduction strategy")
    common(p)
    p.add_argument("--strategy", choices=[*STRATEGIES, *STRATEGY_ALIASES], default="ll")
    p.add_argument("--fuel", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None, help="random choice among operator contractions")
    p.add_argument("--trace", action="store_true", help="print every step")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("translate", help="call-by-name / call-by-value translation")
    common(p, calculus=False)
    p.add_argument("--mode", choices=["cbn", "cbv"], required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--inverse", action="store_true", help="map a call-by-name image back")
    group.add_argument("--forget", action="store_true", help="apply the forgetful map to a call-by-value image")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("ll", help="least level of a term")
    common(p)
    p.set_defaults(func=cmd_ll)

    p = sub.add_parser("redexes", help="list redexes with their levels")
    common(p)
    p.set_defaults(func=cmd_redexes)

    p = sub.add_parser("graph", help="bounded reduction graph as DOT")
    common(p)
    p.add_argument("--fuel", type=int, default=25, help="maximum depth")
    p.add_argument("--cap", type=int, default=10_000, help="maximum number of nodes")
    p.add_argument("--dot", metavar="PATH", help="write DOT here and print a summary instead")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("check", help="run a property suite on a generated corpus")
    p.add_argument("suite", choices=list(SUITES))
    common(p, term=False)
    p.add_argument("--size", type=int, default=5, help="maximum term size")
    p.add_argument("--count", type=int, default=None, help="random mode: number of terms")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--pool", type=int, default=2, help="number of free variables")
    p.add_argument("--fuel", type=int, default=25)
    p.add_argument("--cap", type=int, default=500)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", metavar="PATH", help="write the full report here")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for flag in ("fuel", "cap", "size", "count", "pool", "workers"):
        value = getattr(args, flag, None)
        if value is not None and value < 0:
            print(f"bangcalc: error: --{flag} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, TranslationError, StrategyError, SuiteError) as e:
        print(f"bangcalc: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"bangcalc: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
