"""Parallel !beta-reduction, indexed by level and by number of fired redexes.

A parallel step fires any set of !beta redexes simultaneously, including the
empty set.  Every derivation carries two indices:

* ``level``: the least level among fired redexes (``INF`` when nothing fires);
* ``count``: how many single steps the derivation stands for.

Operators are traversed argument-wise; their own rules never fire here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from bangcalc.redex import INF, Level, enumerate_redexes, least_level
from bangcalc.syntax import BANG, Abs, App, Bang, Op, Term, instantiate, occurrences

MAX_REDEXES = 16


class TooManyRedexes(ValueError):
    pass


@dataclass(frozen=True)
class ParallelStep:
    source: Term
    target: Term
    level: Level
    count: int


Derivation = tuple[Term, Level, int]


def _product(parts: list[frozenset[Derivation]]) -> Iterable[tuple[Derivation, ...]]:
    combos: list[tuple[Derivation, ...]] = [()]
    for p in parts:
        combos = [c + (d,) for c in combos for d in p]
    return combos


def derivations(t: Term, _memo: dict[Term, frozenset[Derivation]] | None = None) -> frozenset[Derivation]:
    """Every (target, level index, count index) obtainable by some derivation."""
    memo = {} if _memo is None else _memo
    hit = memo.get(t)
    if hit is not None:
        return hit
    out: set[Derivation] = set()
    match t:
        case Abs(name=n, body=b):
            out = {(Abs(n, r), lv, c) for r, lv, c in derivations(b, memo)}
        case Bang(body=b):
            out = {(Bang(r), lv + 1, c) for r, lv, c in derivations(b, memo)}
        case App(fun=f, arg=a):
            df, da = derivations(f, memo), derivations(a, memo)
            out = {(App(rf, ra), min(lf, la), cf + ca) for rf, lf, cf in df for ra, la, ca in da}
            if isinstance(f, Abs) and isinstance(a, Bang):
                for body, _, n1 in derivations(f.body, memo):
                    uses = occurrences(body)
                    for arg, _, n2 in derivations(a.body, memo):
                        out.add((instantiate(body, arg), 0, n1 + uses * n2 + 1))
        case Op(op=o, args=args):
            for combo in _product([derivations(x, memo) for x in args]):
                lv = 1 + min((d[1] for d in combo), default=INF)
                out.add((Op(o, [d[0] for d in combo]), lv, sum(d[2] for d in combo)))
        case _:
            out = {(t, INF, 0)}
    result = frozenset(out)
    memo[t] = result
    return result


def _guard(t: Term) -> None:
    k = sum(r.rule == "!beta" for r in enumerate_redexes(t, BANG))
    if k > MAX_REDEXES:
        raise TooManyRedexes(f"term has {k} redexes; parallel enumeration is limited to {MAX_REDEXES}")


def parallel_successors(t: Term, *, verbose: bool = False) -> list[ParallelStep]:
    """All ``S`` with ``t`` parallel-reducing to ``S``, identity included.

    By default each target appears once, annotated with the largest level
    index and smallest count index over its derivations; ``verbose`` lists
    every distinct (target, level, count) combination instead.
    """
    _guard(t)
    ds = derivations(t)
    if verbose:
        return [ParallelStep(t, s, lv, c) for s, lv, c in ds]
    best: dict[Term, tuple[Level, int]] = {}
    for s, lv, c in ds:
        old = best.get(s)
        best[s] = (lv, c) if old is None else (max(old[0], lv), min(old[1], c))
    return [ParallelStep(t, s, lv, c) for s, (lv, c) in best.items()]


def internal_parallel_successors(t: Term) -> set[Term]:
    """Targets reachable by a parallel step firing only redexes above the least level."""
    ll = least_level(t, BANG)
    return {p.target for p in parallel_successors(t) if p.level == INF or p.level > ll}
