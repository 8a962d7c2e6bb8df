"""Redex occurrences, their levels, and least levels."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from bangcalc.syntax import (
    ABS_BODY,
    APP_LEFT,
    APP_RIGHT,
    BANG,
    BANG_BODY,
    DER,
    Abs,
    App,
    Bang,
    BVar,
    Calculus,
    CalculusProfile,
    Hole,
    Op,
    Path,
    Term,
    Var,
    op_arg,
    positions,
    subterm_at,
)

INF = math.inf
Level = int | float  # a natural number, or INF


@dataclass(frozen=True)
class Redex:
    path: Path
    rule: str
    level: int
    # a !beta redex whose function is the identity, i.e. an instance of d
    is_d: bool = False


def is_value(t: Term) -> bool:
    return isinstance(t, (Var, BVar, Abs))


def root_rule(t: Term, profile: CalculusProfile) -> str | None:
    """Which rule of ``profile`` (if any) has ``t`` as a root redex."""
    match t:
        case App(fun=Abs(), arg=arg):
            match profile.calculus:
                case Calculus.BANG:
                    return "!beta" if isinstance(arg, Bang) else None
                case Calculus.CBN:
                    return "beta"
                case Calculus.CBV:
                    return "betav" if is_value(arg) else None
        case Op(op=o) if o in profile.rules:
            return o
    return None


def is_d_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.arg, Bang) and t.fun == DER


def _child_level(profile: CalculusProfile, step_kind: str, level: int, as_fun: bool) -> int:
    match profile.calculus:
        case Calculus.BANG:
            return level + (step_kind in ("bang", "op"))
        case Calculus.CBN:
            return level + (step_kind in ("arg", "op"))
        case _:
            if step_kind == "op":
                return level + 1
            if step_kind == "abs":
                # an abstraction in function position is applied, so no increment
                return level + (not as_fun)
            return level


def enumerate_redexes(t: Term, profile: CalculusProfile) -> list[Redex]:
    """All redexes of ``t`` in document order (outer before inner, left before right)."""
    out: list[Redex] = []
    bang = profile.calculus is Calculus.BANG

    def go(u: Term, path: Path, level: int, as_fun: bool) -> None:
        rule = root_rule(u, profile)
        if rule is not None:
            out.append(Redex(path, rule, level, bang and rule == "!beta" and is_d_redex(u)))
        match u:
            case Abs(body=b):
                go(b, path + (ABS_BODY,), _child_level(profile, "abs", level, as_fun), False)
            case App(fun=f, arg=a):
                go(f, path + (APP_LEFT,), level, True)
                go(a, path + (APP_RIGHT,), _child_level(profile, "arg", level, False), False)
            case Bang(body=b):
                go(b, path + (BANG_BODY,), _child_level(profile, "bang", level, False), False)
            case Op(args=args):
                lv = _child_level(profile, "op", level, False)
                for i, a in enumerate(args):
                    go(a, path + (op_arg(i),), lv, False)

    go(t, (), 0, False)
    return out


def level_of_path(path: Path, profile: CalculusProfile, enclosing: Term | None = None) -> int:
    """Level of the position ``path``, computed from the path steps alone.

    ``enclosing`` is only used to check that the path exists.
    """
    if enclosing is not None:
        subterm_at(enclosing, path)
    kinds = [s.kind for s in path]
    match profile.calculus:
        case Calculus.BANG:
            return sum(k in ("bang", "op") for k in kinds)
        case Calculus.CBN:
            return sum(k in ("arg", "op") for k in kinds)
    level = 0
    for i, k in enumerate(kinds):
        if k == "op":
            level += 1
        elif k == "abs" and not (i > 0 and kinds[i - 1] == "fun"):
            level += 1
    return level


def hole_path(c: Term) -> Path:
    found = [p for p, u in positions(c) if isinstance(u, Hole)]
    if len(found) != 1:
        raise ValueError(f"a context needs exactly one hole, found {len(found)}")
    return found[0]


def context_level(c: Term, profile: CalculusProfile) -> int:
    return level_of_path(hole_path(c), profile)


def least_level(t: Term, profile: CalculusProfile) -> Level:
    return min((r.level for r in enumerate_redexes(t, profile)), default=INF)


def least_level_inductive(t: Term, profile: CalculusProfile | None = None) -> Level:
    """Least level by structural recursion; bang calculus only.

    Kept separate from :func:`least_level` so each can check the other.
    """
    profile = profile or BANG
    if profile.calculus is not Calculus.BANG:
        raise ValueError("the inductive least level is defined for the bang calculus only")

    def ll(u: Term) -> Level:
        if root_rule(u, profile) is not None:
            return 0
        match u:
            case Abs(body=b):
                return ll(b)
            case Bang(body=b):
                return ll(b) + 1
            case App(fun=f, arg=a):
                return min(ll(f), ll(a))
            case Op(args=args):
                return 1 + min((ll(a) for a in args), default=INF)
        return INF

    return ll(t)


def redexes_at_level(t: Term, profile: CalculusProfile, level: int) -> Iterator[Redex]:
    return (r for r in enumerate_redexes(t, profile) if r.level == level)
