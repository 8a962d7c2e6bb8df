"""One-step reduction, strategies, and bounded reduction graphs."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from bangcalc.redex import INF, Level, Redex, enumerate_redexes, least_level
from bangcalc.surface import show
from bangcalc.syntax import (
    BANG,
    Abs,
    App,
    Bang,
    Calculus,
    CalculusProfile,
    Op,
    Term,
    get_operator,
    instantiate,
    replace_at,
    subterm_at,
)


def contract(t: Term, rule: str) -> tuple[Term, ...]:
    """All contracta of the root redex ``t`` under ``rule``."""
    match rule, t:
        case "!beta", App(fun=Abs(body=b), arg=Bang(body=s)):
            return (instantiate(b, s),)
        case ("beta" | "betav"), App(fun=Abs(body=b), arg=s):
            return (instantiate(b, s),)
        case _, Op(op=o, args=args) if o == rule:
            return tuple(f(args) for f in get_operator(o).contractions)
    raise ValueError(f"{show(t)} is not a {rule} redex")


@dataclass(frozen=True)
class StepRecord:
    source: Term
    redex: Redex
    target: Term
    # least level of ``source``
    ll: Level
    # which contraction of the redex was taken (nonzero only for operators)
    choice: int = 0

    @property
    def least_level(self) -> bool:
        return self.redex.level == self.ll

    @property
    def internal(self) -> bool:
        return self.redex.level > self.ll

    @property
    def surface(self) -> bool:
        return self.redex.level == 0

    @property
    def classification(self) -> frozenset[str]:
        tags = {"leastLevel": self.least_level, "internal": self.internal, "surface": self.surface}
        return frozenset(k for k, on in tags.items() if on)

    @property
    def rule(self) -> str:
        return self.redex.rule

    @property
    def level(self) -> int:
        return self.redex.level


@dataclass(frozen=True)
class StepFilter:
    kind: str
    arg: object = None

    def __str__(self) -> str:
        return self.kind if self.arg is None else f"{self.kind}({self.arg})"


ALL = StepFilter("all")
LEAST_LEVEL = StepFilter("leastLevel")
INTERNAL = StepFilter("internal")
SURFACE = StepFilter("surface")
LEFTMOST_OUTERMOST = StepFilter("leftmostOutermost")
D_ONLY = StepFilter("d")


def at_level(k: int) -> StepFilter:
    return StepFilter("atLevel", k)


def by_rule(rule: str) -> StepFilter:
    return StepFilter("rule", rule)


class StrategyError(ValueError):
    pass


def _check_lo(profile: CalculusProfile) -> None:
    if profile.calculus is Calculus.BANG:
        raise StrategyError("leftmost-outermost is only defined for the cbn and cbv calculi")


def _selected(redexes: list[Redex], ll: Level, flt: StepFilter, profile: CalculusProfile) -> list[Redex]:
    match flt.kind:
        case "all":
            return redexes
        case "leastLevel":
            return [r for r in redexes if r.level == ll]
        case "internal":
            return [r for r in redexes if r.level > ll]
        case "surface":
            return [r for r in redexes if r.level == 0]
        case "atLevel":
            return [r for r in redexes if r.level == flt.arg]
        case "leftmostOutermost":
            _check_lo(profile)
            return redexes[:1]
        case "rule":
            return [r for r in redexes if r.rule == flt.arg]
        case "d":
            return [r for r in redexes if r.is_d]
    raise ValueError(f"unknown step filter {flt}")


def fire(t: Term, redex: Redex, ll: Level | None = None, profile: CalculusProfile | None = None) -> list[StepRecord]:
    """Every step contracting ``redex`` in ``t``."""
    if ll is None:
        ll = least_level(t, profile or BANG)
    results = contract(subterm_at(t, redex.path), redex.rule)
    return [StepRecord(t, redex, replace_at(t, redex.path, r), ll, i) for i, r in enumerate(results)]


def successors(t: Term, profile: CalculusProfile, flt: StepFilter = ALL) -> list[StepRecord]:
    """One-step reducts of ``t`` allowed by ``flt``, in document order."""
    redexes = enumerate_redexes(t, profile)
    ll = min((r.level for r in redexes), default=INF)
    out: list[StepRecord] = []
    for r in _selected(redexes, ll, flt, profile):
        out.extend(fire(t, r, ll))
    return out


def is_normal(t: Term, profile: CalculusProfile) -> bool:
    return not enumerate_redexes(t, profile)


# -- strategies ------------------------------------------------------------

STRATEGIES = ("ll", "lo", "surface", "full")


def choose_redex(t: Term, profile: CalculusProfile, strategy: str) -> tuple[Redex | None, Level]:
    redexes = enumerate_redexes(t, profile)
    ll = min((r.level for r in redexes), default=INF)
    if not redexes:
        return None, ll
    match strategy:
        case "ll":
            return next(r for r in redexes if r.level == ll), ll
        case "lo":
            _check_lo(profile)
            return redexes[0], ll
        case "surface":
            # outside the surface fragment fall back to the leftmost redex
            return next((r for r in redexes if r.level == 0), redexes[0]), ll
        case "full":
            return redexes[0], ll
    raise StrategyError(f"unknown strategy {strategy!r} (expected one of {', '.join(STRATEGIES)})")


@dataclass(frozen=True)
class NormalForm:
    term: Term
    trace: tuple[StepRecord, ...]


@dataclass(frozen=True)
class FuelExhausted:
    term: Term
    trace: tuple[StepRecord, ...]
    cycle_detected: bool
    distinct_states: int


ReduceOutcome = NormalForm | FuelExhausted


def reduce(
    t: Term,
    profile: CalculusProfile,
    strategy: str = "ll",
    fuel: int = 1000,
    seed: int | None = None,
) -> ReduceOutcome:
    """Run ``strategy`` from ``t`` for at most ``fuel`` steps.

    Without a seed the run is deterministic (operators take their first
    contraction), so revisiting a state proves divergence and the run stops
    there.  With a seed, operator choices are drawn uniformly and a repeated
    state is only flagged.
    """
    if strategy not in STRATEGIES:
        raise StrategyError(f"unknown strategy {strategy!r} (expected one of {', '.join(STRATEGIES)})")
    if strategy == "lo":
        _check_lo(profile)
    rng = random.Random(seed) if seed is not None else None
    seen = {t}
    trace: list[StepRecord] = []
    cycle = False
    for _ in range(fuel):
        redex, ll = choose_redex(t, profile, strategy)
        if redex is None:
            return NormalForm(t, tuple(trace))
        steps = fire(t, redex, ll)
        step = steps[rng.randrange(len(steps))] if rng is not None else steps[0]
        trace.append(step)
        t = step.target
        if t in seen:
            cycle = True
            if rng is None:
                break
        seen.add(t)
    else:
        if is_normal(t, profile):
            return NormalForm(t, tuple(trace))
    return FuelExhausted(t, tuple(trace), cycle, len(seen))


def d_normalize(t: Term) -> Term:
    """Contract d-redexes (leftmost first) until none is left."""
    while True:
        d = [r for r in enumerate_redexes(t, BANG) if r.is_d]
        if not d:
            return t
        t = fire(t, d[0], 0)[0].target


# -- trace text ------------------------------------------------------------


def format_step(index: int, step: StepRecord) -> str:
    flags = "".join(
        f",{tag}" for tag, on in (("ll", step.least_level), ("int", step.internal), ("surf", step.surface)) if on
    )
    return f"{index}: {show(step.source)} --{step.rule}@{step.level}{flags}--> {show(step.target)}"


def format_trace(trace: Sequence[StepRecord]) -> str:
    for a, b in zip(trace, trace[1:]):
        if a.target != b.source:
            raise ValueError("inconsistent trace: a step does not start where the previous one ended")
    return "".join(format_step(i, s) + "\n" for i, s in enumerate(trace))


# -- bounded reduction graphs ---------------------------------------------


@dataclass
class ReductionGraph:
    root: Term
    nodes: dict[Term, int] = field(default_factory=dict)  # term -> BFS depth
    edges: list[StepRecord] = field(default_factory=list)
    truncated: bool = False

    def out_edges(self) -> dict[Term, list[StepRecord]]:
        out: dict[Term, list[StepRecord]] = {n: [] for n in self.nodes}
        for e in self.edges:
            out[e.source].append(e)
        return out

    def normal_forms(self, profile: CalculusProfile) -> list[Term]:
        return [n for n in self.nodes if is_normal(n, profile)]


def reachable_graph(t: Term, profile: CalculusProfile, fuel: int = 25, cap: int = 10_000) -> ReductionGraph:
    """Breadth-first closure of all one-step reducts, bounded by depth and node count."""
    g = ReductionGraph(t, {t: 0})
    if cap < 1:
        g.nodes.clear()
        g.truncated = True
        return g
    queue = deque([t])
    while queue:
        u = queue.popleft()
        depth = g.nodes[u]
        steps = successors(u, profile)
        if depth >= fuel:
            if steps:
                g.truncated = True
            continue
        for s in steps:
            v = s.target
            if v not in g.nodes:
                if len(g.nodes) >= cap:
                    g.truncated = True
                    continue
                g.nodes[v] = depth + 1
                queue.append(v)
            g.edges.append(s)
    return g


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(g: ReductionGraph, name: str = "reductions") -> str:
    ids = {n: i for i, n in enumerate(g.nodes)}
    lines = [f"digraph {name} {{"]
    for n, i in ids.items():
        extra = ", peripheries=2" if n == g.root else ""
        lines.append(f'  n{i} [label="{_dot_escape(show(n, canonical=True))}"{extra}];')
    for e in g.edges:
        tags = "".join(
            f",{tag}" for tag, on in (("ll", e.least_level), ("int", e.internal), ("surf", e.surface)) if on
        )
        label = _dot_escape(f"{e.rule}@{e.level}{tags}")
        lines.append(f'  n{ids[e.source]} -> n{ids[e.target]} [label="{label}"];')
    if g.truncated:
        lines.append('  truncated [shape=note, label="truncated"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_steps(t: Term, profile: CalculusProfile, picks: Iterable[int]) -> list[StepRecord]:
    """Replay a run choosing, at each stage, the given index among all successors."""
    trace: list[StepRecord] = []
    for k in picks:
        step = successors(t, profile)[k]
        trace.append(step)
        t = step.target
    return trace
