"""Executable property suites over generated corpora.

Each checker looks at one input term and answers ``ok``, ``fail`` (with a
witness) or ``inconclusive`` (a fuel or node bound prevented a verdict).
"""

from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from bangcalc.parallel import TooManyRedexes, derivations, internal_parallel_successors, parallel_successors
from bangcalc.props.generate import GenSpec, gen_terms, pool_names
from bangcalc.props.report import CheckReport, Failure
from bangcalc.redex import INF, context_level, enumerate_redexes, least_level, root_rule
from bangcalc.reduction import (
    D_ONLY,
    INTERNAL,
    LEAST_LEVEL,
    LEFTMOST_OUTERMOST,
    ReductionGraph,
    StepRecord,
    contract,
    d_normalize,
    format_trace,
    reachable_graph,
    successors,
)
from bangcalc.surface import show
from bangcalc.syntax import (
    BANG,
    HOLE,
    Abs,
    App,
    Bang,
    Calculus,
    CalculusProfile,
    Op,
    Term,
    Var,
    positions,
    replace_at,
    substitute,
)
from bangcalc.translate import (
    TranslationError,
    cbn_inverse,
    cbn_translate,
    cbv_translate,
    forgetful,
    is_cbv_image,
)


@dataclass
class Ctx:
    profile: CalculusProfile
    fuel: int
    cap: int
    pool: int = 2


@dataclass
class Outcome:
    status: str = "ok"  # "ok" | "fail" | "inconclusive"
    witnesses: list[str] = field(default_factory=list)

    def fail(self, witness: str) -> None:
        self.status = "fail"
        self.witnesses.append(witness)

    def undecided(self) -> None:
        if self.status == "ok":
            self.status = "inconclusive"


Checker = Callable[[Term, Ctx], Outcome]


def bang_of(profile: CalculusProfile) -> CalculusProfile:
    return CalculusProfile(Calculus.BANG, profile.operators)


def mapped_rule(rule: str) -> str:
    return "!beta" if rule in ("beta", "betav") else rule


def _trace(steps: Iterable[StepRecord]) -> str:
    return format_trace(list(steps)).rstrip("\n")


def _peak(a: StepRecord, b: StepRecord) -> str:
    return _trace([a]) + "\n" + _trace([b])


# -- graph searches ----------------------------------------------------------


def _closure(start: Iterable[Term], out: dict[Term, list[StepRecord]], keep: Callable[[StepRecord], bool]) -> dict[Term, StepRecord | None]:
    """Nodes reachable from ``start`` along kept edges, with BFS parent steps."""
    parent: dict[Term, StepRecord | None] = {}
    queue: deque[Term] = deque()
    for s in start:
        if s not in parent:
            parent[s] = None
            queue.append(s)
    while queue:
        u = queue.popleft()
        for e in out.get(u, ()):
            if keep(e) and e.target not in parent:
                parent[e.target] = e
                queue.append(e.target)
    return parent


def _path_to(parent: dict[Term, StepRecord | None], u: Term) -> list[StepRecord]:
    steps: list[StepRecord] = []
    while (e := parent[u]) is not None:
        steps.append(e)
        u = e.source
    return steps[::-1]


@dataclass(frozen=True)
class FactorizationWitness:
    least_level_prefix: tuple[StepRecord, ...]
    internal_suffix: tuple[StepRecord, ...]


NOT_FOUND = "NotFound"
INCONCLUSIVE = "Inconclusive"


def _two_phase(g: ReductionGraph) -> tuple[dict[Term, StepRecord | None], dict[Term, StepRecord | None]]:
    out = g.out_edges()
    ll_part = _closure([g.root], out, lambda e: e.least_level)
    int_part = _closure(ll_part, out, lambda e: e.internal)
    return ll_part, int_part


def factorization_witness(
    t: Term, u: Term, profile: CalculusProfile, fuel: int = 25, cap: int = 10_000
) -> FactorizationWitness | str:
    """Least-level steps then internal steps from ``t`` to ``u``, if they exist."""
    g = reachable_graph(t, profile, fuel, cap)
    ll_part, int_part = _two_phase(g)
    if u not in int_part:
        return INCONCLUSIVE if g.truncated else NOT_FOUND
    suffix = _path_to(int_part, u)
    mid = suffix[0].source if suffix else u
    return FactorizationWitness(tuple(_path_to(ll_part, mid)), tuple(suffix))


def _shortest(g: ReductionGraph, u: Term) -> list[StepRecord]:
    return _path_to(_closure([g.root], g.out_edges(), lambda e: True), u)


# -- checkers ----------------------------------------------------------------


def check_factorization(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    g = reachable_graph(t, ctx.profile, ctx.fuel, ctx.cap)
    _, reached = _two_phase(g)
    missing = [u for u in g.nodes if u not in reached]
    if missing and g.truncated:
        res.undecided()
    elif missing:
        u = missing[0]
        res.fail(f"no least-level-then-internal path to {show(u)}; a path:\n" + _trace(_shortest(g, u)))
    return res


def check_completeness(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    g = reachable_graph(t, ctx.profile, ctx.fuel, ctx.cap)
    ll_part = _closure([t], g.out_edges(), lambda e: e.least_level)
    for u in g.normal_forms(ctx.profile):
        if u in ll_part:
            continue
        if g.truncated:
            res.undecided()
        else:
            res.fail(f"normal form {show(u)} not reached by least-level steps; a path:\n" + _trace(_shortest(g, u)))
    return res


def check_good_least_level(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    g = reachable_graph(t, ctx.profile, ctx.fuel, ctx.cap)
    ll = {n: least_level(n, ctx.profile) for n in g.nodes}
    for e in g.edges:
        after = ll[e.target]
        if after < e.ll:
            res.fail("monotonicity: least level drops\n" + _trace([e]))
        if e.internal and after != e.ll:
            res.fail("internal invariance: least level changes\n" + _trace([e]))
        if e.internal and after == INF:
            res.fail("persistence: internal step reaches a normal form\n" + _trace([e]))
    return res


def _quasi_diamond(t: Term, rel: Callable[[Term], list[StepRecord]]) -> Outcome:
    res = Outcome()
    steps = rel(t)
    targets = {}
    for s in steps:
        targets.setdefault(s.target, s)
    if len(targets) < 2:
        return res
    joins = {u: {s.target for s in rel(u)} for u in targets}
    items = list(targets.items())
    for i, (u1, s1) in enumerate(items):
        for u2, s2 in items[i + 1 :]:
            if not joins[u1] & joins[u2]:
                res.fail("peak without a one-step join\n" + _peak(s1, s2))
    return res


def check_quasi_diamond_ll(t: Term, ctx: Ctx) -> Outcome:
    return _quasi_diamond(t, lambda u: successors(u, ctx.profile, LEAST_LEVEL))


def check_quasi_diamond_ll_lo(t: Term, ctx: Ctx) -> Outcome:
    def rel(u: Term) -> list[StepRecord]:
        return successors(u, ctx.profile, LEAST_LEVEL) + successors(u, ctx.profile, LEFTMOST_OUTERMOST)

    return _quasi_diamond(t, rel)


def check_simulation_cbn(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    bang = bang_of(ctx.profile)
    src = successors(t, ctx.profile)
    tgt = successors(cbn_translate(t), bang)
    images = {(mapped_rule(s.rule), cbn_translate(s.target)) for s in src}
    got = {(b.rule, b.target) for b in tgt}
    for s in src:
        if (mapped_rule(s.rule), cbn_translate(s.target)) not in got:
            res.fail("soundness: step not simulated by exactly one step\n" + _trace([s]))
    for b in tgt:
        if (b.rule, b.target) not in images:
            res.fail("completeness: translated step has no source step\n" + _trace([b]))
    return res


def _d_steps(u: Term, profile: CalculusProfile = BANG) -> list[StepRecord]:
    # the profile matters for classification: active operators shift the least level
    return successors(u, profile, D_ONLY)


def _within_one_d(u: Term, goal: Term, level: int | None = None) -> bool:
    if u == goal:
        return True
    return any(d.target == goal and (level is None or d.level == level) for d in _d_steps(u))


def check_simulation_cbv(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    bang = bang_of(ctx.profile)
    src = successors(t, ctx.profile)
    tgt = successors(cbv_translate(t), bang)
    for s in src:
        goal = cbv_translate(s.target)
        if _d_steps(goal):
            res.fail("target translation is not d-normal\n" + _trace([s]))
        if not any(b.rule == mapped_rule(s.rule) and _within_one_d(b.target, goal) for b in tgt):
            res.fail("soundness: step not simulated by one step plus at most one d-step\n" + _trace([s]))
    for b in tgt:
        goal = d_normalize(b.target)
        if not _within_one_d(b.target, goal):
            res.fail("completeness: more than one d-step needed\n" + _trace([b]))
        if not any(mapped_rule(s.rule) == b.rule and cbv_translate(s.target) == goal for s in src):
            res.fail("completeness: translated step has no source step\n" + _trace([b]))
    return res


def _lambda_profiles(ctx: Ctx) -> tuple[CalculusProfile, CalculusProfile, CalculusProfile]:
    ops = ctx.profile.operators
    return (
        CalculusProfile(Calculus.CBN, ops),
        CalculusProfile(Calculus.CBV, ops),
        CalculusProfile(Calculus.BANG, ops),
    )


def check_normal_forms(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    cbn, cbv, bang = _lambda_profiles(ctx)
    for name, prof, image in (("cbn", cbn, cbn_translate(t)), ("cbv", cbv, cbv_translate(t))):
        src_rules = {r.rule for r in enumerate_redexes(t, prof)}
        tgt_rules = {r.rule for r in enumerate_redexes(image, bang)}
        for rule in prof.rules:
            if (rule in src_rules) != (mapped_rule(rule) in tgt_rules):
                res.fail(
                    f"{name}: {rule}-normality of {show(t)} differs from "
                    f"{mapped_rule(rule)}-normality of {show(image)}"
                )
    return res


def check_levels(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    cbn, cbv, bang = _lambda_profiles(ctx)
    tn, tv = cbn_translate(t), cbv_translate(t)
    if least_level(t, cbn) != least_level(tn, bang):
        res.fail(f"cbn least level {least_level(t, cbn)} vs {least_level(tn, bang)} for {show(tn)}")
    if least_level(t, cbv) != least_level(tv, bang):
        res.fail(f"cbv least level {least_level(t, cbv)} vs {least_level(tv, bang)} for {show(tv)}")

    src = {(mapped_rule(s.rule), s.level, cbn_translate(s.target)) for s in successors(t, cbn)}
    tgt = {(b.rule, b.level, b.target) for b in successors(tn, bang)}
    if src != tgt:
        res.fail(
            "cbn leveled steps differ:\n"
            + "\n".join(f"  {r}@{k} {show(u)}" for r, k, u in sorted(src ^ tgt, key=str))
        )

    v_src = successors(t, cbv)
    v_tgt = successors(tv, bang)
    for s in v_src:
        goal = cbv_translate(s.target)
        if not any(
            b.rule == mapped_rule(s.rule) and b.level == s.level and _within_one_d(b.target, goal, s.level)
            for b in v_tgt
        ):
            res.fail("cbv: leveled step not simulated at the same level\n" + _trace([s]))
    for b in v_tgt:
        if not any(
            mapped_rule(s.rule) == b.rule
            and s.level == b.level
            and _within_one_d(b.target, cbv_translate(s.target), b.level)
            for s in v_src
        ):
            res.fail("cbv: translated step has no source step at its level\n" + _trace([b]))

    for path, _ in positions(t):
        c = replace_at(t, path, HOLE)
        if context_level(c, cbn) != context_level(cbn_translate(c), bang):
            res.fail(f"cbn context level differs for {show(c)}")
        if context_level(c, cbv) != context_level(cbv_translate(c), bang):
            res.fail(f"cbv context level differs for {show(c)}")
    return res


def _classified(steps: list[StepRecord], kind: str) -> list[StepRecord]:
    return [s for s in steps if (s.least_level if kind == "ll" else s.internal)]


def check_ll_steps(t: Term, ctx: Ctx) -> Outcome:
    """Least-level and internal steps correspond through both translations."""
    res = Outcome()
    cbn, cbv, bang = _lambda_profiles(ctx)
    tn, tv = cbn_translate(t), cbv_translate(t)
    n_src, n_tgt = successors(t, cbn), successors(tn, bang)
    v_src, v_tgt = successors(t, cbv), successors(tv, bang)
    for kind in ("ll", "int"):
        left = {(mapped_rule(s.rule), cbn_translate(s.target)) for s in _classified(n_src, kind)}
        right = {(b.rule, b.target) for b in _classified(n_tgt, kind)}
        if left != right:
            res.fail(f"cbn {kind} steps differ for {show(t)}")

        # the optional d-step must carry the same classification
        def lands(b: StepRecord, goal: Term) -> bool:
            if b.target == goal:
                return True
            return any(d.target == goal for d in _classified(_d_steps(b.target, bang), kind))

        right_v = _classified(v_tgt, kind)
        candidates = {s.target for s in v_src}
        for b in right_v:
            for x in [b.target, *(d.target for d in _classified(_d_steps(b.target, bang), kind))]:
                try:
                    back = forgetful(x)
                except TranslationError:
                    continue
                if cbv_translate(back) == x:
                    candidates.add(back)
        for u in candidates:
            goal = cbv_translate(u)
            lhs = {mapped_rule(s.rule) for s in _classified(v_src, kind) if s.target == u}
            rhs = {b.rule for b in right_v if lands(b, goal)}
            if lhs != rhs:
                res.fail(f"cbv {kind} steps to {show(u)} differ: source {sorted(lhs)} vs bang {sorted(rhs)} from {show(t)}")
    return res


def _substituends(pool: int) -> list[Term]:
    names = pool_names(max(pool, 1))
    x = Var(names[0])
    return [x, Bang(x), Abs("a", Bang(x)), Abs("a", App(x, Bang(x))), Bang(Abs("a", x)), Var("q")]


def check_modular(t: Term, ctx: Ctx) -> Outcome:
    """Substitutivity, root linear swap, root-first swap of internal steps, and postponement."""
    res = Outcome()
    prof = ctx.profile
    pure = CalculusProfile(Calculus.BANG)
    for gamma in prof.operators:
        # substitutivity of the root rule
        if root_rule(t, prof) == gamma:
            for i, r1 in enumerate(contract(t, gamma)):
                for x in pool_names(ctx.pool):
                    for q in _substituends(ctx.pool):
                        lhs = substitute(t, x, q)
                        if substitute(r1, x, q) not in contract(lhs, gamma):
                            res.fail(f"{gamma} not substitutive: {show(t)} -> {show(r1)} with {x} := {show(q)}")
        steps = successors(t, prof)
        for e in steps:
            if not e.internal or root_rule(e.target, prof) != gamma:
                continue
            for s in contract(e.target, gamma):
                root = contract(t, gamma) if root_rule(t, prof) == gamma else ()
                # root linear swap for internal !beta steps
                if e.rule == "!beta":
                    undecided = False
                    found = False
                    for s0 in root:
                        g = reachable_graph(s0, pure, ctx.fuel, ctx.cap)
                        if s in g.nodes:
                            found = True
                            break
                        undecided |= g.truncated
                    if not found:
                        msg = f"root linear swap: {show(t)} has no {gamma} root step followed by !beta steps to {show(s)}\n"
                        if undecided:
                            res.undecided()
                        else:
                            res.fail(msg + _trace([e]))
                # an internal step then a root step: swap to the root step first, then at most one step of the same rule
                if not any(s0 == s or any(f.target == s and f.rule == e.rule for f in successors(s0, prof)) for s0 in root):
                    res.fail(f"roots: {show(t)} has no {gamma} root step then optional {e.rule} step to {show(s)}\n" + _trace([e]))
        # internal gamma steps strongly postpone after least-level gamma steps
        for e in steps:
            if e.rule != gamma or not e.internal:
                continue
            for f in successors(e.target, prof, LEAST_LEVEL):
                if f.rule != gamma:
                    continue
                if not any(
                    h.rule == gamma
                    and (h.target == f.target or any(k.rule == gamma and k.target == f.target for k in successors(h.target, prof)))
                    for h in successors(t, prof, LEAST_LEVEL)
                ):
                    res.fail(f"{gamma} postponement fails\n" + _trace([e, f]))
    return res


def check_strong_postponement(t: Term, ctx: Ctx) -> Outcome:
    """Internal steps of the chosen rules strongly postpone after least-level ones."""
    res = Outcome()
    prof = ctx.profile
    rules = set(prof.operators)

    def rel(u: Term, flt) -> list[StepRecord]:
        return [s for s in successors(u, prof, flt) if s.rule in rules]

    e_closure: dict[Term, None] | None = None
    truncated = False
    for i in rel(t, INTERNAL):
        for e in rel(i.target, LEAST_LEVEL):
            if e_closure is None:
                e_closure = {t: None}
                queue = deque([(t, 0)])
                while queue:
                    u, depth = queue.popleft()
                    if depth >= ctx.fuel:
                        truncated |= bool(rel(u, LEAST_LEVEL))
                        continue
                    for s in rel(u, LEAST_LEVEL):
                        if s.target not in e_closure:
                            if len(e_closure) >= ctx.cap:
                                truncated = True
                                continue
                            e_closure[s.target] = None
                            queue.append((s.target, depth + 1))
            ok = any(u == e.target or any(k.target == e.target for k in rel(u, INTERNAL)) for u in e_closure)
            if ok:
                continue
            if truncated:
                res.undecided()
            else:
                res.fail("internal step does not postpone\n" + _trace([i, e]))
    return res


def check_merge_split(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    prof = BANG
    try:
        ds = derivations(t)
        par = {p.target for p in parallel_successors(t)}
        ipar = internal_parallel_successors(t)
        singles = successors(t, prof)

        # sandwich, left half, and the macro condition's left half
        for s in singles:
            if s.target not in par:
                res.fail("single step is not a parallel step\n" + _trace([s]))
            if s.internal and s.target not in ipar:
                res.fail("internal step is not an internal parallel step\n" + _trace([s]))

        g = reachable_graph(t, prof, ctx.fuel, ctx.cap)
        out = g.out_edges()
        internal_reach = _closure([t], out, lambda e: e.internal)
        def missed(msg: str) -> None:
            if g.truncated:
                res.undecided()
            else:
                res.fail(msg)

        for u in par - g.nodes.keys():
            missed(f"parallel target {show(u)} not reachable by single steps")
        for u in ipar - internal_reach.keys():
            missed(f"internal parallel target {show(u)} not reachable by internal steps")

        # merge by level, over every derivation
        for r, n, _ in ds:
            for s in successors(r, prof):
                if n > s.level and s.target not in par:
                    res.fail(f"merge by level: {show(t)} =>@{n} {show(r)}\n" + _trace([s]))
        for r in ipar:
            for s in successors(r, prof, LEAST_LEVEL):
                if s.target not in par:
                    res.fail(f"merge for least level: {show(t)} => {show(r)} internally\n" + _trace([s]))

        # indexed split, over every derivation
        ll_steps = [s for s in singles if s.least_level]
        for u, _, n in ds:
            if u in ipar:
                continue
            if n > 0 and any((u, n - 1) in {(v, c) for v, _, c in derivations(s.target)} for s in ll_steps):
                continue
            res.fail(f"indexed split: {show(t)} => {show(u)} with count {n}")

        # split for least level: least-level steps, then one internal parallel step
        ll_reach = _closure([t], out, lambda e: e.least_level)
        for u in par:
            if not any(u in internal_parallel_successors(q) for q in ll_reach):
                missed(f"split for least level: {show(t)} => {show(u)}")
    except TooManyRedexes:
        res.undecided()
    return res


def check_surface_in_ll(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    for s in successors(t, ctx.profile):
        if s.surface and not s.least_level:
            res.fail("surface step is not least-level\n" + _trace([s]))
    return res


def _shape(t: Term) -> str:
    return f"op:{t.op}" if isinstance(t, Op) else type(t).__name__


def check_shape(t: Term, ctx: Ctx) -> Outcome:
    res = Outcome()
    for s in successors(t, ctx.profile):
        if (s.redex.path or s.internal) and _shape(s.target) != _shape(t):
            res.fail("non-root step changes the top constructor\n" + _trace([s]))
    return res


# -- registry and runner -----------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    checker: Checker
    calculi: frozenset[Calculus]
    needs_ops: bool = False
    description: str = ""


_ALL = frozenset(Calculus)
_LAMBDA = frozenset({Calculus.CBN, Calculus.CBV})

SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("factorization", check_factorization, _ALL, description="least-level steps then internal steps reach every reduct"),
        Suite("completeness", check_completeness, _ALL, description="least-level steps reach every normal form"),
        Suite("good-least-level", check_good_least_level, _ALL, description="monotonicity, internal invariance, persistence"),
        Suite("quasi-diamond", check_quasi_diamond_ll, _ALL, description="least-level peaks join in one step"),
        Suite("quasi-diamond-lo", check_quasi_diamond_ll_lo, _LAMBDA, description="least-level plus leftmost-outermost peaks join in one step"),
        Suite("simulation-cbn", check_simulation_cbn, frozenset({Calculus.CBN}), description="cbn steps and translated steps match one to one"),
        Suite("simulation-cbv", check_simulation_cbv, frozenset({Calculus.CBV}), description="cbv steps match one step plus at most one d-step"),
        Suite("normal-forms", check_normal_forms, _LAMBDA, description="translations preserve and reflect normal forms"),
        Suite("levels", check_levels, _LAMBDA, description="translations preserve step levels, context levels and least levels"),
        Suite("ll-steps", check_ll_steps, _LAMBDA, description="translations preserve least-level and internal steps"),
        Suite("modular", check_modular, frozenset({Calculus.BANG}), needs_ops=True, description="substitutivity, root linear swap, root-first swaps"),
        Suite("postponement", check_strong_postponement, _ALL, needs_ops=True, description="internal operator steps strongly postpone"),
        Suite("merge-split", check_merge_split, frozenset({Calculus.BANG}), description="merge and split for parallel reduction, sandwich, macro"),
        Suite("surface-in-ll", check_surface_in_ll, _ALL, description="surface steps are least-level"),
        Suite("shape", check_shape, _ALL, description="non-root steps keep the top constructor"),
    ]
}


class SuiteError(ValueError):
    pass


def _resolve(name: str, spec: GenSpec) -> Suite:
    suite = SUITES.get(name)
    if suite is None:
        raise SuiteError(f"unknown suite {name!r} (known: {', '.join(SUITES)})")
    if spec.profile.calculus not in suite.calculi:
        allowed = ", ".join(sorted(c.value for c in suite.calculi))
        raise SuiteError(f"suite {name} needs calculus {allowed}, got {spec.profile.calculus.value}")
    if suite.needs_ops and not spec.profile.operators:
        raise SuiteError(f"suite {name} needs an operator rule (e.g. --ops oplus)")
    return suite


def _run_chunk(name: str, spec: GenSpec, fuel: int, cap: int, chunk: int, chunks: int) -> CheckReport:
    suite = _resolve(name, spec)
    ctx = Ctx(spec.profile, fuel, cap, spec.pool)
    report = CheckReport(name, spec.describe())
    start = time.perf_counter()
    for i, t in enumerate(gen_terms(spec)):
        if i % chunks != chunk:
            continue
        out = suite.checker(t, ctx)
        report.cases_run += 1
        if out.status == "inconclusive":
            report.inconclusive += 1
        report.failures.extend(Failure(show(t), w) for w in out.witnesses)
    report.wall_time = time.perf_counter() - start
    return report


def run_suite(name: str, spec: GenSpec, fuel: int = 25, cap: int = 500, workers: int = 1) -> CheckReport:
    """Run one suite over the corpus described by ``spec``.

    Workers regenerate the corpus themselves and take every ``workers``-th
    term, so nothing but the spec crosses process boundaries.  The merged
    report lists failures in chunk order, which is deterministic.
    """
    _resolve(name, spec)
    start = time.perf_counter()
    if workers <= 1:
        report = _run_chunk(name, spec, fuel, cap, 0, 1)
    else:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, *zip(*[(name, spec, fuel, cap, k, workers) for k in range(workers)])))
        report = parts[0]
        for p in parts[1:]:
            report = report.merge(p)
    report.wall_time = time.perf_counter() - start
    return report
