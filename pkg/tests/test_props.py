from functools import lru_cache

import pytest
from named import alpha_canon, fv, to_src

from bangcalc.props import SUITES, CheckReport, Failure, GenSpec, count_terms, factorization_witness, gen_terms, run_suite
from bangcalc.props.suites import INCONCLUSIVE, NOT_FOUND, SuiteError
from bangcalc.reduction import StepRecord
from bangcalc.surface import parse, show
from bangcalc.syntax import BANG, BANG_OPLUS, CBN, CBN_OPLUS, CBV, CBV_OPLUS
from bangcalc.translate import cbn_translate

from conftest import OMEGA_BANG, R


# -- corpus generation ---------------------------------------------------------


def _named_of_size(n, names, bang, ops, depth=0):
    """Every named term of exact size ``n``; binders are named after their depth."""
    out = []
    if n == 1:
        out += [("var", x) for x in names]
    if n >= 2:
        b = f"b{depth}"
        out += [("lam", b, body) for body in _named_of_size(n - 1, names + [b], bang, ops, depth + 1)]
        if bang:
            out += [("bang", body) for body in _named_of_size(n - 1, names, bang, ops, depth)]
    for k in range(1, n - 1):
        for f in _named_of_size(k, names, bang, ops, depth):
            for a in _named_of_size(n - 1 - k, names, bang, ops, depth):
                out.append(("app", f, a))
                if ops:
                    out.append(("op", "oplus", f, a))
    return out


@lru_cache(maxsize=None)
def brute(max_size, pool, bang, ops):
    names = ["x", "y", "z"][:pool]
    classes = set()
    terms = []
    for n in range(1, max_size + 1):
        for t in _named_of_size(n, names, bang, ops):
            c = alpha_canon(t)
            if c not in classes and fv(t) <= set(names):
                classes.add(c)
                terms.append(t)
    return terms


@pytest.mark.parametrize(
    "profile,bang,ops",
    [(BANG, True, False), (BANG_OPLUS, True, True), (CBN, False, False), (CBV_OPLUS, False, True)],
)
@pytest.mark.parametrize("pool", [1, 2])
def test_exhaustive_corpus_matches_brute_force(profile, bang, ops, pool):
    spec = GenSpec(profile, 6, pool)
    want = {parse(to_src(t)) for t in brute(6, pool, bang, ops)}
    got = list(gen_terms(spec))
    assert len(got) == len(set(got)) == count_terms(spec)
    assert set(got) == want


def test_pool_of_one_up_to_size_two():
    got = set(gen_terms(GenSpec(BANG, 2, 1)))
    assert got == {parse("x"), parse(r"\a.x"), parse(r"\a.a"), parse("!x")}


def test_corpus_respects_profile():
    assert all("#" not in show(t) and "!" not in show(t) for t in gen_terms(GenSpec(CBN, 4)))
    ops = GenSpec(CBN, 4, include_ops=True)
    assert count_terms(ops) > count_terms(GenSpec(CBN, 4))
    assert count_terms(GenSpec(CBN_OPLUS, 4, include_ops=False)) == count_terms(GenSpec(CBN, 4))


def test_random_mode_is_reproducible_and_bounded():
    spec = GenSpec(BANG, 12, count=200, seed=42)
    a, b = list(gen_terms(spec)), list(gen_terms(spec))
    assert a == b and len(a) == 200
    assert list(gen_terms(GenSpec(BANG, 12, count=200, seed=43))) != a
    from bangcalc.syntax import size

    assert all(size(t) <= 12 for t in a)
    assert "random(count=200, seed=42)" in spec.describe()


# -- factorization witnesses --------------------------------------------------


def test_witness_single_least_level_step():
    w = factorization_witness(parse(f"x !{R}"), parse("x !z"), BANG)
    assert len(w.least_level_prefix) == 1 and w.internal_suffix == ()


def test_witness_trivial():
    w = factorization_witness(parse(R), parse(R), BANG)
    assert (w.least_level_prefix, w.internal_suffix) == ((), ())


def test_witness_internal_suffix():
    t = parse(rf"(\z.{R}) !{R}")
    w = factorization_witness(t, parse(r"(\z.z) !z"), BANG)
    assert all(isinstance(s, StepRecord) for s in w.least_level_prefix + w.internal_suffix)
    assert all(s.least_level for s in w.least_level_prefix)
    assert all(s.internal for s in w.internal_suffix)
    steps = w.least_level_prefix + w.internal_suffix
    assert steps[0].source == t and steps[-1].target == parse(r"(\z.z) !z")


def test_witness_not_found_and_inconclusive():
    assert factorization_witness(parse("x"), parse("y"), BANG) == NOT_FOUND
    t = parse(r"(\x.x x x) (\x.x x x)")
    assert factorization_witness(t, parse("y"), CBN, fuel=3) == INCONCLUSIVE


# -- reports --------------------------------------------------------------------


def test_report_merge_and_text():
    a = CheckReport("s", "c", 3, [Failure("x", "w1\nw2")], 0, 1.0)
    b = CheckReport("s", "", 2, [], 1, 0.5)
    m = a.merge(b)
    assert (m.cases_run, m.inconclusive, m.wall_time, m.verdict) == (5, 1, 1.5, "FAIL")
    text = m.to_text(timing=False)
    assert "time=" not in text
    assert text.splitlines()[1:] == ["failure 0: x", "  w1", "  w2"]
    assert CheckReport("s", cases_run=1, inconclusive=1).verdict == "INCONCLUSIVE"
    assert CheckReport("s").verdict == "PASS"
    with pytest.raises(ValueError):
        a.merge(CheckReport("other"))
    many = CheckReport("s", failures=[Failure("x", "w")] * 3)
    assert many.to_text(max_failures=1).rstrip().endswith("... 2 more failures")


# -- suites -----------------------------------------------------------------------

SMALL = {
    "factorization": [BANG, BANG_OPLUS, CBN_OPLUS, CBV_OPLUS],
    "completeness": [BANG, CBV],
    "good-least-level": [BANG, BANG_OPLUS, CBN_OPLUS, CBV_OPLUS],
    "quasi-diamond": [BANG],
    "quasi-diamond-lo": [CBN],
    "simulation-cbn": [CBN_OPLUS],
    "simulation-cbv": [CBV_OPLUS],
    "normal-forms": [CBN_OPLUS],
    "levels": [CBV_OPLUS],
    "ll-steps": [CBN_OPLUS],
    "modular": [BANG_OPLUS],
    "postponement": [BANG_OPLUS, CBN_OPLUS],
    "merge-split": [BANG],
    "surface-in-ll": [BANG_OPLUS],
    "shape": [BANG_OPLUS],
}


def test_every_suite_is_exercised():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("name,profile", [(n, p) for n, ps in SMALL.items() for p in ps])
def test_suite_passes_on_small_corpus(name, profile):
    report = run_suite(name, GenSpec(profile, 5))
    assert report.verdict == "PASS", report.to_text(max_failures=3)
    assert report.cases_run == count_terms(GenSpec(profile, 5))


def test_workers_agree_with_serial_run():
    spec = GenSpec(BANG, 5)
    a, b = run_suite("factorization", spec), run_suite("factorization", spec, workers=2)
    assert (a.cases_run, a.verdict) == (b.cases_run, b.verdict)


def test_incompatible_profiles_rejected():
    with pytest.raises(SuiteError):
        run_suite("simulation-cbn", GenSpec(BANG, 3))
    with pytest.raises(SuiteError):
        run_suite("modular", GenSpec(BANG, 3))
    with pytest.raises(SuiteError):
        run_suite("nope", GenSpec(BANG, 3))


def test_truncated_graph_turns_a_miss_into_inconclusive(monkeypatch):
    from bangcalc import reduction

    # a missing reduct only counts as a failure when the graph is complete
    monkeypatch.setattr(reduction.StepRecord, "least_level", property(lambda s: s.redex.path == ()))
    from bangcalc.props.suites import Ctx, check_factorization

    t = parse(rf"x !((\y.!y) !{R})")
    assert check_factorization(t, Ctx(BANG, 1, 500)).status == "inconclusive"
    assert check_factorization(t, Ctx(BANG, 25, 500)).status == "fail"


def test_diverging_term_factorizes():
    from bangcalc.props.suites import Ctx, check_factorization

    assert check_factorization(parse(OMEGA_BANG), Ctx(BANG, 25, 500)).status == "ok"


# -- mutants: broken implementations must be caught ------------------------------


def test_mutant_root_only_least_level_is_caught(monkeypatch):
    from bangcalc import reduction

    monkeypatch.setattr(reduction.StepRecord, "least_level", property(lambda s: s.redex.path == ()))
    report = run_suite("factorization", GenSpec(BANG, 6))
    assert report.verdict == "FAIL"
    assert "no least-level-then-internal path" in report.failures[0].witness


def test_mutant_unboxed_argument_translation_is_caught(monkeypatch):
    from bangcalc.props import suites
    from bangcalc.syntax import App

    def broken(t):
        u = cbn_translate(t)
        return App(u.fun, u.arg.body) if isinstance(u, App) else u

    monkeypatch.setattr(suites, "cbn_translate", broken)
    assert run_suite("simulation-cbn", GenSpec(CBN, 5)).verdict == "FAIL"


def test_mutant_parallel_count_is_caught(monkeypatch):
    from bangcalc.props import suites

    real = suites.derivations

    def off_by_one(t, _memo=None):
        return frozenset((s, lv, n + 1 if n else n) for s, lv, n in real(t))

    monkeypatch.setattr(suites, "derivations", off_by_one)
    assert run_suite("merge-split", GenSpec(BANG, 6)).verdict == "FAIL"


def test_d_step_classification_follows_active_operators():
    # the optional d-step after a simulated step sits under a live operator redex,
    # so it is internal, not least-level
    from bangcalc.props.suites import Ctx, check_ll_steps

    t = parse(r"#oplus(\a.\b.#oplus(b, b) b, x)")
    assert check_ll_steps(t, Ctx(CBN_OPLUS, 25, 500)).status == "ok"
