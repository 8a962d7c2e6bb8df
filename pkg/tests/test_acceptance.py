"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line to the terminal
(even under output capture) before asserting.
"""

import pytest

from bangcalc.props import GenSpec, gen_terms, run_suite
from bangcalc.redex import least_level, least_level_inductive
from bangcalc.reduction import FuelExhausted, NormalForm, format_trace, reduce, successors, LEFTMOST_OUTERMOST
from bangcalc.surface import parse
from bangcalc.syntax import BANG, BANG_OPLUS, CBN, CBN_OPLUS, CBV, CBV_OPLUS
from bangcalc.translate import cbn_inverse, cbn_translate, cbv_translate, forgetful

from conftest import OMEGA_BANG, R

pytestmark = pytest.mark.acceptance

FUEL, CAP = 25, 500


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return emit


def _runs(jobs):
    """Run (suite, spec) pairs; return the reports and a compact description."""
    reports = [run_suite(name, spec, FUEL, CAP) for name, spec in jobs]
    bad = [r for r in reports if r.verdict != "PASS"]
    detail = "; ".join(f"{r.suite}[{r.corpus}] {r.verdict} cases={r.cases_run} fail={len(r.failures)}" for r in reports)
    return reports, bad, detail


def _lambda_corpus(profile):
    return [GenSpec(profile, 6), GenSpec(profile, 12, count=5000, seed=42)]


def test_criterion_1_factorization_pure_bang(verdict):
    (report,), bad, detail = _runs([("factorization", GenSpec(BANG, 7))])
    ok = not bad and report.wall_time <= 300
    assert verdict(1, ok, f"{detail} time={report.wall_time:.1f}s (limit 300s)"), report.to_text(max_failures=3)


def test_criterion_2_factorization_with_operators(verdict):
    jobs = [("factorization", GenSpec(p, 6)) for p in (BANG_OPLUS, CBN_OPLUS, CBV_OPLUS)]
    _, bad, detail = _runs(jobs)
    assert verdict(2, not bad, detail), "\n".join(r.to_text(max_failures=3) for r in bad)


def test_criterion_3_simulations(verdict):
    jobs = [("simulation-cbn", s) for p in (CBN, CBN_OPLUS) for s in _lambda_corpus(p)]
    jobs += [("simulation-cbv", s) for p in (CBV, CBV_OPLUS) for s in _lambda_corpus(p)]
    _, bad, detail = _runs(jobs)
    assert verdict(3, not bad, detail), "\n".join(r.to_text(max_failures=3) for r in bad)


def test_criterion_4_normal_forms_and_levels(verdict):
    jobs = [(suite, s) for suite in ("normal-forms", "levels") for p in (CBN_OPLUS, CBV_OPLUS) for s in _lambda_corpus(p)]
    _, bad, detail = _runs(jobs)
    assert verdict(4, not bad, detail), "\n".join(r.to_text(max_failures=3) for r in bad)


def test_criterion_5_good_least_level(verdict):
    jobs = [("good-least-level", GenSpec(p, 7)) for p in (BANG, BANG_OPLUS, CBN_OPLUS, CBV_OPLUS)]
    _, bad, detail = _runs(jobs)
    assert verdict(5, not bad, detail), "\n".join(r.to_text(max_failures=3) for r in bad)


def test_criterion_6_quasi_diamond(verdict):
    jobs = [("quasi-diamond", GenSpec(BANG, 7)), ("quasi-diamond-lo", GenSpec(CBN, 7))]
    _, bad, detail = _runs(jobs)
    assert verdict(6, not bad, detail), "\n".join(r.to_text(max_failures=3) for r in bad)


def test_criterion_7_modular_test(verdict):
    _, bad, detail = _runs([("modular", GenSpec(BANG_OPLUS, 6))])
    assert verdict(7, not bad, detail), "\n".join(r.to_text(max_failures=3) for r in bad)


def test_criterion_8_merge_split(verdict):
    _, bad, detail = _runs([("merge-split", GenSpec(BANG, 6))])
    assert verdict(8, not bad, detail), "\n".join(r.to_text(max_failures=3) for r in bad)


def test_criterion_9_golden_traces(verdict):
    checks = {}

    sim = parse(r"(\z.z) x y")
    out = reduce(cbn_translate(sim), BANG, "ll", 10)
    checks["cbn via translation"] = isinstance(out, NormalForm) and format_trace(out.trace) == (
        "0: (\\z.z) !x !y --!beta@0,ll,surf--> x !y\n"
    )

    out = reduce(cbv_translate(sim), BANG, "ll", 10)
    checks["cbv route"] = (
        isinstance(out, NormalForm)
        and format_trace(out.trace)
        == "0: (\\x.x) ((\\z.!z) !x) !y --!beta@0,ll,surf--> (\\x.x) !x !y\n"
        "1: (\\x.x) !x !y --!beta@0,ll,surf--> x !y\n"
        and [s.redex.is_d for s in out.trace] == [False, True]
    )

    out = reduce(parse(OMEGA_BANG), BANG, "ll", 1000)
    checks["divergence"] = isinstance(out, FuelExhausted) and out.cycle_detected and out.distinct_states == 1

    lls = [least_level(parse(src), BANG_OPLUS) for src in (f"x !{R}", f"{R} !{R}", f"#oplus(x, y) !{R}")]
    checks["least levels"] = lls == [1, 0, 0]

    lo = parse(r"#oplus(x, y) ((\x.x) \x.x)")
    with_op = {s.rule for s in successors(lo, CBN_OPLUS, LEFTMOST_OUTERMOST)}
    without = {s.rule for s in successors(lo, CBN, LEFTMOST_OUTERMOST)}
    checks["lo asymmetry"] = with_op == {"oplus"} and without == {"beta"}

    failed = [k for k, ok in checks.items() if not ok]
    assert verdict(9, not failed, f"{len(checks) - len(failed)}/{len(checks)} golden checks" + (f" failed: {failed}" if failed else "")), failed


def test_criterion_10_oracle_agreement(verdict):
    bang_specs = [GenSpec(BANG, 7), GenSpec(BANG_OPLUS, 6), GenSpec(BANG_OPLUS, 12, count=5000, seed=42)]
    mismatched, checked = [], 0
    for spec in bang_specs:
        for t in gen_terms(spec):
            checked += 1
            if least_level_inductive(t, spec.profile) != least_level(t, spec.profile):
                mismatched.append(t)
    lam_specs = [GenSpec(CBN_OPLUS, 7), GenSpec(CBV_OPLUS, 12, count=5000, seed=42)]
    not_inverse, lam_checked = [], 0
    for spec in lam_specs:
        for t in gen_terms(spec):
            lam_checked += 1
            if cbn_inverse(cbn_translate(t)) != t or forgetful(cbv_translate(t)) != t:
                not_inverse.append(t)
    ok = not mismatched and not not_inverse
    detail = (
        f"least-level oracle {checked - len(mismatched)}/{checked}; "
        f"left inverses {lam_checked - len(not_inverse)}/{lam_checked}"
    )
    assert verdict(10, ok, detail), (mismatched[:3], not_inverse[:3])
