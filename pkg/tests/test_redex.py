import math

import pytest
from hypothesis import given
from named import named_terms, to_src

from bangcalc.props.generate import GenSpec, gen_terms
from bangcalc.redex import (
    context_level,
    enumerate_redexes,
    least_level,
    least_level_inductive,
    level_of_path,
)
from bangcalc.reduction import is_normal
from bangcalc.surface import parse
from bangcalc.syntax import (
    ABS_BODY,
    APP_LEFT,
    APP_RIGHT,
    BANG,
    BANG_BODY,
    BANG_OPLUS,
    CBN,
    CBN_OPLUS,
    CBV,
    CBV_OPLUS,
    HOLE,
    path_key,
    positions,
    replace_at,
)
from bangcalc.translate import cbn_translate, cbv_translate

from conftest import R


def test_level_of_hole_under_bang():
    assert context_level(parse("![]"), BANG) == 1


def test_level_under_abstraction_by_calculus():
    assert context_level(parse(r"\x.[]"), CBV) == 1
    assert context_level(parse(r"\x.[]"), CBN) == 0


def test_applied_abstraction_does_not_raise_cbv_level():
    assert context_level(parse(r"(\x.[]) t"), CBV) == 0
    assert level_of_path((APP_LEFT, ABS_BODY), CBV) == 0
    assert level_of_path((APP_RIGHT, ABS_BODY), CBV) == 1


def test_cbn_counts_arguments_only():
    assert context_level(parse("x []"), CBN) == 1
    assert context_level(parse("[] x"), CBN) == 0
    assert context_level(parse("x []"), CBV) == 0
    assert context_level(parse("#oplus([], x)"), CBN) == 1
    assert level_of_path((BANG_BODY, BANG_BODY), BANG) == 2


def test_level_of_path_checks_the_path():
    with pytest.raises(ValueError):
        level_of_path((BANG_BODY,), BANG, parse("x"))


def test_identity_redex_is_flagged_d():
    (r,) = enumerate_redexes(parse(r"(\x.x) !z"), BANG)
    assert (r.path, r.rule, r.level, r.is_d) == ((), "!beta", 0, True)


def test_redex_inside_box_argument():
    (r,) = enumerate_redexes(parse(f"x !{R}"), BANG)
    assert r.level == 1


def test_operator_redex_seen_before_boxed_redex():
    rs = enumerate_redexes(parse(f"#oplus(x, y) !{R}"), BANG_OPLUS)
    assert [(r.rule, r.level) for r in rs] == [("oplus", 0), ("!beta", 1)]


def test_d_flag_is_up_to_alpha():
    (r,) = enumerate_redexes(parse(r"(\q.q) !z"), BANG)
    assert r.is_d
    (r,) = enumerate_redexes(parse(r"(\q.z) !z"), BANG)
    assert not r.is_d


def test_redex_patterns_per_calculus():
    t = parse(r"(\x.x) (y z)")
    assert [r.rule for r in enumerate_redexes(t, CBN)] == ["beta"]
    assert enumerate_redexes(t, CBV) == []
    assert [r.rule for r in enumerate_redexes(parse(r"(\x.x) y z"), CBV)] == ["betav"]
    assert [r.rule for r in enumerate_redexes(parse(r"(\x.x) \y.y"), CBV)] == ["betav"]
    assert enumerate_redexes(parse(r"(\x.x) y"), BANG) == []


def test_inactive_operator_is_not_a_redex():
    assert enumerate_redexes(parse("#oplus(x, y)"), CBN) == []
    assert [r.rule for r in enumerate_redexes(parse("#oplus(x, y)"), CBN_OPLUS)] == ["oplus"]


def test_least_level_examples():
    assert least_level(parse(r"\x.x"), BANG) == math.inf
    assert least_level(parse(f"x !{R}"), BANG) == 1
    assert least_level(parse(rf"(\z.{R}) !{R}"), BANG) == 0
    assert least_level(parse(f"{R} !{R}"), BANG) == 0
    assert least_level(parse(f"#oplus(x, y) !{R}"), BANG_OPLUS) == 0


def test_least_level_inductive_examples():
    assert least_level_inductive(parse(r"\x.x")) == math.inf
    assert least_level_inductive(parse(f"!(x !{R})")) == 2
    assert least_level_inductive(parse(f"{R} !{R}")) == 0
    # a non-redex operator adds one level above its arguments
    assert least_level_inductive(parse(f"#oplus({R}, x)")) == 1
    with pytest.raises(ValueError):
        least_level_inductive(parse("x"), CBN)


def test_enumeration_is_in_document_order():
    t = parse(rf"(\z.{R}) !{R} ({R})")
    keys = [path_key(r.path) for r in enumerate_redexes(t, BANG)]
    assert keys == sorted(keys)


@pytest.mark.parametrize("profile", [BANG, BANG_OPLUS])
def test_inductive_least_level_agrees_exhaustively(profile):
    for t in gen_terms(GenSpec(profile, 6)):
        assert least_level_inductive(t, profile) == least_level(t, profile)


@pytest.mark.parametrize("profile", [BANG_OPLUS, CBN_OPLUS, CBV_OPLUS])
def test_enumerated_levels_match_path_levels(profile):
    for t in gen_terms(GenSpec(profile, 6)):
        for r in enumerate_redexes(t, profile):
            assert r.level == level_of_path(r.path, profile, t)


@given(named_terms(bang=False))
def test_context_levels_survive_translation(t):
    term = parse(to_src(t))
    for path, _ in positions(term):
        c = replace_at(term, path, HOLE)
        assert context_level(c, CBN) == context_level(cbn_translate(c), BANG)
        assert context_level(c, CBV) == context_level(cbv_translate(c), BANG)


@given(named_terms())
def test_infinite_least_level_iff_normal(t):
    term = parse(to_src(t))
    for profile in (BANG, BANG_OPLUS):
        rs = enumerate_redexes(term, profile)
        assert (least_level(term, profile) == math.inf) == (not rs) == is_normal(term, profile)


@given(named_terms())
def test_level_zero_redexes_sit_outside_boxes(t):
    term = parse(to_src(t))
    for r in enumerate_redexes(term, BANG_OPLUS):
        if r.level == 0:
            assert all(s.kind not in ("bang", "op") for s in r.path)
