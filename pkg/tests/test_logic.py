import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from medlat.algebra import bn, chain_algebra, from_poset, neg
from medlat.errors import InputError, ResourceLimitError
from medlat.logic import (
    AXIOM_TEXT,
    And,
    Bot,
    Imp,
    Not,
    Or,
    ParseError,
    Top,
    Var,
    antichain_formula,
    axiom,
    classical_tautology,
    countermodel_search,
    depth,
    eval_formula,
    evaluation_budget,
    is_valid,
    kp_class_check,
    lm_member,
    one_variable_spectrum,
    parse,
    render,
    theory_compare,
    variables,
)


# ---------------------------------------------------------------------------
# parsing and rendering
# ---------------------------------------------------------------------------

def test_precedence_and_associativity():
    assert parse("p -> q -> r") == Imp(Var("p"), Imp(Var("q"), Var("r")))
    assert parse("~p & q | r") == Or(And(Not(Var("p")), Var("q")), Var("r"))
    assert parse("p | q & r") == Or(Var("p"), And(Var("q"), Var("r")))
    assert parse("~~p") == Not(Not(Var("p")))
    assert parse("T -> F") == Imp(Top(), Bot())


def test_parentheses_override():
    assert parse("(p -> q) -> r") == Imp(Imp(Var("p"), Var("q")), Var("r"))
    assert parse("p & (q | r)") == And(Var("p"), Or(Var("q"), Var("r")))


def test_unicode_aliases():
    assert parse("¬p ∧ q ∨ r → ⊤") == parse("~p & q | r -> T")
    assert parse("⊥") == Bot()


def test_render_minimal_parens():
    for text, expect in [
        ("(p & q) | r", "p & q | r"),
        ("p -> (q -> r)", "p -> q -> r"),
        ("(p -> q) -> r", "(p -> q) -> r"),
        ("~(p & q)", "~(p & q)"),
        ("(p | q) & r", "(p | q) & r"),
    ]:
        assert render(parse(text)) == expect


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        parse("p @ q")
    assert exc.value.position == 2
    with pytest.raises(ParseError) as exc:
        parse("p &")
    assert exc.value.position == 3
    with pytest.raises(ParseError):
        parse("(p | q")
    with pytest.raises(ParseError):
        parse("")


def test_depth_cap():
    deep = "~" * 70 + "p"
    with pytest.raises(InputError, match="depth"):
        parse(deep)


def test_variables_sorted():
    assert variables(parse("r & p | q -> p")) == ["p", "q", "r"]
    assert variables(parse("T | F")) == []


_formula = st.deferred(lambda: st.one_of(
    st.sampled_from([Var("p"), Var("q"), Var("r"), Top(), Bot()]),
    st.builds(Not, _formula),
    st.builds(And, _formula, _formula),
    st.builds(Or, _formula, _formula),
    st.builds(Imp, _formula, _formula),
))


@settings(max_examples=200, deadline=None)
@given(_formula.filter(lambda f: depth(f) <= 30))
def test_render_parse_round_trip(f):
    assert parse(render(f)) == f


# ---------------------------------------------------------------------------
# evaluation and the designated value
# ---------------------------------------------------------------------------

def test_constants_evaluate_to_bounds():
    a = bn(2)
    assert eval_formula(Top(), a, {}) == a.bottom  # truth is the least element
    assert eval_formula(Bot(), a, {}) == a.top


def test_eval_formula_matches_tables():
    a = bn(2)
    f = parse("p & q -> ~p | r")
    for p in range(a.size):
        for q in range(a.size):
            for r in range(a.size):
                want = int(a.imp[a.join[p, q], a.meet[neg(a, p), r]])
                assert eval_formula(f, a, {"p": p, "q": q, "r": r}) == want


def test_eval_formula_unbound_variable():
    with pytest.raises(InputError, match="unbound"):
        eval_formula(parse("p"), bn(1), {})


def test_tautologies_and_countermodels():
    a = bn(2)
    assert is_valid(parse("p -> p"), a).valid is True
    assert is_valid(parse("T"), a).valid is True
    rep = is_valid(parse("F"), a)
    assert rep.valid is False and rep.value_reached == a.top


def test_countermodel_is_least_and_rechecks():
    a = bn(2)
    rep = is_valid(axiom("lin"), a)
    assert rep.valid is False
    assert rep.countermodel == {"p": 1, "q": 2}
    assert eval_formula(axiom("lin"), a, rep.countermodel) == rep.value_reached
    assert rep.value_reached != a.bottom


def test_designating_the_top_breaks_classical_calibration():
    # with the greatest element designated, even p -> p stops being valid
    a = bn(1)
    assert is_valid(parse("p -> p"), a).valid is True
    assert is_valid(parse("p -> p"), a, designate_top=True).valid is False
    assert is_valid(parse("p | ~p"), a, designate_top=True).valid is False


def test_workers_agree_with_single_scan():
    a = bn(3)
    for name in ("kp", "lin"):
        r1 = is_valid(axiom(name), a, workers=1)
        r4 = is_valid(axiom(name), a, workers=4)
        assert r1.valid == r4.valid
        assert r1.countermodel == r4.countermodel


# ---------------------------------------------------------------------------
# budget and sampling
# ---------------------------------------------------------------------------

def test_budget_exceeded_without_seed():
    with pytest.raises(ResourceLimitError, match="sampling"):
        is_valid(axiom("kp"), bn(3), budget=10)


def test_sampling_finds_countermodel_deterministically():
    a = bn(3)
    r1 = is_valid(axiom("lin"), a, budget=2000, sample_seed=42)
    r2 = is_valid(axiom("lin"), a, budget=2000, sample_seed=42)
    assert r1.valid is False and r1.mode == "sampling"
    assert r1.to_dict() == r2.to_dict()
    assert eval_formula(axiom("lin"), a, r1.countermodel) == r1.value_reached


def test_sampling_never_claims_validity():
    rep = is_valid(axiom("kp"), bn(3), budget=2000, sample_seed=1)
    assert rep.valid is None and rep.mode == "sampling"


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("MEDLAT_BUDGET", "1e3")
    assert evaluation_budget() == 1000
    monkeypatch.setenv("MEDLAT_BUDGET", "bogus")
    with pytest.raises(InputError):
        evaluation_budget()
    monkeypatch.delenv("MEDLAT_BUDGET")
    assert evaluation_budget() == 100_000_000


# ---------------------------------------------------------------------------
# axioms, levels, searches
# ---------------------------------------------------------------------------

def test_axiom_catalogue():
    for name, text in AXIOM_TEXT.items():
        assert axiom(name) == parse(text)
    with pytest.raises(InputError):
        axiom("nope")


def test_lm_member_lin():
    rep = lm_member(axiom("lin"), 2)
    assert [r.valid for _, r in rep.levels] == [True, False]
    assert rep.in_all_levels is False


def test_lm_member_kp():
    rep = lm_member(axiom("kp"), 3)
    assert rep.in_all_levels is True


def test_lm_member_caps():
    with pytest.raises(ResourceLimitError):
        lm_member(axiom("kp"), 6)
    with pytest.raises(ResourceLimitError):
        lm_member(axiom("lin"), 5)  # 2 variables at level 5


def test_countermodel_search_bound_note():
    res = countermodel_search(parse("p -> p"), 3)
    assert not res.found
    assert "does not prove" in res.note
    with pytest.raises(ResourceLimitError):
        countermodel_search(parse("p"), 8)


def test_antichain_formula_shape():
    # k=2 is the linearity axiom up to variable names
    assert (render(antichain_formula(2))
            == render(axiom("lin")).replace("p", "x1").replace("q", "x2"))
    f = antichain_formula(3)
    assert variables(f) == ["x1", "x2", "x3"]
    with pytest.raises(InputError):
        antichain_formula(7)


def test_classical_tautology():
    assert classical_tautology(parse("((p -> q) -> p) -> p"))
    assert classical_tautology(parse("p | ~p"))
    assert not classical_tautology(parse("p"))
    # the displayed one-variable axiom variant is not even classically valid
    assert not classical_tautology(axiom("sc_paper"))
    assert classical_tautology(axiom("sc_standard"))


# ---------------------------------------------------------------------------
# comparisons, the KP class, spectra
# ---------------------------------------------------------------------------

def test_theory_compare_chain3_vs_bn2():
    corpus = [axiom(n) for n in sorted(AXIOM_TEXT)]
    tc = theory_compare(chain_algebra(3), bn(2), corpus)
    assert tc.right_subset_left is True
    assert tc.left_subset_right is False
    assert set(tc.left_witnesses) == {render(axiom("jan")), render(axiom("lin"))}
    assert tc.errors == ()


def test_theory_compare_records_budget_errors():
    tc = theory_compare(bn(3), bn(3), [axiom("kp")], budget=10)
    assert tc.errors
    assert "error" in tc.rows[0]


def test_kp_class_check_small():
    rep = kp_class_check(4)
    assert rep.ok
    assert not rep.positive_kp_failures
    assert rep.positive and rep.negative
    with pytest.raises(ResourceLimitError):
        kp_class_check(7)


def test_one_variable_spectrum():
    rep = one_variable_spectrum(chain_algebra(3))
    assert rep.sizes == (2, 3, 2)
    assert rep.max_size == 3
    rep = one_variable_spectrum(bn(2))
    assert rep.sizes == (2, 5, 5, 3, 2)
    assert rep.max_size == 5
    assert rep.spectrum == (0, 1, 2, 3, 4)


def test_validity_report_json_shape():
    rep = is_valid(axiom("jan"), bn(2))
    d = rep.to_dict()
    assert d["valid"] is False
    assert d["algebra"] == "bn:2"
    assert d["countermodel"]["labels"] == {"p": "{{0}}"}
    json.dumps(d)  # serializable
