import pytest
from hypothesis import given
from hypothesis import strategies as st

from aisemiring import algebra as alg
from aisemiring.catalog import full_registry
from aisemiring.satisfaction import (
    IdentityProfile,
    VariableBudgetError,
    eval_term,
    holds,
    identity_count,
    identity_generator,
    inclusion_decomposition,
    satisfies,
    satisfies_pair,
)
from aisemiring.terms import Identity, Term, Word, commutative_normal_form, term_product, term_sum
from strategies import VARS, terms

REGISTRY = full_registry()
NAMES = sorted(REGISTRY)
W = Word.parse


def T(*ws):
    return Term(W(w) for w in ws)


algebras = st.sampled_from(NAMES).map(REGISTRY.__getitem__)


@st.composite
def assignments(draw, S):
    return {x: draw(st.integers(1, S.order)) for x in VARS}


def test_eval_examples(registry):
    S = registry["S_(4,277)"]
    assert eval_term(T("x"), {"x": 3}, S) == 3
    assert eval_term(T("xxxx"), {"x": 4}, S) == 1
    assert eval_term(T("x", "xx"), {"x": 4}, S) == 1


def test_eval_errors(registry):
    S = registry["S_(4,277)"]
    with pytest.raises(KeyError, match="'y'"):
        eval_term(T("xy"), {"x": 1}, S)
    with pytest.raises(ValueError, match="not an element"):
        eval_term(T("x"), {"x": 5}, S)


def test_satisfies_examples(registry):
    assert satisfies(registry["S_(4,277)"], Identity.parse("xy = x^2 + y^2")).holds
    v = satisfies(registry["S_(4,281)"], Identity.parse("xy = yx"))
    assert not v.holds
    # lexicographically first failing assignment
    assert v.counterexample == {"x": 3, "y": 4}
    assert (v.lhs_value, v.rhs_value) == (1, 3)
    # the swapped assignment also separates the sides
    S = registry["S_(4,281)"]
    assert eval_term(T("xy"), {"x": 4, "y": 3}, S) != eval_term(T("yx"), {"x": 4, "y": 3}, S)
    assert S.mul[3, 2] + 1 == 3 and S.mul[2, 3] + 1 == 1
    for name in ("S_(4,277)", "N_2", "S_57"):
        assert holds(registry[name], "x = x")


def test_verdict_describe(registry):
    text = satisfies(registry["S_(4,281)"], Identity.parse("xy = yx")).describe()
    assert text.startswith("fails:") and "x=3, y=4" in text


def test_variable_budget(registry):
    big = Identity.parse("x1*x2*x3*x4*x5*x6*x7*x8*x9*x10*x11*x12*x13 = x1")
    with pytest.raises(VariableBudgetError, match="4\\^13"):
        satisfies(registry["S_(4,277)"], big)


def test_decomposition_examples():
    assert inclusion_decomposition(Identity.parse("x = x + y")) == [(T("x"), W("y"))]
    assert inclusion_decomposition(Identity.parse("xy = yx")) == [(T("xy"), W("yx")), (T("yx"), W("xy"))]
    assert len(inclusion_decomposition(Identity.parse("x = x + y"), prune=False)) == 3


def test_generator_small_exhaustive():
    got = list(identity_generator(IdentityProfile(1, 2, 1)))
    assert [str(i) for i in got] == ["x = x", "x = x^2", "x^2 = x", "x^2 = x^2"]


def test_identity_count_frozen():
    p = IdentityProfile(2, 2, 2)
    # frozen from the generator
    assert identity_count(p) == 441
    assert sum(1 for _ in identity_generator(p)) == 441


def test_generator_is_deterministic():
    p = IdentityProfile(3, 3, 3, seed=7, mode="random")
    a = [i for _, i in zip(range(200), identity_generator(p))]
    b = [i for _, i in zip(range(200), identity_generator(p))]
    assert a == b
    other = [i for _, i in zip(range(200), identity_generator(IdentityProfile(3, 3, 3, seed=8, mode="random")))]
    assert a != other


def test_profile_validation():
    with pytest.raises(ValueError):
        IdentityProfile(0, 2, 2)
    with pytest.raises(ValueError):
        IdentityProfile(1, 1, 1, mode="sometimes")


@given(algebras, terms(), terms(), st.data())
def test_eval_is_a_homomorphism(S, u, v, data):
    a = data.draw(assignments(S))
    eu, ev = eval_term(u, a, S) - 1, eval_term(v, a, S) - 1
    assert eval_term(term_sum(u, v), a, S) - 1 == S.add[eu, ev]
    assert eval_term(term_product(u, v), a, S) - 1 == S.mul[eu, ev]


@given(algebras, terms(), terms())
def test_decomposition_is_equivalent(S, u, v):
    ident = Identity(u, v)
    assert satisfies(S, ident).holds == all(satisfies_pair(S, p, q) for p, q in inclusion_decomposition(ident))


@given(algebras, terms(), terms())
def test_dual_reverses_identities(S, u, v):
    ident = Identity(u, v)
    assert satisfies(alg.dual(S), ident).holds == satisfies(S, ident.reversed()).holds


@given(algebras, terms(), terms())
def test_counterexamples_separate_sides(S, u, v):
    verdict = satisfies(S, Identity(u, v))
    if not verdict.holds:
        a = verdict.counterexample
        assert eval_term(u, a, S) != eval_term(v, a, S)


COMMUTATIVE = [n for n in NAMES if holds(REGISTRY[n], "xy = yx")]


@given(st.sampled_from(COMMUTATIVE).map(REGISTRY.__getitem__), terms(), st.data())
def test_commutative_normal_form_bridge(S, u, data):
    a = data.draw(assignments(S))
    assert eval_term(u, a, S) == eval_term(commutative_normal_form(u), a, S)
