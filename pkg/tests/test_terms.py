import pytest
from hypothesis import given
from hypothesis import strategies as st

from aisemiring.bases import basis
from aisemiring.terms import (
    IdentityScheme,
    ParseError,
    Term,
    Word,
    commutative_normal_form,
    expand_scheme,
    format_term,
    parse_identity,
    parse_term,
    special_sets,
    substitute,
    term_product,
    term_sets,
    term_sum,
    word_stats,
)
from strategies import terms, words

W = Word.parse


def T(*ws):
    return Term(W(w) for w in ws)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("xy + y", T("xy", "y")),
        ("x1*x2*x3 + y1*y2", Term([Word(["x1", "x2", "x3"]), Word(["y1", "y2"])])),
        ("x + x", T("x")),
        ("x^2y^3", T("xxyyy")),
        ("(x + y)z", T("xz", "yz")),
        ("x ≈ x", T("x")),
    ],
)
def test_parse_examples(text, expected):
    if "≈" in text:
        ident = parse_identity(text)
        assert ident.lhs == ident.rhs == expected
    else:
        assert parse_term(text) == expected


@pytest.mark.parametrize("text, pos", [("", 0), ("x +", 3), ("x + + y", 4), ("x ^ 0", 4), ("x $ y", 2), ("()", 1)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_term(text)
    assert info.value.pos == pos
    assert "^" in str(info.value)


def test_identity_needs_equals():
    with pytest.raises(ParseError, match="'='"):
        parse_identity("xy + yx")


@pytest.mark.parametrize("text", ["xy + y", "x1*x2*x3 + y1*y2", "x^2y + z", "xyx + yxy + x"])
def test_format_parse_round_trip(text):
    u = parse_term(text)
    assert parse_term(format_term(u)) == u


def test_word_stats_examples():
    s = word_stats(W("yxz"))
    assert (s.head, s.tail, s.content, s.length, s.prefix) == ("y", "z", frozenset("xyz"), 3, W("yx"))
    s = word_stats(W("x"))
    assert s.head == s.tail == "x" and s.length == 1 and s.prefix is None
    s = word_stats(W("x^2y^3"))
    assert s.multiplicity == {"x": 2, "y": 3}
    assert s.tail == "y" and s.prefix == W("xxyy")


def test_term_sets_examples():
    u = T("x", "yxz", "yy", "xzy")
    assert term_sets(u, 1, W("x")).prefix == {W("yx"), W("y"), W("xz")}
    s = term_sets(T("x", "xy"), 1, W("y"))
    assert s.T == {W("xy")} and s.D == frozenset()
    s = term_sets(T("x", "xy", "xyz"), 2, W("x"))
    assert s.L_eq == {W("xy")} and s.L_geq == {W("xy"), W("xyz")} and s.L_leq == {W("x"), W("xy")}
    assert term_sets(T("x", "xy", "xyz"), 1, W("x")).L_eq == {W("x")}


def test_special_sets_examples():
    assert special_sets(W("x^2y^3z^2"), "r") == {"y"}
    q = Word(["x1", "x1", "x2", "x2", "x3", "x3", "y"])
    assert special_sets(q, "M1") == {"y"}
    assert special_sets(W("xyx"), "S2-contiguous") == {W("xy"), W("yx")}
    assert special_sets(W("xyx"), "S2-scattered") == {W("xy"), W("yx"), W("xx")}
    assert special_sets(W("x"), "S2-scattered") == frozenset()
    with pytest.raises(ValueError, match="unknown mode"):
        special_sets(W("x"), "S3")


def test_expand_scheme_examples():
    by_tag = {e.tag: e.scheme for e in basis(357)}
    with_x1 = expand_scheme(by_tag["357.4"])
    assert len(with_x1) == 2
    assert any("x1" in i.variables for i in with_x1) and any("x1" not in i.variables for i in with_x1)
    assert len(expand_scheme(IdentityScheme.of("xy = yx"))) == 1
    five = by_tag["357.8"]
    assert len(five.optional) == 5
    assert len(five.instances()) == 32
    assert len(expand_scheme(five)) == 32


def test_scheme_rejects_emptied_word():
    with pytest.raises(ValueError, match="empties"):
        IdentityScheme.of("x + y = x + y + xy", optional=["y"])
    with pytest.raises(ValueError, match="do not occur"):
        IdentityScheme.of("xy = yx", optional=["z"])


def test_scheme_text_format():
    s = IdentityScheme.parse("x1*x2 + x3 = x1*x2 + x3 + x2; optional: x1")
    assert s.optional == {"x1"}
    assert len(expand_scheme(s)) == 2


def test_term_algebra_examples():
    assert term_product(T("x", "y"), T("z")) == T("xz", "yz")
    assert term_sum(term_product(T("x"), T("x")), T("x")) == T("x", "xx")
    assert commutative_normal_form(T("yx", "xy")) == T("xy")


def test_substitute():
    u = T("xy")
    assert substitute(u, {"x": W("x"), "y": W("yz")}) == T("xyz")
    assert substitute(u, {"x": T("x", "z"), "y": W("y")}) == T("xy", "zy")
    with pytest.raises(KeyError, match="'y'"):
        substitute(u, {"x": W("x")})


@given(words())
def test_word_is_prefix_times_tail(w):
    if w.prefix is None:
        assert len(w) == 1
    else:
        assert w.prefix * Word([w.tail]) == w
        assert len(w.prefix) == len(w) - 1


@given(st.lists(words(), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_term_equality_ignores_order_and_duplicates(ws, rnd):
    shuffled = ws + ws[:1]
    rnd.shuffle(shuffled)
    assert Term(ws) == Term(shuffled)
    assert hash(Term(ws)) == hash(Term(shuffled))


@given(terms(max_len=3), terms(max_len=3), terms(max_len=3))
def test_product_is_associative(u, v, w):
    assert term_product(term_product(u, v), w) == term_product(u, term_product(v, w))


@given(terms(), terms(), terms())
def test_product_distributes_over_sum(u, v, w):
    assert term_product(u, term_sum(v, w)) == term_sum(term_product(u, v), term_product(u, w))
    assert term_product(term_sum(v, w), u) == term_sum(term_product(v, u), term_product(w, u))


@given(terms())
def test_cnf_is_idempotent(u):
    assert commutative_normal_form(commutative_normal_form(u)) == commutative_normal_form(u)
