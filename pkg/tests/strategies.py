"""Hypothesis strategies for small words and terms."""

from hypothesis import strategies as st

from aisemiring.terms import Term, Word

VARS = ("x", "y", "z")


def words(alphabet=VARS, max_len=4):
    return st.lists(st.sampled_from(alphabet), min_size=1, max_size=max_len).map(Word)


def terms(alphabet=VARS, max_len=4, max_summands=3):
    return st.lists(words(alphabet, max_len), min_size=1, max_size=max_summands).map(Term)
