"""Model checking of identities in finite ai-semirings.

Elements are reported by their 1-based labels, matching the catalog. An
assignment maps variable names to labels.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from . import kernels
from .algebra import FiniteAiSemiring
from .terms import Identity, Term, Word, sort_vars, term_sum

MAX_VARIABLES = 12


class VariableBudgetError(ValueError):
    """Raised when exhaustive checking would need too many assignments."""


@dataclass(frozen=True)
class Verdict:
    holds: bool
    identity: Identity
    counterexample: dict[str, int] | None = None
    lhs_value: int | None = None
    rhs_value: int | None = None

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return f"holds: {self.identity}"
        vals = ", ".join(f"{x}={v}" for x, v in self.counterexample.items())
        return f"fails: {self.identity} at {vals} (lhs={self.lhs_value}, rhs={self.rhs_value})"


def eval_word(w: Word, a: Mapping[str, int], S: FiniteAiSemiring) -> int:
    try:
        v = a[w.letters[0]] - 1
        for x in w.letters[1:]:
            v = S.mul[v, a[x] - 1]
    except KeyError as exc:
        raise KeyError(f"variable {exc.args[0]!r} is not assigned") from None
    return int(v) + 1


def eval_term(u: Term, a: Mapping[str, int], S: FiniteAiSemiring) -> int:
    for x, v in a.items():
        if not 1 <= v <= S.order:
            raise ValueError(f"{x}={v} is not an element of {S.name}")
    acc = None
    for w in u.summands:
        v = eval_word(w, a, S) - 1
        acc = v if acc is None else S.add[acc, v]
    return int(acc) + 1


def _encode(u: Term, index: Mapping[str, int]):
    return kernels.encode_words([tuple(index[x] for x in w.letters) for w in u.summands])


def assignment_cost(S: FiniteAiSemiring, identity: Identity) -> int:
    return S.order ** len(identity.variables)


def satisfies(S: FiniteAiSemiring, identity: Identity, max_variables: int = MAX_VARIABLES) -> Verdict:
    """Check ``identity`` under every assignment, in odometer order over the
    variables sorted by name; the first failing assignment is reported."""
    xs = identity.variables
    k = len(xs)
    if k > max_variables:
        raise VariableBudgetError(
            f"{k} variables need {S.order}^{k} = {S.order ** k:,} assignments; "
            f"the limit is {max_variables} variables"
        )
    index = {x: i for i, x in enumerate(xs)}
    lf, lo = _encode(identity.lhs, index)
    rf, ro = _encode(identity.rhs, index)
    bad = kernels.first_counterexample(S.add, S.mul, lf, lo, rf, ro, S.order, k)
    if bad < 0:
        return Verdict(True, identity)
    digits = kernels.assignment_digits(S.order, k, bad, bad + 1)[:, 0]
    a = {x: int(d) + 1 for x, d in zip(xs, digits)}
    return Verdict(False, identity, a, eval_term(identity.lhs, a, S), eval_term(identity.rhs, a, S))


def holds(S: FiniteAiSemiring, identity: Identity | str) -> bool:
    if isinstance(identity, str):
        identity = Identity.parse(identity)
    return satisfies(S, identity).holds


def satisfies_pair(S: FiniteAiSemiring, u: Term, q: Word) -> bool:
    """``S`` satisfies ``u = u + q``."""
    return satisfies(S, Identity(u, term_sum(u, Term((q,))))).holds


def inclusion_decomposition(identity: Identity, prune: bool = True) -> list[tuple[Term, Word]]:
    """Pairs ``(u, q)`` whose inclusions ``u = u + q`` jointly amount to the identity."""
    pairs = [(identity.lhs, v) for v in identity.rhs] + [(identity.rhs, w) for w in identity.lhs]
    out = []
    seen = set()
    for u, q in pairs:
        if prune and q in u:
            continue
        if (u, q) not in seen:
            seen.add((u, q))
            out.append((u, q))
    return out


# ---------------------------------------------------------------------------
# bulk evaluation, used by the sweeps


def word_values(S: FiniteAiSemiring, words: list[Word], variables: list[str]) -> np.ndarray:
    """``(len(words), n**k)`` array of 0-based values over all assignments."""
    index = {x: i for i, x in enumerate(variables)}
    flat, off = kernels.encode_words([tuple(index[x] for x in w.letters) for w in words])
    return kernels.word_table(S.mul, flat, off, S.order, len(variables))


def join_rows(add: np.ndarray, values: np.ndarray, members: np.ndarray) -> np.ndarray:
    """Join of ``values[members[t, j]]`` over ``j``; ``-1`` entries are padding."""
    out = values[members[:, 0]].copy()
    for j in range(1, members.shape[1]):
        col = members[:, j]
        live = col >= 0
        out[live] = add[out[live], values[col[live]]]
    return out


# ---------------------------------------------------------------------------
# identity families

ALPHABET = ("x", "y", "z", "w", "v", "u", "t", "s", "r")


def variables_for(k: int) -> list[str]:
    if k <= len(ALPHABET):
        return list(ALPHABET[:k])
    return [f"x{i}" for i in range(1, k + 1)]


@dataclass(frozen=True)
class IdentityProfile:
    max_vars: int
    max_word_len: int
    max_summands: int
    commutative: bool = False
    seed: int | None = None
    mode: str = "exhaustive"  # or "random"

    def __post_init__(self):
        if min(self.max_vars, self.max_word_len, self.max_summands) < 1:
            raise ValueError("profile bounds must be positive")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")


def bounded_words(max_vars: int, max_word_len: int, commutative: bool = False) -> list[Word]:
    xs = variables_for(max_vars)
    out = []
    for n in range(1, max_word_len + 1):
        pick = itertools.combinations_with_replacement if commutative else itertools.product
        if commutative:
            out.extend(Word(p) for p in pick(xs, n))
        else:
            out.extend(Word(p) for p in pick(xs, repeat=n))
    return out


def bounded_terms(words: list[Word], max_summands: int) -> Iterator[Term]:
    for s in range(1, max_summands + 1):
        for combo in itertools.combinations(words, s):
            yield Term(combo)


def term_space_size(nwords: int, max_summands: int) -> int:
    return sum(math.comb(nwords, s) for s in range(1, max_summands + 1))


def _random_term(rng: random.Random, words: list[Word], weights: list[int]) -> Term:
    s = rng.choices(range(1, len(weights) + 1), weights=weights)[0]
    return Term(rng.sample(words, s))


def identity_generator(profile: IdentityProfile) -> Iterator[Identity]:
    """All identities within the bounds (exhaustive mode, lhs-major order),
    or an endless uniform sample from the same space (random mode)."""
    words = bounded_words(profile.max_vars, profile.max_word_len, profile.commutative)
    if profile.mode == "exhaustive":
        terms = list(bounded_terms(words, profile.max_summands))
        for lhs in terms:
            for rhs in terms:
                yield Identity(lhs, rhs)
        return
    rng = random.Random(profile.seed)
    weights = [math.comb(len(words), s) for s in range(1, profile.max_summands + 1)]
    while True:
        yield Identity(_random_term(rng, words, weights), _random_term(rng, words, weights))


def identity_count(profile: IdentityProfile) -> int:
    nwords = len(bounded_words(profile.max_vars, profile.max_word_len, profile.commutative))
    return term_space_size(nwords, profile.max_summands) ** 2


def sort_assignment(a: Mapping[str, int]) -> dict[str, int]:
    return {x: a[x] for x in sort_vars(a)}
