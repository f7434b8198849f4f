"""Syntactic decision procedures for inclusions ``u = u + q``.

Three oracles are exact (for S_2, S_4 and S_10); eight more give conditions
that every valid inclusion must meet, so a failure is a certificate of
non-satisfaction while a pass certifies nothing.

Verdict objects are shared constants, one per (oracle, clause), so the
sweeps can call these functions millions of times cheaply.
"""

from __future__ import annotations

import enum
import functools
import itertools
import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .terms import Term, Word, content_of


class Kind(enum.Enum):
    EXACT = "Exact"
    NECESSARY = "NecessaryOnly"


class Result(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    NECESSARY_PASSED = "NecessaryPassed"


@dataclass(frozen=True)
class OracleVerdict:
    oracle: str
    kind: Kind
    result: Result
    clause: str

    @property
    def fails(self) -> bool:
        return self.result is Result.FAILS

    def __str__(self):
        return f"{self.oracle}: {self.result.value} [{self.clause}]"


@lru_cache(maxsize=None)
def _verdict(oracle: str, result: Result, clause: str) -> OracleVerdict:
    kind = Kind.EXACT if oracle in EXACT_ORACLES else Kind.NECESSARY
    if kind is Kind.EXACT and result is Result.NECESSARY_PASSED:
        raise AssertionError("exact oracles decide")
    return OracleVerdict(oracle, kind, result, clause)


def _holds(o, clause):
    return _verdict(o, Result.HOLDS, clause)


def _fails(o, clause):
    return _verdict(o, Result.FAILS, clause)


def _passed(o, clause="all conditions"):
    return _verdict(o, Result.NECESSARY_PASSED, clause)


def triviality(u: Term, q: Word, commutative: bool = False) -> bool:
    if commutative:
        return q.cnf in u.cnf.words
    return q in u.words


# ---------------------------------------------------------------------------
# exact oracles


def s2_oracle(u: Term, q: Word) -> OracleVerdict:
    o = "S2"
    if q in u.words:
        return _holds(o, "trivial")
    if u.max_length >= 3:
        return _holds(o, "(1) a summand of length >= 3")
    short = content_of(u.L_eq(1))
    pairs = content_of(u.L_eq(2))
    if short & pairs:
        return _holds(o, "(2) c(L1(u)) meets c(L2(u))")
    if len(q) == 1:
        return _fails(o, "(3) length(q) = 1 and nontrivial")
    if len(q) == 2:
        if q.content <= pairs:
            return _holds(o, "(3) c(q) inside c(L2(u))")
        return _fails(o, "(3) c(q) not inside c(L2(u))")
    return _fails(o, "(3) length(q) > 2")


def s4_oracle(u: Term, q: Word) -> OracleVerdict:
    o = "S4"
    if q in u.words:
        return _holds(o, "trivial")
    if not q.content <= u.content:
        return _fails(o, "(1) c(q) not inside c(u)")
    if u.max_length < 2:
        return _fails(o, "(2) L>=2(u) empty")
    if not (u.prefix_content & u.tails):
        if (u.prefix_content | q.prefix_content) & (u.tails | {q.tail}):
            return _fails(o, "(3) c(p(u)) misses t(u) but c(p(u+q)) meets t(u+q)")
    return _holds(o, "(1)-(3)")


def _bits(letters, index) -> int:
    b = 0
    for x in letters:
        b |= 1 << index[x]
    return b


def gf2_in_span(vectors: list[int], target: int) -> bool:
    """Is ``target`` an XOR of some subset of ``vectors``?"""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    for b in basis:
        target = min(target, target ^ b)
    return target == 0


def odd_product_solvable(u: Term, q: Word) -> bool:
    """Some product of an odd number of summands of u has the same set of
    odd-multiplicity letters as q (commutative reading)."""
    xs = sorted(u.content | q.content)
    index = {x: i for i, x in enumerate(xs)}
    parity = 1 << len(xs)
    vectors = [_bits(w.odd_letters, index) | parity for w in u.summands]
    return gf2_in_span(vectors, _bits(q.odd_letters, index) | parity)


def multiset_odd_letters(u: Term, q: Word, max_power: int = 3) -> bool:
    """Brute force: try every multiset of ``3**l`` summands, ``l <= max_power``."""
    xs = sorted(u.content | q.content)
    index = {x: i for i, x in enumerate(xs)}
    target = _bits(q.odd_letters, index)
    masks = [_bits(w.odd_letters, index) for w in u.summands]
    for ell in range(max_power + 1):
        for combo in itertools.combinations_with_replacement(masks, 3**ell):
            if functools.reduce(operator.xor, combo) == target:
                return True
    return False


def s10_oracle(u: Term, q: Word) -> OracleVerdict:
    o = "S10"
    u, q = u.cnf, q.cnf
    if q in u.words:
        return _holds(o, "trivial")
    if not q.content <= u.content:
        return _fails(o, "c(q) not inside c(u)")
    if odd_product_solvable(u, q):
        return _holds(o, "r(q) = r(odd product of summands)")
    return _fails(o, "no odd product of summands matches r(q)")


# ---------------------------------------------------------------------------
# necessary conditions


def _s44(u: Term, q: Word) -> OracleVerdict:
    o = "S44"
    u, q = u.cnf, q.cnf
    if q in u.words:
        return _passed(o, "trivial")
    if len(q) < 2:
        return _fails(o, "length(q) < 2")
    dq = u.D(q)
    if not dq:
        return _fails(o, "D_q(u) empty")
    for x in q.simple_letters:
        if not any(w.m(x) <= 1 for w in dq):
            return _fails(o, f"every summand in D_q(u) has {x} at least twice")
    return _passed(o)


def _s46(u: Term, q: Word) -> OracleVerdict:
    o = "S46"
    if q in u.words:
        return _passed(o, "trivial")
    if len(q) < 2:
        return _fails(o, "length(q) < 2")
    t = q.tail
    if q.m(t) == 1 and not any(t not in w.prefix_content for w in u.D(q)):
        return _fails(o, "no summand in D_q(u) keeps t(q) out of its prefix")
    return _passed(o)


def _s47(u: Term, q: Word) -> OracleVerdict:
    o = "S47"
    if q in u.words:
        return _passed(o, "trivial")
    if len(q) >= 3:
        return _passed(o, "length(q) >= 3")
    if len(q) == 2 and any(len(w) <= 2 for w in u.D(q)):
        return _passed(o, "length(q) = 2 and L<=2(u) meets D_q(u)")
    return _fails(o, "neither length(q) >= 3 nor length(q) = 2 with L<=2(u) meeting D_q(u)")


S2_READINGS = ("S2-scattered", "S2-contiguous")


def _make_s53(mode: str) -> Callable[[Term, Word], OracleVerdict]:
    o = "S53"

    def check(u: Term, q: Word) -> OracleVerdict:
        u, q = u.cnf, q.cnf
        if q in u.words:
            return _passed(o, "trivial")
        if u.max_length < 2:
            return _fails(o, "L>=2(u) empty")
        if not q.content <= u.content:
            return _fails(o, "c(q) not inside c(u)")
        have = u.pair_contents(mode)
        for c in q.pair_contents(mode):
            if not any(h <= c for h in have):
                return _fails(o, f"no length-2 subword of u has content inside {{{','.join(sorted(c))}}}")
        return _passed(o)

    check.__name__ = f"s53_{mode.split('-')[1]}"
    return check


def _s56(u: Term, q: Word) -> OracleVerdict:
    o = "S56"
    if q in u.words:
        return _passed(o, "trivial")
    if u.max_length < 2:
        return _fails(o, "L>=2(u) empty")
    same_tail = u.T(q)
    if not same_tail:
        return _fails(o, "T_q(u) empty")
    if len(q) >= 2 and not any(len(w) >= 2 for w in same_tail):
        return _fails(o, "length(q) >= 2 but L>=2(u) misses T_q(u)")
    return _passed(o)


def _s57(u: Term, q: Word) -> OracleVerdict:
    o = "S57"
    if q in u.words:
        return _passed(o, "trivial")
    if u.max_length < 2:
        return _fails(o, "L>=2(u) empty")
    if not q.prefix_content <= u.prefix_content:
        return _fails(o, "c(p(q)) not inside c(p(u))")
    if q.tail not in u.content:
        return _fails(o, "t(q) not in c(u)")
    return _passed(o)


def _s59(u: Term, q: Word) -> OracleVerdict:
    o = "S59"
    if q in u.words:
        return _passed(o, "trivial")
    if u.max_length >= 3:
        return _passed(o, "a summand of length >= 3")
    if len(q) == 1:
        if q.content <= u.content:
            return _passed(o, "length(q) = 1 and c(q) inside c(u)")
        return _fails(o, "length(q) = 1 and c(q) not inside c(u)")
    if len(q) == 2:
        if q.content <= content_of(u.L_eq(2)):
            return _passed(o, "length(q) = 2 and c(q) inside c(L2(u))")
        return _fails(o, "length(q) = 2 and c(q) not inside c(L2(u))")
    return _fails(o, "all summands short but length(q) > 2")


def _s60(u: Term, q: Word) -> OracleVerdict:
    o = "S60"
    if q in u.words:
        return _passed(o, "trivial")
    long = u.L_geq(2)
    if not long:
        return _fails(o, "L>=2(u) empty")
    if not q.content <= content_of(long):
        return _fails(o, "c(q) not inside c(L>=2(u))")
    return _passed(o)


EXACT_ORACLES: dict[str, Callable[[Term, Word], OracleVerdict]] = {
    "S2": s2_oracle,
    "S4": s4_oracle,
    "S10": s10_oracle,
}

# The S_2(.) reading adopted for S53; see ``sweeps.select_s2_reading``.
DEFAULT_S2_READING = "S2-scattered"

NECESSARY_CONDITIONS: dict[str, Callable[[Term, Word], OracleVerdict]] = {
    "S44": _s44,
    "S46": _s46,
    "S47": _s47,
    "S53": _make_s53(DEFAULT_S2_READING),
    "S56": _s56,
    "S57": _s57,
    "S59": _s59,
    "S60": _s60,
}

S53_BY_READING = {mode: _make_s53(mode) for mode in S2_READINGS}

# Catalog name of the algebra each oracle speaks about.
ORACLE_ALGEBRA = {
    "S2": "S_2",
    "S4": "S_4",
    "S10": "S_10",
    "S44": "S_44",
    "S46": "S_46",
    "S47": "S_47",
    "S53": "S_53",
    "S56": "S_56",
    "S57": "S_57",
    "S59": "S_59",
    "S60": "S_60",
}

# Four-element algebras whose validity forces validity in the oracle's algebra.
HOSTS = {"S44": "S_(4,379)", "S46": "S_(4,380)", "S47": "S_(4,385)", "S53": "S_(4,357)"}

COMMUTATIVE_ORACLES = frozenset({"S10", "S44", "S53"})


def necessary_condition(lemma_id: str, u: Term, q: Word, s2_reading: str | None = None) -> OracleVerdict:
    key = normalize_oracle_id(lemma_id)
    if key == "S53" and s2_reading is not None:
        if s2_reading not in S53_BY_READING:
            raise ValueError(f"unknown reading {s2_reading!r}; expected one of {S2_READINGS}")
        return S53_BY_READING[s2_reading](u, q)
    if key not in NECESSARY_CONDITIONS:
        raise KeyError(f"no necessary condition for {lemma_id!r}; known: {sorted(NECESSARY_CONDITIONS)}")
    return NECESSARY_CONDITIONS[key](u, q)


def normalize_oracle_id(name: str) -> str:
    s = name.strip().upper().replace("_", "")
    return s


def oracle(name: str) -> Callable[[Term, Word], OracleVerdict]:
    key = normalize_oracle_id(name)
    if key in EXACT_ORACLES:
        return EXACT_ORACLES[key]
    if key in NECESSARY_CONDITIONS:
        return NECESSARY_CONDITIONS[key]
    raise KeyError(f"unknown oracle {name!r}; known: {sorted(ORACLE_ALGEBRA)}")


def run_oracle(name: str, u: Term, q: Word) -> OracleVerdict:
    return oracle(name)(u, q)
