"""Cross-validation of the oracles against brute-force model checking.

The exhaustive family consists of every pair ``(u, q)`` where ``u`` is a
sum of at most ``max_summands`` distinct words and ``q`` a single word, all
over ``max_vars`` variables with words of length at most ``max_word_len``.
Every identity within the same bounds decomposes into such pairs, and each
such pair is the decomposition of some bounded identity, so agreement on
pairs is agreement on identities.

Brute force is vectorized: all word values over all assignments are
computed once, terms are joined row-wise, and ``u = u + q`` is read off a
bitmask inclusion matrix.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .algebra import FiniteAiSemiring
from .oracles import (
    EXACT_ORACLES,
    HOSTS,
    NECESSARY_CONDITIONS,
    ORACLE_ALGEBRA,
    S2_READINGS,
    S53_BY_READING,
    OracleVerdict,
    Result,
    multiset_odd_letters,
    odd_product_solvable,
)
from .satisfaction import (
    IdentityProfile,
    bounded_words,
    identity_generator,
    inclusion_decomposition,
    join_rows,
    satisfies,
    satisfies_pair,
    variables_for,
    word_values,
)
from .terms import Term, Word

EXHAUSTIVE_BOUNDS = (3, 4, 3)
RANDOM_PROFILE = IdentityProfile(4, 4, 4, seed=20240607, mode="random")
RANDOM_COUNT = 10_000


class PairFamily:
    """All ``(u, q)`` pairs within bounds, optionally reduced by renaming."""

    def __init__(self, max_vars: int, max_word_len: int, max_summands: int, reduced: bool = True):
        self.bounds = (max_vars, max_word_len, max_summands)
        self.variables = variables_for(max_vars)
        self.words: list[Word] = bounded_words(max_vars, max_word_len)
        self.index = {w: i for i, w in enumerate(self.words)}
        nw = len(self.words)
        rows = []
        for s in range(1, max_summands + 1):
            block = np.array(list(itertools.combinations(range(nw), s)), dtype=np.int64)
            pad = np.full((block.shape[0], max_summands - s), -1, dtype=np.int64)
            rows.append(np.hstack([block, pad]))
        members = np.vstack(rows)
        self.full_size = members.shape[0]
        self.reduced = reduced
        if reduced:
            members = members[self._canonical_mask(members)]
        self.members = members
        self._terms: dict[int, Term] = {}

    def _canonical_mask(self, members: np.ndarray) -> np.ndarray:
        """Keep a term iff it is the least member of its renaming orbit."""
        nw = len(self.words)
        sentinel = nw
        base = nw + 1
        keys = []
        for perm in itertools.permutations(self.variables):
            ren = dict(zip(self.variables, perm))
            table = np.array(
                [self.index[Word(ren[x] for x in w.letters)] for w in self.words] + [sentinel],
                dtype=np.int64,
            )
            mapped = np.sort(table[np.where(members < 0, sentinel, members)], axis=1)
            key = np.zeros(members.shape[0], dtype=np.int64)
            for j in range(members.shape[1]):
                key = key * base + mapped[:, j]
            keys.append(key)
        keys = np.vstack(keys)
        return keys[0] == keys.min(axis=0)  # identity permutation comes first

    def __len__(self):
        return self.members.shape[0]

    @property
    def pair_count(self) -> int:
        return len(self) * len(self.words)

    def term(self, t: int) -> Term:
        u = self._terms.get(t)
        if u is None:
            u = Term(self.words[i] for i in self.members[t] if i >= 0)
            self._terms[t] = u
        return u

    def holds_matrix(self, S: FiniteAiSemiring) -> np.ndarray:
        """``M[t, q]`` is True iff ``S`` satisfies ``u_t = u_t + q``."""
        wv = word_values(S, self.words, self.variables)
        tv = join_rows(S.add, wv, self.members)
        return kernels.inclusion_matrix(S.add, tv, wv)


@dataclass
class SweepResult:
    oracle: str
    algebra: str
    family: str
    mode: str  # "exact" or "necessary"
    pairs: int = 0
    checked: int = 0
    brute_holds: int = 0
    mismatches: int = 0
    oracle_fails_on_failing: int = 0
    brute_fails: int = 0
    examples: list[str] = field(default_factory=list)
    seconds: float = 0.0
    truncated: bool = False  # stopped early after enough violations

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    @property
    def completeness(self) -> float | None:
        """Share of brute-force failures that the oracle also rejects."""
        if self.brute_fails == 0:
            return None
        return self.oracle_fails_on_failing / self.brute_fails

    def summary(self) -> str:
        what = "mismatches" if self.mode == "exact" else "violations"
        if self.truncated:
            return (
                f"{self.oracle} vs {self.algebra} [{self.family}]: >={self.mismatches} {what}, "
                f"stopped after {self.checked:,} valid pairs"
            )
        line = (
            f"{self.oracle} vs {self.algebra} [{self.family}]: {self.mismatches} {what} "
            f"over {self.checked:,} pairs ({self.brute_holds:,} valid)"
        )
        if self.completeness is not None:
            line += f", rejects {self.completeness:.1%} of invalid pairs"
        return line

    def to_dict(self) -> dict:
        return {
            "oracle": self.oracle,
            "algebra": self.algebra,
            "family": self.family,
            "mode": self.mode,
            "pairs": self.pairs,
            "checked": self.checked,
            "brute_holds": self.brute_holds,
            "mismatches": self.mismatches,
            "completeness": self.completeness,
            "examples": self.examples,
            "truncated": self.truncated,
            "seconds": round(self.seconds, 3),
        }


Oracle = Callable[[Term, Word], OracleVerdict]

_MAX_EXAMPLES = 5


def _record(res: SweepResult, u: Term, q: Word, brute: bool, verdict: OracleVerdict):
    res.mismatches += 1
    if len(res.examples) < _MAX_EXAMPLES:
        res.examples.append(f"u = {u}, q = {q}: brute force {'holds' if brute else 'fails'}, {verdict}")


def exact_sweep(name: str, oracle: Oracle, S: FiniteAiSemiring, family: PairFamily) -> SweepResult:
    start = time.perf_counter()
    res = SweepResult(name, S.name, _family_label(family), "exact", pairs=family.pair_count)
    M = family.holds_matrix(S)
    words = family.words
    holds = Result.HOLDS
    for t in range(len(family)):
        u = family.term(t)
        row = M[t]
        for j, q in enumerate(words):
            brute = bool(row[j])
            v = oracle(u, q)
            said = v.result is holds
            if said != brute:
                _record(res, u, q, brute, v)
            elif not brute:
                res.oracle_fails_on_failing += 1
        res.brute_holds += int(row.sum())
        family._terms.pop(t, None)
    res.checked = family.pair_count
    res.brute_fails = res.checked - res.brute_holds
    res.seconds = time.perf_counter() - start
    return res


def necessity_sweep(
    name: str,
    oracle: Oracle,
    S: FiniteAiSemiring,
    family: PairFamily,
    max_violations: int | None = None,
) -> SweepResult:
    """Check ``brute force holds => oracle does not fail`` on every valid pair.

    Only valid pairs are visited; completeness rates come from the random
    sample instead. With ``max_violations`` the sweep stops once that many
    violations are found.
    """
    start = time.perf_counter()
    res = SweepResult(name, S.name, _family_label(family), "necessary", pairs=family.pair_count)
    M = family.holds_matrix(S)
    words = family.words
    ts, qs = np.nonzero(M)
    last = -1
    u = None
    seen = 0
    for t, j in zip(ts.tolist(), qs.tolist()):
        seen += 1
        if t != last:
            if last >= 0:
                family._terms.pop(last, None)
            u = family.term(t)
            last = t
        q = words[j]
        v = oracle(u, q)
        if v.result is Result.FAILS:
            _record(res, u, q, True, v)
            if max_violations is not None and res.mismatches >= max_violations:
                res.truncated = True
                break
    res.checked = res.brute_holds = seen
    res.seconds = time.perf_counter() - start
    return res


def _family_label(family: PairFamily) -> str:
    v, l, s = family.bounds
    tag = "renaming-reduced" if family.reduced else "full"
    return f"exhaustive vars<={v} len<={l} summands<={s}, {tag}"


# ---------------------------------------------------------------------------
# random identities


def random_pairs(count: int = RANDOM_COUNT, profile: IdentityProfile = RANDOM_PROFILE):
    """Decomposition pairs of ``count`` random identities, deduplicated."""
    seen = set()
    out = []
    identities = []
    for ident in itertools.islice(identity_generator(profile), count):
        identities.append(ident)
        for pair in inclusion_decomposition(ident):
            if pair not in seen:
                seen.add(pair)
                out.append(pair)
    return identities, out


def random_sweep(
    name: str,
    oracle: Oracle,
    S: FiniteAiSemiring,
    identities,
    pairs,
    exact: bool,
) -> SweepResult:
    """Pair-level and identity-level comparison on a random sample."""
    start = time.perf_counter()
    res = SweepResult(name, S.name, f"random x{len(identities)}", "exact" if exact else "necessary")
    verdicts = {}
    for u, q in pairs:
        brute = satisfies_pair(S, u, q)
        v = oracle(u, q)
        verdicts[(u, q)] = v
        res.checked += 1
        if brute:
            res.brute_holds += 1
            bad = v.result is not Result.HOLDS if exact else v.fails
        else:
            res.brute_fails += 1
            if v.fails:
                res.oracle_fails_on_failing += 1
            bad = exact and v.result is Result.HOLDS
        if bad:
            _record(res, u, q, brute, v)
    if exact:
        # identity level: the oracle accepts an identity iff it accepts every pair
        for ident in identities:
            predicted = all(verdicts[p].result is Result.HOLDS for p in inclusion_decomposition(ident))
            if predicted != satisfies(S, ident).holds:
                res.mismatches += 1
                if len(res.examples) < _MAX_EXAMPLES:
                    res.examples.append(f"identity {ident}: oracle says {predicted}")
    res.pairs = res.checked
    res.seconds = time.perf_counter() - start
    return res


# ---------------------------------------------------------------------------
# GF(2) reduction against multiset search


@dataclass
class ReductionResult:
    instances: int
    mismatches: int
    examples: list[str]

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def gf2_reduction_check(pairs, max_power: int = 3) -> ReductionResult:
    """Compare the linear-algebra decision with explicit multiset search
    over products of ``3**l`` summands, ``l <= max_power``.

    Instances are deduplicated by the odd-letter sets involved, which is all
    either procedure looks at.
    """
    seen = {}
    term_keys = {}
    for u, q in pairs:
        hit = term_keys.get(u)
        if hit is None:
            cu = u.cnf
            hit = term_keys[u] = (cu, frozenset(w.odd_letters for w in cu))
        cu, ukey = hit
        key = (ukey, q.odd_letters)
        if key not in seen and len(cu) <= 3 ** max_power:
            seen[key] = (cu, q.cnf)
    mismatches = 0
    examples = []
    for u, q in seen.values():
        if odd_product_solvable(u, q) != multiset_odd_letters(u, q, max_power):
            mismatches += 1
            if len(examples) < _MAX_EXAMPLES:
                examples.append(f"u = {u}, q = {q}")
    return ReductionResult(len(seen), mismatches, examples)


def family_pairs(family: PairFamily):
    for t in range(len(family)):
        u = family.term(t)
        for q in family.words:
            yield u, q


# ---------------------------------------------------------------------------
# reading of S_2(.) for the S53 conditions


@dataclass
class ReadingChoice:
    chosen: str
    violations: dict[str, int]
    results: dict[str, SweepResult]

    def summary(self) -> str:
        counts = ", ".join(f"{k}: {v}" for k, v in self.violations.items())
        return f"length-2 subword reading: {self.chosen} (violations {counts})"


def select_s2_reading(
    host: FiniteAiSemiring,
    reduced_family: PairFamily,
    full_family: PairFamily,
    max_violations: int = 5,
) -> ReadingChoice:
    """Run the host-mediated necessity sweep under both readings and keep
    one without violations, preferring the scattered reading.

    The scattered reading is invariant under renaming variables, so the
    reduced family suffices. The contiguous reading of a commutative normal
    form depends on the variable order, so it runs on the full family and
    stops after ``max_violations`` violations.
    """
    results = {}
    for mode in S2_READINGS:
        if mode == "S2-scattered":
            results[mode] = necessity_sweep(f"S53[{mode}]", S53_BY_READING[mode], host, reduced_family)
        else:
            results[mode] = necessity_sweep(
                f"S53[{mode}]", S53_BY_READING[mode], host, full_family, max_violations=max_violations
            )
    violations = {mode: r.mismatches for mode, r in results.items()}
    clean = [m for m in S2_READINGS if violations[m] == 0]
    if "S2-scattered" in clean or not clean:
        chosen = "S2-scattered"
    else:
        chosen = clean[0]
    return ReadingChoice(chosen, violations, results)


# ---------------------------------------------------------------------------
# the whole programme


@dataclass
class OracleReport:
    exact: list[SweepResult]
    necessity: list[SweepResult]
    hosted: list[SweepResult]
    informational: list[SweepResult]
    reduction: ReductionResult
    reading: ReadingChoice | None

    @property
    def ok(self) -> bool:
        return (
            all(r.ok for r in self.exact + self.necessity + self.hosted)
            and self.reduction.ok
            and (self.reading is None or self.reading.violations[self.reading.chosen] == 0)
        )


DIRECT_NECESSITY = ("S56", "S57", "S59", "S60")


def run_oracle_programme(
    registry,
    bounds=EXHAUSTIVE_BOUNDS,
    random_count: int = RANDOM_COUNT,
    random_profile: IdentityProfile = RANDOM_PROFILE,
    exact_names=("S2", "S4", "S10"),
    necessity_names=DIRECT_NECESSITY,
    hosted_names=tuple(HOSTS),
    informational: bool = True,
    log: Callable[[str], None] | None = None,
) -> OracleReport:
    say = log or (lambda s: None)
    reduced = PairFamily(*bounds, reduced=True)
    identities, rpairs = random_pairs(random_count, random_profile)
    exact, necessity, hosted, info = [], [], [], []
    for name in exact_names:
        S = registry[ORACLE_ALGEBRA[name]]
        for r in (
            exact_sweep(name, EXACT_ORACLES[name], S, reduced),
            random_sweep(name, EXACT_ORACLES[name], S, identities, rpairs, exact=True),
        ):
            exact.append(r)
            say(r.summary())
    for name in necessity_names:
        S = registry[ORACLE_ALGEBRA[name]]
        for r in (
            necessity_sweep(name, NECESSARY_CONDITIONS[name], S, reduced),
            random_sweep(name, NECESSARY_CONDITIONS[name], S, identities, rpairs, exact=False),
        ):
            necessity.append(r)
            say(r.summary())
    reading = None
    for name in hosted_names:
        host = registry[HOSTS[name]]
        if name == "S53":
            full = PairFamily(*bounds, reduced=False)
            reading = select_s2_reading(host, reduced, full)
            say(reading.summary())
            r = reading.results[reading.chosen]
            hosted.append(r)
            say(r.summary())
            rr = random_sweep(name, S53_BY_READING[reading.chosen], host, identities, rpairs, exact=False)
        else:
            r = necessity_sweep(name, NECESSARY_CONDITIONS[name], host, reduced)
            hosted.append(r)
            say(r.summary())
            rr = random_sweep(name, NECESSARY_CONDITIONS[name], host, identities, rpairs, exact=False)
        hosted.append(rr)
        say(rr.summary())
        if informational and ORACLE_ALGEBRA[name] in registry:
            oracle = S53_BY_READING[reading.chosen] if name == "S53" else NECESSARY_CONDITIONS[name]
            fam = full if (name == "S53" and reading.chosen != "S2-scattered") else reduced
            ri = necessity_sweep(name, oracle, registry[ORACLE_ALGEBRA[name]], fam)
            info.append(ri)
            say(ri.summary() + " (informational)")
    if "S10" in exact_names:
        reduction = gf2_reduction_check(itertools.chain(family_pairs(reduced), rpairs))
        say(f"GF(2) reduction vs multiset search: {reduction.mismatches} mismatches over {reduction.instances} instances")
    else:
        reduction = ReductionResult(0, 0, [])
    return OracleReport(exact, necessity, hosted, info, reduction, reading)
