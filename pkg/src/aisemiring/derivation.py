"""Checking equational derivations in the free ai-semiring.

A step rewrites ``R + a*s(l)*b`` into ``R + a*s(r)*b`` for a rule ``l = r``,
a substitution ``s`` and optional context words ``a`` and ``b``. Because
terms are sets of words, the AI axioms are built in: two terms related by
AI alone are literally equal.

Steps come in two modes. An *exact* step names the rule, substitution and
context, and is checked directly. A *search* step names only the rules and
is accepted if a sequence of at most three rewrites connects its endpoints.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from . import bases
from .satisfaction import satisfies
from .terms import Identity, Term, Word, parse_term, substitute

AI = "AI"
MAX_SEARCH_DEPTH = 3
SEARCH_BUDGET = 50_000


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class ProofStep:
    source: Term
    target: Term
    rule: str = AI
    substitution: Mapping[str, Term] | None = None
    left: Word | None = None
    right: Word | None = None
    mode: str = "exact"
    rules: tuple[str, ...] = ()  # candidate rules for search mode

    def __post_init__(self):
        if self.mode not in ("exact", "search"):
            raise DerivationError(f"unknown step mode {self.mode!r}")


@dataclass(frozen=True)
class StepVerdict:
    ok: bool
    message: str
    path: tuple[Term, ...] = ()


Resolver = Callable[[str], Identity]


def _wrap(u: Term, left: Word | None, right: Word | None) -> Term:
    if left is None and right is None:
        return u
    a = left.letters if left else ()
    b = right.letters if right else ()
    return Term(Word(a + w.letters + b) for w in u)


def replacement_valid(T: Term, T2: Term, P: Term, Q: Term) -> bool:
    """Is there ``R`` with ``T = R + P`` and ``T2 = R + Q``?"""
    return (
        P.words <= T.words
        and Q.words <= T2.words
        and (T.words - P.words) <= T2.words
        and (T2.words - Q.words) <= T.words
    )


def check_step(step: ProofStep, resolve: Resolver = bases.rule) -> StepVerdict:
    if step.mode == "search":
        return search_step(step.source, step.target, step.rules or (step.rule,), resolve)
    if step.rule == AI:
        if step.source == step.target:
            return StepVerdict(True, "AI-equal")
        return StepVerdict(False, "terms differ modulo AI")
    rule = resolve(step.rule)
    sigma = dict(step.substitution or {})
    missing = [x for x in rule.variables if x not in sigma]
    if missing:
        raise DerivationError(f"substitution for rule {step.rule} misses {', '.join(missing)}")
    lhs = _wrap(substitute(rule.lhs, sigma), step.left, step.right)
    rhs = _wrap(substitute(rule.rhs, sigma), step.left, step.right)
    if replacement_valid(step.source, step.target, lhs, rhs):
        return StepVerdict(True, f"{step.rule} left to right")
    if replacement_valid(step.source, step.target, rhs, lhs):
        return StepVerdict(True, f"{step.rule} right to left")
    return StepVerdict(False, f"{step.rule} instance {lhs} = {rhs} does not connect the terms")


# ---------------------------------------------------------------------------
# bounded search


def _match_word(pattern: tuple[str, ...], target: tuple[str, ...], sigma: dict) -> Iterator[dict]:
    """Extensions of ``sigma`` (variable -> letter tuple) sending pattern onto target."""
    if not pattern:
        if not target:
            yield sigma
        return
    x, rest = pattern[0], pattern[1:]
    if x in sigma:
        v = sigma[x]
        if target[: len(v)] == v:
            yield from _match_word(rest, target[len(v) :], sigma)
        return
    # leave at least one letter for each remaining pattern letter
    for k in range(1, len(target) - len(rest) + 1):
        s2 = dict(sigma)
        s2[x] = target[:k]
        yield from _match_word(rest, target[k:], s2)


def _factors(words: Iterable[Word]) -> set[tuple[str, ...]]:
    out = set()
    for w in words:
        for i, j in w.factors():
            out.add(w.letters[i:j])
    return out


def _matches(pattern: Term, T: Term) -> Iterator[tuple[dict, tuple, tuple]]:
    """All ``(sigma, a, b)`` with ``a*sigma(pattern)*b`` inside ``T``."""
    pats = [p.letters for p in pattern]
    first, others = pats[0], pats[1:]
    seen = set()
    for w in T:
        n = len(w)
        for i in range(n):
            for j in range(i + len(first), n + 1):
                a, mid, b = w.letters[:i], w.letters[i:j], w.letters[j:]
                for sigma in _match_word(first, mid, {}):
                    for full in _extend(others, T, sigma, a, b):
                        key = (tuple(sorted(full.items())), a, b)
                        if key not in seen:
                            seen.add(key)
                            yield full, a, b


def _extend(pats, T: Term, sigma: dict, a, b) -> Iterator[dict]:
    if not pats:
        yield sigma
        return
    p, rest = pats[0], pats[1:]
    for w in T:
        L = w.letters
        if len(L) <= len(a) + len(b) - 1 or L[: len(a)] != a or (b and L[len(L) - len(b) :] != b):
            continue
        mid = L[len(a) : len(L) - len(b)] if b else L[len(a) :]
        if not mid:
            continue
        for s2 in _match_word(p, mid, sigma):
            yield from _extend(rest, T, s2, a, b)


def _apply(pattern: Term, sigma: dict, a, b) -> Term:
    out = []
    for p in pattern:
        letters = a + tuple(itertools.chain.from_iterable(sigma[x] for x in p.letters)) + b
        out.append(Word(letters))
    return Term(out)


def _moves(T: Term, goal: Term, rule: Identity) -> Iterator[tuple[Term, Term]]:
    """Rewrite instances ``(P, Q)`` applicable to ``T``."""
    pool = sorted(_factors(T) | _factors(goal))
    for src, dst in ((rule.lhs, rule.rhs), (rule.rhs, rule.lhs)):
        free = sorted(dst.content - src.content)
        for sigma, a, b in _matches(src, T):
            P = _apply(src, sigma, a, b)
            for values in itertools.product(pool, repeat=len(free)):
                s2 = dict(sigma)
                s2.update(zip(free, values))
                yield P, _apply(dst, s2, a, b)


def search_step(source: Term, target: Term, tags: Iterable[str], resolve: Resolver = bases.rule) -> StepVerdict:
    """Breadth-first search for at most ``MAX_SEARCH_DEPTH`` rewrites."""
    rules = [(t, resolve(t)) for t in tags]
    if source == target:
        return StepVerdict(True, "AI-equal", (source,))
    parent: dict[Term, Term | None] = {source: None}
    frontier = deque([(source, 0)])
    expanded = 0
    while frontier:
        T, depth = frontier.popleft()
        expanded += 1
        if expanded > SEARCH_BUDGET:
            break
        for _, rule in rules:
            for P, Q in _moves(T, target, rule):
                if replacement_valid(T, target, P, Q):
                    path = [target, T]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return StepVerdict(True, f"found {len(path) - 1} rewrites", tuple(reversed(path)))
                if depth + 1 < MAX_SEARCH_DEPTH:
                    rest = T.words - P.words
                    for nxt in {Term(rest | Q.words) if rest else Q, Term(T.words | Q.words)}:
                        if nxt not in parent:
                            parent[nxt] = T
                            frontier.append((nxt, depth + 1))
    return StepVerdict(False, "needs manual expansion (no rewrite sequence found within bounds)")


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class ProofChain:
    name: str
    semiring: str
    terms: tuple[Term, ...]
    steps: tuple[ProofStep, ...]
    note: str = ""

    def __post_init__(self):
        if not self.terms:
            raise DerivationError("a chain needs at least one term")
        if len(self.steps) != len(self.terms) - 1:
            raise DerivationError(f"{self.name}: {len(self.terms)} terms need {len(self.terms) - 1} steps")
        for i, s in enumerate(self.steps):
            if s.source != self.terms[i] or s.target != self.terms[i + 1]:
                raise DerivationError(f"{self.name}: step {i + 1} endpoints do not match the chain")

    @property
    def claim(self) -> Identity:
        return Identity(self.terms[0], self.terms[-1])


@dataclass
class ChainReport:
    chain: ProofChain
    steps: list[StepVerdict]
    model_steps: list[bool]
    claim_holds: bool | None
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps) and all(self.model_steps) and self.claim_holds is not False

    @property
    def first_failure(self) -> int | None:
        for i, s in enumerate(self.steps):
            if not s.ok:
                return i + 1
        return None

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        line = f"{self.chain.name} [{self.chain.semiring}]: {status}, {len(self.steps)} steps, claim {self.chain.claim}"
        if self.problems:
            line += "; " + "; ".join(self.problems)
        return line


def check_chain(chain: ProofChain, registry=None, resolve: Resolver = bases.rule) -> ChainReport:
    """Check every step, and, given a registry, that adjacent terms and the
    claim are equal in the chain's semiring under every assignment."""
    verdicts = []
    problems = []
    for i, step in enumerate(chain.steps, 1):
        try:
            v = check_step(step, resolve)
        except (DerivationError, KeyError) as exc:
            v = StepVerdict(False, str(exc))
        verdicts.append(v)
        if not v.ok:
            problems.append(f"step {i}: {v.message}")
    model = []
    claim = None
    if registry is not None:
        S = registry[chain.semiring]
        for i, (a, b) in enumerate(zip(chain.terms, chain.terms[1:]), 1):
            ok = satisfies(S, Identity(a, b)).holds
            model.append(ok)
            if not ok:
                problems.append(f"step {i}: endpoints differ in {chain.semiring}")
        claim = satisfies(S, chain.claim).holds
        if not claim:
            problems.append(f"claim fails in {chain.semiring}")
    return ChainReport(chain, verdicts, model, claim, problems)


# ---------------------------------------------------------------------------
# file format


def _term_or_none(s):
    return parse_term(s) if s else None


def _word_or_none(s):
    return Word.parse(s) if s else None


def chain_from_dict(d: dict) -> ProofChain:
    terms = tuple(parse_term(t) for t in d["terms"])
    steps = []
    for i, s in enumerate(d["steps"]):
        mode = s.get("mode", "exact")
        rule = s.get("rule", AI)
        rules = tuple(s.get("rules", ()))
        subst = s.get("subst")
        steps.append(
            ProofStep(
                terms[i],
                terms[i + 1],
                rule=rule,
                substitution={k: parse_term(v) for k, v in subst.items()} if subst else None,
                left=_word_or_none(s.get("left")),
                right=_word_or_none(s.get("right")),
                mode=mode,
                rules=rules,
            )
        )
    return ProofChain(d["name"], d["semiring"], terms, tuple(steps), d.get("note", ""))


def chain_to_dict(c: ProofChain) -> dict:
    steps = []
    for s in c.steps:
        d: dict = {"mode": s.mode}
        if s.mode == "search":
            d["rules"] = list(s.rules or (s.rule,))
        else:
            d["rule"] = s.rule
            if s.substitution:
                d["subst"] = {k: str(v) for k, v in s.substitution.items()}
            if s.left:
                d["left"] = str(s.left)
            if s.right:
                d["right"] = str(s.right)
        steps.append(d)
    out = {"name": c.name, "semiring": c.semiring, "terms": [str(t) for t in c.terms], "steps": steps}
    if c.note:
        out["note"] = c.note
    return out


def load_chains(text: str) -> list[ProofChain]:
    return [chain_from_dict(d) for d in json.loads(text)]


def dump_chains(chains: Iterable[ProofChain]) -> str:
    return json.dumps([chain_to_dict(c) for c in chains], indent=1, ensure_ascii=False) + "\n"


def builtin_proof_corpus() -> list[ProofChain]:
    from importlib.resources import files

    return load_chains(files("aisemiring").joinpath("data/proofs.json").read_text())
