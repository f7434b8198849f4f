"""The free ai-semiring: words, finite sets of words, identities.

A :class:`Term` is a nonempty finite set of :class:`Word` objects, so the
additive axioms hold by construction: ``x + x`` and ``x`` are the same term,
and summand order never matters.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

_VAR_RE = re.compile(r"[a-z][0-9]*\Z")


def var_key(x: str) -> tuple[str, int]:
    """Sort key: by letter, then numeric index (``x`` < ``x1`` < ``x2`` < ``x10``)."""
    return (x[0], int(x[1:]) if len(x) > 1 else -1)


def sort_vars(xs: Iterable[str]) -> list[str]:
    return sorted(xs, key=var_key)


class Word:
    """Nonempty sequence of variables."""

    __hash__ = None  # set per instance below

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        if not letters:
            raise ValueError("words are nonempty")
        for x in letters:
            if not isinstance(x, str) or not _VAR_RE.match(x):
                raise ValueError(f"bad variable name {x!r}")
        self.letters = letters
        self._hash = hash(letters)

    @classmethod
    def parse(cls, text: str) -> Word:
        u = parse_term(text)
        if len(u) != 1:
            raise ValueError(f"{text!r} is a sum, not a word")
        return u.summands[0]

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __lt__(self, other: Word):
        return self.key < other.key

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def __str__(self):
        return format_word(self)

    @cached_property
    def key(self):
        return (len(self.letters), tuple(var_key(x) for x in self.letters))

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def head(self) -> str:
        return self.letters[0]

    @property
    def tail(self) -> str:
        return self.letters[-1]

    @cached_property
    def content(self) -> frozenset[str]:
        return frozenset(self.letters)

    @cached_property
    def counts(self) -> Mapping[str, int]:
        return Counter(self.letters)

    def m(self, x: str) -> int:
        return self.counts.get(x, 0)

    @cached_property
    def prefix(self) -> Word | None:
        """``p(w)``: w with its last letter removed; None for single letters."""
        return Word(self.letters[:-1]) if len(self.letters) > 1 else None

    @cached_property
    def prefix_content(self) -> frozenset[str]:
        return frozenset(self.letters[:-1])

    @cached_property
    def odd_letters(self) -> frozenset[str]:
        return frozenset(x for x, k in self.counts.items() if k % 2)

    @cached_property
    def simple_letters(self) -> frozenset[str]:
        return frozenset(x for x, k in self.counts.items() if k == 1)

    def sorted(self) -> Word:
        return self.cnf

    def pair_contents(self, mode: str) -> frozenset[frozenset[str]]:
        """Contents of the length-2 subwords under ``mode`` (cached)."""
        key = "_pairs_" + mode
        got = self.__dict__.get(key)
        if got is None:
            got = self.__dict__[key] = frozenset(w.content for w in special_sets(self, mode))
        return got

    @cached_property
    def cnf(self) -> Word:
        """Letters sorted by name: the representative in the free commutative semigroup."""
        return Word(sort_vars(self.letters))

    def reversed(self) -> Word:
        return Word(reversed(self.letters))

    def delete(self, xs: Iterable[str]) -> Word:
        drop = set(xs)
        return Word(x for x in self.letters if x not in drop)

    def factors(self) -> Iterator[tuple[int, int]]:
        """Index ranges ``(i, j)`` of all nonempty contiguous factors."""
        n = len(self.letters)
        for i in range(n):
            for j in range(i + 1, n + 1):
                yield i, j


class Term:
    """Nonempty finite set of words, kept in canonical order."""

    def __init__(self, summands: Iterable[Word | str]):
        words = {w if isinstance(w, Word) else Word.parse(w) for w in summands}
        if not words:
            raise ValueError("terms are nonempty")
        self.summands: tuple[Word, ...] = tuple(sorted(words, key=lambda w: w.key))
        self.words = frozenset(words)
        self._hash = hash(self.words)

    @classmethod
    def of(cls, *words: Word | str) -> Term:
        return cls(words)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Term) and self.words == other.words

    def __len__(self):
        return len(self.summands)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.summands)

    def __contains__(self, w: Word) -> bool:
        return w in self.words

    def __add__(self, other: Term | Word) -> Term:
        if isinstance(other, Word):
            other = Term((other,))
        return term_sum(self, other)

    def __mul__(self, other: Term | Word) -> Term:
        if isinstance(other, Word):
            other = Term((other,))
        return term_product(self, other)

    def __repr__(self):
        return f"Term({format_term(self)!r})"

    def __str__(self):
        return format_term(self)

    @cached_property
    def content(self) -> frozenset[str]:
        return frozenset().union(*(w.content for w in self.summands))

    @cached_property
    def tails(self) -> frozenset[str]:
        return frozenset(w.tail for w in self.summands)

    @cached_property
    def heads(self) -> frozenset[str]:
        return frozenset(w.head for w in self.summands)

    @cached_property
    def prefix_words(self) -> frozenset[Word]:
        """``p(u)``: prefixes of the summands of length at least two."""
        return frozenset(w.prefix for w in self.summands if w.prefix is not None)

    @cached_property
    def prefix_content(self) -> frozenset[str]:
        return frozenset().union(*(w.prefix_content for w in self.summands))

    @cached_property
    def max_length(self) -> int:
        return max(len(w) for w in self.summands)

    def L_eq(self, k: int) -> tuple[Word, ...]:
        return tuple(w for w in self.summands if len(w) == k)

    def L_geq(self, k: int) -> tuple[Word, ...]:
        return tuple(w for w in self.summands if len(w) >= k)

    def L_leq(self, k: int) -> tuple[Word, ...]:
        return tuple(w for w in self.summands if len(w) <= k)

    def T(self, q: Word) -> tuple[Word, ...]:
        """Summands ending in the last letter of q."""
        return tuple(w for w in self.summands if w.tail == q.tail)

    def D(self, q: Word) -> tuple[Word, ...]:
        """Summands whose content lies inside c(q)."""
        return tuple(w for w in self.summands if w.content <= q.content)

    @cached_property
    def cnf(self) -> Term:
        return Term(w.cnf for w in self.summands)

    def pair_contents(self, mode: str) -> frozenset[frozenset[str]]:
        key = "_pairs_" + mode
        got = self.__dict__.get(key)
        if got is None:
            got = self.__dict__[key] = frozenset().union(*(w.pair_contents(mode) for w in self.summands))
        return got

    def variables(self) -> list[str]:
        return sort_vars(self.content)


def content_of(words: Iterable[Word]) -> frozenset[str]:
    return frozenset().union(*(w.content for w in words))


# ---------------------------------------------------------------------------
# algebra of terms


def term_sum(u: Term, v: Term) -> Term:
    return Term(u.words | v.words)


def term_product(u: Term, v: Term) -> Term:
    return Term(Word(a.letters + b.letters) for a in u.summands for b in v.summands)


def term_power(u: Term, k: int) -> Term:
    if k < 1:
        raise ValueError("powers must be positive")
    out = u
    for _ in range(k - 1):
        out = term_product(out, u)
    return out


def commutative_normal_form(u: Term) -> Term:
    return u.cnf


def reverse_term(u: Term) -> Term:
    return Term(w.reversed() for w in u.summands)


def substitute(u: Term, sigma: Mapping[str, Term | Word]) -> Term:
    """Replace each variable by a word or term, expanding distributively."""
    out = []
    for w in u.summands:
        try:
            parts = [sigma[x] for x in w.letters]
        except KeyError as exc:
            raise KeyError(f"substitution does not map variable {exc.args[0]!r}") from None
        parts = [Term((p,)) if isinstance(p, Word) else p for p in parts]
        acc = parts[0]
        for p in parts[1:]:
            acc = term_product(acc, p)
        out.extend(acc.summands)
    return Term(out)


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class WordStats:
    head: str
    tail: str
    content: frozenset[str]
    length: int
    multiplicity: dict[str, int]
    prefix: Word | None


def word_stats(w: Word) -> WordStats:
    return WordStats(w.head, w.tail, w.content, w.length, dict(w.counts), w.prefix)


@dataclass(frozen=True)
class TermSets:
    content: frozenset[str]
    tails: frozenset[str]
    prefix: frozenset[Word]
    L_geq: frozenset[Word]
    L_leq: frozenset[Word]
    L_eq: frozenset[Word]
    T: frozenset[Word]
    D: frozenset[Word]


def term_sets(u: Term, k: int, q: Word) -> TermSets:
    return TermSets(
        u.content,
        u.tails,
        u.prefix_words,
        frozenset(u.L_geq(k)),
        frozenset(u.L_leq(k)),
        frozenset(u.L_eq(k)),
        frozenset(u.T(q)),
        frozenset(u.D(q)),
    )


SPECIAL_MODES = ("r", "M1", "S2-contiguous", "S2-scattered")


def special_sets(w: Word | Term, mode: str) -> frozenset:
    """Letters of odd multiplicity (``r``), letters occurring once (``M1``),
    or length-two subwords under either reading of "subword"."""
    if isinstance(w, Term):
        if mode in ("r", "M1"):
            raise ValueError(f"mode {mode!r} is defined on words only")
        return frozenset().union(*(special_sets(v, mode) for v in w.summands))
    if mode == "r":
        return w.odd_letters
    if mode == "M1":
        return w.simple_letters
    if mode == "S2-contiguous":
        return frozenset(Word(w.letters[i : i + 2]) for i in range(len(w) - 1))
    if mode == "S2-scattered":
        return frozenset(Word((a, b)) for a, b in itertools.combinations(w.letters, 2))
    raise ValueError(f"unknown mode {mode!r}; expected one of {SPECIAL_MODES}")


# ---------------------------------------------------------------------------
# identities


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    @classmethod
    def parse(cls, text: str) -> Identity:
        return parse_identity(text)

    @property
    def variables(self) -> list[str]:
        return sort_vars(self.lhs.content | self.rhs.content)

    def reversed(self) -> Identity:
        return Identity(reverse_term(self.lhs), reverse_term(self.rhs))

    def swapped(self) -> Identity:
        return Identity(self.rhs, self.lhs)

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class IdentityScheme:
    lhs: Term
    rhs: Term
    optional: frozenset[str] = frozenset()

    def __post_init__(self):
        stray = self.optional - (self.lhs.content | self.rhs.content)
        if stray:
            raise ValueError(f"optional variables {sort_vars(stray)} do not occur in the identity")
        for w in itertools.chain(self.lhs, self.rhs):
            if w.content <= self.optional:
                raise ValueError(f"deleting the optional variables empties the word {w}")

    @classmethod
    def parse(cls, text: str) -> IdentityScheme:
        return parse_scheme(text)

    @classmethod
    def of(cls, identity: Identity | str, optional: Iterable[str] = ()) -> IdentityScheme:
        if isinstance(identity, str):
            identity = parse_identity(identity)
        return cls(identity.lhs, identity.rhs, frozenset(optional))

    def instances(self) -> list[Identity]:
        """One identity per subset of optional variables, before deduplication."""
        opts = sort_vars(self.optional)
        out = []
        for r in range(len(opts) + 1):
            for drop in itertools.combinations(opts, r):
                out.append(
                    Identity(
                        Term(w.delete(drop) for w in self.lhs),
                        Term(w.delete(drop) for w in self.rhs),
                    )
                )
        return out

    def __str__(self):
        base = f"{self.lhs} = {self.rhs}"
        if self.optional:
            base += "; optional: " + ", ".join(sort_vars(self.optional))
        return base


def expand_scheme(s: IdentityScheme) -> list[Identity]:
    seen = set()
    out = []
    for ident in s.instances():
        if ident not in seen:
            seen.add(ident)
            out.append(ident)
    return out


# ---------------------------------------------------------------------------
# text format


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


_TOKEN_RE = re.compile(r"\s*(?:(?P<var>[a-z][0-9]*)|(?P<int>[0-9]+)|(?P<op>[+*^()=]|≈))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + skip]!r}", text, pos + skip)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "op" and value == "≈":
            value = "="
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value or kind == "var":
            raise ParseError(f"expected {value!r}", self.text, pos)

    def fail(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    def term(self) -> Term:
        acc = self.product()
        while self.peek()[1] == "+" and self.peek()[0] == "op":
            self.take()
            acc = term_sum(acc, self.product())
        return acc

    def product(self) -> Term:
        acc = self.power()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                acc = term_product(acc, self.power())
            elif kind == "var" or (kind == "op" and value == "("):
                acc = term_product(acc, self.power())
            else:
                return acc

    def power(self) -> Term:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "int" or int(value) < 1:
                raise ParseError("expected a positive exponent", self.text, pos)
            base = term_power(base, int(value))
        return base

    def atom(self) -> Term:
        kind, value, pos = self.peek()
        if kind == "var":
            self.take()
            return Term((Word((value,)),))
        if kind == "op" and value == "(":
            self.take()
            inner = self.term()
            self.expect(")")
            return inner
        if kind == "end":
            self.fail("unexpected end of input (empty word?)")
        self.fail(f"unexpected {value!r} (empty word?)")

    def done(self):
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    u = p.term()
    p.done()
    return u


def parse_identity(text: str) -> Identity:
    p = _Parser(text)
    lhs = p.term()
    kind, value, pos = p.take()
    if value != "=":
        raise ParseError("expected '=' or '≈'", text, pos)
    rhs = p.term()
    p.done()
    return Identity(lhs, rhs)


_OPTIONAL_RE = re.compile(r"[;,]?\s*(?:where\s+)?optional\s*:\s*(?P<vars>.*)\Z", re.S)


def parse_scheme(text: str) -> IdentityScheme:
    """``<identity> [; optional: x1, x4]`` (the separator may be a newline)."""
    m = _OPTIONAL_RE.search(text)
    optional: list[str] = []
    if m:
        optional = [v.strip() for v in re.split(r"[,\s]+", m.group("vars")) if v.strip()]
        for v in optional:
            if not _VAR_RE.match(v):
                raise ParseError(f"bad optional variable {v!r}", text, m.start("vars"))
        text = text[: m.start()]
    ident = parse_identity(text.strip().rstrip(";"))
    return IdentityScheme(ident.lhs, ident.rhs, frozenset(optional))


def format_word(w: Word) -> str:
    simple = all(len(x) == 1 for x in w.letters)
    parts = []
    for x, run in itertools.groupby(w.letters):
        k = len(list(run))
        parts.append(x if k == 1 else f"{x}^{k}")
    return "".join(parts) if simple else "*".join(parts)


def format_term(u: Term) -> str:
    return " + ".join(format_word(w) for w in u.summands)
