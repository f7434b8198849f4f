"""Finite ai-semirings given by Cayley tables, and the structural toolbox.

Elements are 0-based integers internally. Everything user-facing (messages,
file formats, the CLI) shows them 1-based, via :func:`label`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np


class TableError(ValueError):
    """Malformed Cayley tables (shape, closure, mismatched orders)."""


class NotClosedError(ValueError):
    """A subset is not closed under one of the operations."""


def label(element: int) -> int:
    return int(element) + 1


def as_table(rows, n: int | None = None) -> np.ndarray:
    table = np.array(rows, dtype=np.int64)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise TableError(f"table must be a nonempty square array, got shape {table.shape}")
    order = table.shape[0]
    if n is not None and order != n:
        raise TableError(f"table has order {order}, expected {n}")
    if table.min() < 0 or table.max() >= order:
        raise TableError("table entries must be elements of the carrier")
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class FiniteAiSemiring:
    """A named pair of Cayley tables. Axioms are checked by
    :func:`validate_axioms`, not on construction."""

    name: str
    add: np.ndarray
    mul: np.ndarray

    def __post_init__(self):
        add = as_table(self.add)
        mul = as_table(self.mul)
        if add.shape != mul.shape:
            raise TableError(
                f"{self.name}: addition has order {add.shape[0]}, multiplication {mul.shape[0]}"
            )
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @property
    def elements(self) -> range:
        return range(self.order)

    def same_tables(self, other: FiniteAiSemiring) -> bool:
        return np.array_equal(self.add, other.add) and np.array_equal(self.mul, other.mul)

    def renamed(self, name: str) -> FiniteAiSemiring:
        return FiniteAiSemiring(name, self.add, self.mul)

    def __eq__(self, other):
        if not isinstance(other, FiniteAiSemiring):
            return NotImplemented
        return self.name == other.name and self.same_tables(other)

    def __hash__(self):
        return hash((self.name, self.add.tobytes(), self.mul.tobytes()))

    def __repr__(self):
        return f"FiniteAiSemiring({self.name!r}, order={self.order})"

    def format_tables(self) -> str:
        lines = [f"{self.name}", "  +   " + " ".join(str(label(b)) for b in self.elements)]
        for a in self.elements:
            lines.append(f"  {label(a)} | " + " ".join(str(label(v)) for v in self.add[a]))
        lines.append("  *   " + " ".join(str(label(b)) for b in self.elements))
        for a in self.elements:
            lines.append(f"  {label(a)} | " + " ".join(str(label(v)) for v in self.mul[a]))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _detail(axiom, add, mul, w):
    L = [label(x) for x in w]
    if axiom == "additive idempotency":
        a = w[0]
        return f"{L[0]}+{L[0]}={label(add[a, a])}"
    if axiom == "additive commutativity":
        a, b = w
        return f"{L[0]}+{L[1]}={label(add[a, b])} but {L[1]}+{L[0]}={label(add[b, a])}"
    if axiom == "additive associativity":
        a, b, c = w
        return f"({L[0]}+{L[1]})+{L[2]}={label(add[add[a, b], c])} but {L[0]}+({L[1]}+{L[2]})={label(add[a, add[b, c]])}"
    if axiom == "multiplicative associativity":
        a, b, c = w
        return f"({L[0]}·{L[1]})·{L[2]}={label(mul[mul[a, b], c])} but {L[0]}·({L[1]}·{L[2]})={label(mul[a, mul[b, c]])}"
    if axiom == "left distributivity":
        a, b, c = w
        return (
            f"{L[0]}·({L[1]}+{L[2]})={label(mul[a, add[b, c]])} but "
            f"{L[0]}·{L[1]}+{L[0]}·{L[2]}={label(add[mul[a, b], mul[a, c]])}"
        )
    a, b, c = w
    return (
        f"({L[0]}+{L[1]})·{L[2]}={label(mul[add[a, b], c])} but "
        f"{L[0]}·{L[2]}+{L[1]}·{L[2]}={label(add[mul[a, c], mul[b, c]])}"
    )


def axiom_violations(add: np.ndarray, mul: np.ndarray) -> Iterator[tuple[str, tuple[int, ...]]]:
    """Yield every violated axiom instance, one axiom at a time, triples in
    lexicographic order."""
    n = add.shape[0]
    R = range(n)
    for a in R:
        if add[a, a] != a:
            yield "additive idempotency", (a,)
    for a, b in itertools.product(R, R):
        if add[a, b] != add[b, a]:
            yield "additive commutativity", (a, b)
    for a, b, c in itertools.product(R, R, R):
        if add[add[a, b], c] != add[a, add[b, c]]:
            yield "additive associativity", (a, b, c)
    for a, b, c in itertools.product(R, R, R):
        if mul[mul[a, b], c] != mul[a, mul[b, c]]:
            yield "multiplicative associativity", (a, b, c)
    for a, b, c in itertools.product(R, R, R):
        if mul[a, add[b, c]] != add[mul[a, b], mul[a, c]]:
            yield "left distributivity", (a, b, c)
    for a, b, c in itertools.product(R, R, R):
        if mul[add[a, b], c] != add[mul[a, c], mul[b, c]]:
            yield "right distributivity", (a, b, c)


def validate_axioms(add, mul) -> ValidationReport:
    add = as_table(add)
    mul = as_table(mul)
    if add.shape != mul.shape:
        raise TableError(f"addition has order {add.shape[0]}, multiplication {mul.shape[0]}")
    for axiom, witness in axiom_violations(add, mul):
        return ValidationReport(False, axiom, witness, _detail(axiom, add, mul, witness))
    return ValidationReport(True)


def is_ai_semiring(S: FiniteAiSemiring) -> bool:
    return validate_axioms(S.add, S.mul).ok


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteAiSemiring = field(repr=False)
    target: FiniteAiSemiring = field(repr=False)
    map: tuple[int, ...]

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def __call__(self, a: int) -> int:
        return self.map[a]

    def labels(self) -> tuple[int, ...]:
        return tuple(label(x) for x in self.map)


def is_homomorphism(S: FiniteAiSemiring, T: FiniteAiSemiring, f: Sequence[int]) -> bool:
    f = np.asarray(f, dtype=np.int64)
    return bool(
        np.array_equal(f[S.add], T.add[f[:, None], f[None, :]])
        and np.array_equal(f[S.mul], T.mul[f[:, None], f[None, :]])
    )


def all_homomorphisms(S: FiniteAiSemiring, T: FiniteAiSemiring) -> list[Homomorphism]:
    """Every homomorphism S -> T, maps in lexicographic order."""
    return [
        Homomorphism(S, T, f)
        for f in itertools.product(range(T.order), repeat=S.order)
        if is_homomorphism(S, T, f)
    ]


def find_isomorphism(S: FiniteAiSemiring, T: FiniteAiSemiring) -> Homomorphism | None:
    if S.order != T.order:
        return None
    for f in itertools.permutations(range(T.order)):
        if is_homomorphism(S, T, f):
            return Homomorphism(S, T, f)
    return None


def is_isomorphic(S: FiniteAiSemiring, T: FiniteAiSemiring) -> bool:
    return find_isomorphism(S, T) is not None


def embeddings(A: FiniteAiSemiring, S: FiniteAiSemiring) -> list[Homomorphism]:
    if A.order > S.order:
        return []
    return [
        Homomorphism(A, S, f)
        for f in itertools.permutations(range(S.order), A.order)
        if is_homomorphism(A, S, f)
    ]


def embeds(A: FiniteAiSemiring, S: FiniteAiSemiring) -> bool:
    return bool(embeddings(A, S))


# ---------------------------------------------------------------------------
# subalgebras


def subalgebra(S: FiniteAiSemiring, subset, name: str | None = None) -> FiniteAiSemiring:
    """Restrict S to ``subset`` (0-based), relabelling in increasing order."""
    elems = sorted(set(int(a) for a in subset))
    if not elems:
        raise NotClosedError("empty subset")
    if elems[0] < 0 or elems[-1] >= S.order:
        raise NotClosedError(f"subset {elems} is not inside the carrier of {S.name}")
    pos = {a: i for i, a in enumerate(elems)}
    for sym, table in (("+", S.add), ("·", S.mul)):
        for a in elems:
            for b in elems:
                if int(table[a, b]) not in pos:
                    raise NotClosedError(
                        f"{{{', '.join(str(label(e)) for e in elems)}}} is not closed in {S.name}: "
                        f"{label(a)}{sym}{label(b)}={label(table[a, b])}"
                    )
    idx = np.array(elems)
    relabel = np.vectorize(pos.__getitem__)
    add = relabel(S.add[np.ix_(idx, idx)])
    mul = relabel(S.mul[np.ix_(idx, idx)])
    if name is None:
        name = f"{S.name}{{{','.join(str(label(e)) for e in elems)}}}"
    return FiniteAiSemiring(name, add, mul)


def closed_subsets(S: FiniteAiSemiring, size: int | None = None) -> list[tuple[int, ...]]:
    sizes = range(1, S.order + 1) if size is None else [size]
    out = []
    for k in sizes:
        for subset in itertools.combinations(S.elements, k):
            s = set(subset)
            if all(S.add[a, b] in s and S.mul[a, b] in s for a in subset for b in subset):
                out.append(subset)
    return out


# ---------------------------------------------------------------------------
# congruences and quotients


@dataclass(frozen=True)
class Congruence:
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_labels(cls, assignment: Sequence[int]) -> Congruence:
        groups: dict[int, list[int]] = {}
        for a, g in enumerate(assignment):
            groups.setdefault(g, []).append(a)
        return cls(tuple(sorted(tuple(v) for v in groups.values())))

    @property
    def size(self) -> int:
        return len(self.blocks)

    def class_of(self) -> list[int]:
        """Block index of every element."""
        out = [0] * sum(len(b) for b in self.blocks)
        for i, block in enumerate(self.blocks):
            for a in block:
                out[a] = i
        return out

    def meet(self, other: Congruence) -> Congruence:
        mine, theirs = self.class_of(), other.class_of()
        return Congruence.from_labels([(x, y) for x, y in zip(mine, theirs)])

    def is_equality(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def __str__(self):
        return "|".join("".join(str(label(a)) for a in b) for b in self.blocks)


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n, in lexicographic order."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(rgs)
            return
        for v in range(top + 2):
            rgs[i] = v
            yield from rec(i + 1, max(top, v))

    rgs[0] = 0
    yield from rec(1, 0)


def is_compatible(S: FiniteAiSemiring, classes: Sequence[int]) -> bool:
    c = np.asarray(classes)
    for table in (S.add, S.mul):
        img = c[table]
        # a ~ a' and b ~ b' must give related results: the class of a*b may
        # depend only on the classes of a and b
        seen = {}
        for a in S.elements:
            for b in S.elements:
                key = (c[a], c[b])
                if seen.setdefault(key, img[a, b]) != img[a, b]:
                    return False
    return True


def quotient(S: FiniteAiSemiring, theta: Congruence, name: str | None = None) -> FiniteAiSemiring:
    classes = theta.class_of()
    k = theta.size
    reps = [b[0] for b in theta.blocks]
    add = [[classes[S.add[reps[i], reps[j]]] for j in range(k)] for i in range(k)]
    mul = [[classes[S.mul[reps[i], reps[j]]] for j in range(k)] for i in range(k)]
    return FiniteAiSemiring(name or f"{S.name}/{theta}", add, mul)


def congruences(S: FiniteAiSemiring) -> list[tuple[Congruence, FiniteAiSemiring]]:
    """All congruences with their quotients, in restricted-growth order."""
    if S.order > 6:
        raise ValueError(f"congruence enumeration is limited to order <= 6, got {S.order}")
    out = []
    for rgs in set_partitions(S.order):
        if is_compatible(S, rgs):
            theta = Congruence.from_labels(rgs)
            out.append((theta, quotient(S, theta)))
    return out


def projection(S: FiniteAiSemiring, theta: Congruence) -> Homomorphism:
    return Homomorphism(S, quotient(S, theta), tuple(theta.class_of()))


def subdirect_witness(
    S: FiniteAiSemiring, A: FiniteAiSemiring, B: FiniteAiSemiring
) -> tuple[Congruence, Congruence] | None:
    """Congruences with trivial meet and quotients isomorphic to A and B."""
    cons = congruences(S)
    left = [theta for theta, Q in cons if is_isomorphic(Q, A)]
    right = [theta for theta, Q in cons if is_isomorphic(Q, B)]
    for t1 in left:
        for t2 in right:
            if t1.meet(t2).is_equality():
                return t1, t2
    return None


def separates_points(S: FiniteAiSemiring, thetas: Sequence[Congruence]) -> bool:
    """True when the induced map S -> prod S/theta is injective."""
    keys = {tuple(t.class_of()[a] for t in thetas) for a in S.elements}
    return len(keys) == S.order


# ---------------------------------------------------------------------------
# constructions


def dual(S: FiniteAiSemiring, name: str | None = None) -> FiniteAiSemiring:
    return FiniteAiSemiring(name or f"dual({S.name})", S.add, S.mul.T)


def direct_product(S: FiniteAiSemiring, T: FiniteAiSemiring) -> FiniteAiSemiring:
    """Carrier pairs (a, b) encoded as a * |T| + b."""
    m = T.order
    pairs = list(itertools.product(S.elements, T.elements))
    add = [[S.add[a, c] * m + T.add[b, d] for c, d in pairs] for a, b in pairs]
    mul = [[S.mul[a, c] * m + T.mul[b, d] for c, d in pairs] for a, b in pairs]
    return FiniteAiSemiring(f"{S.name}x{T.name}", add, mul)


def is_commutative(S: FiniteAiSemiring) -> bool:
    return bool(np.array_equal(S.mul, S.mul.T))


def leq(S: FiniteAiSemiring, a: int, b: int) -> bool:
    """Additive order: a <= b iff a + b = b."""
    return int(S.add[a, b]) == b
