"""Isomorph-free enumeration of semilattices and ai-semirings.

Left distributivity says each row ``b -> a*b`` of a multiplication table is
a join-endomorphism of the additive semilattice, so tables are searched row
by row over that (small) set of candidate rows. Right distributivity and
associativity prune partial tables; see :mod:`aisemiring.kernels`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import FiniteAiSemiring, validate_axioms
from .catalog import CatalogEntry, Provenance, Registry, figure1_addition

MAX_SEMILATTICE_ORDER = 5


@dataclass(frozen=True)
class SemilatticeTable:
    add: np.ndarray

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def leq(self, a: int, b: int) -> bool:
        return self.add[a, b] == b

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(lower, upper)``, 1-based."""
        n = self.order
        out = []
        for a, b in itertools.permutations(range(n), 2):
            if self.leq(a, b) and not any(
                c not in (a, b) and self.leq(a, c) and self.leq(c, b) for c in range(n)
            ):
                out.append((a + 1, b + 1))
        return sorted(out)

    def describe(self) -> str:
        edges = ", ".join(f"{a}<{b}" for a, b in self.covers())
        return f"order {self.order}: {edges or 'trivial'}"


def _join_table(n: int, below: np.ndarray) -> np.ndarray | None:
    """Join table of the order ``below[a, b] = a <= b`` or None if some pair
    lacks a least upper bound."""
    add = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            ups = [c for c in range(n) if below[a, c] and below[b, c]]
            least = [c for c in ups if all(below[c, d] for d in ups)]
            if len(least) != 1:
                return None
            add[a, b] = add[b, a] = least[0]
    return add


def _table_key(t: np.ndarray, n: int) -> int:
    key = 0
    for v in t.ravel():
        key = key * n + int(v)
    return key


def automorphisms(add: np.ndarray) -> list[np.ndarray]:
    """Permutations preserving the semilattice, identity first."""
    n = add.shape[0]
    out = []
    for p in itertools.permutations(range(n)):
        perm = np.array(p, dtype=np.int64)
        if np.array_equal(perm[add], add[np.ix_(perm, perm)]):
            out.append(perm)
    return out


def _relabel(table: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """Image of a table under the bijection ``a -> perm[a]``."""
    inv = np.argsort(perm)
    return perm[table[np.ix_(inv, inv)]]


def enumerate_semilattices(n: int) -> list[SemilatticeTable]:
    """All semilattices of order n up to isomorphism.

    Every finite poset has a linear extension, so it suffices to search
    orders contained in the natural order of the labels.
    """
    if not 1 <= n <= MAX_SEMILATTICE_ORDER:
        raise ValueError(f"semilattice order must be between 1 and {MAX_SEMILATTICE_ORDER}")
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    out = []
    perms = [np.array(p) for p in itertools.permutations(range(n))]
    for bits in range(1 << len(pairs)):
        below = np.eye(n, dtype=bool)
        for i, (a, b) in enumerate(pairs):
            if bits >> i & 1:
                below[a, b] = True
        # transitivity
        if not np.array_equal((below.astype(int) @ below.astype(int)) > 0, below):
            continue
        add = _join_table(n, below)
        if add is None:
            continue
        key = min(_table_key(_relabel(add, p), n) for p in perms)
        if key not in seen:
            seen.add(key)
            out.append((key, add))
    out.sort(key=lambda kv: kv[0])
    return [SemilatticeTable(add) for _, add in out]


def join_endomorphisms(add: np.ndarray) -> np.ndarray:
    """Maps ``f`` with ``f(a + b) = f(a) + f(b)``, in lexicographic order."""
    n = add.shape[0]
    maps = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64)
    ok = np.ones(maps.shape[0], dtype=bool)
    for a in range(n):
        for b in range(a + 1, n):
            ok &= maps[:, add[a, b]] == add[maps[:, a], maps[:, b]]
    return maps[ok]


@dataclass(frozen=True)
class IsoClass:
    representative: FiniteAiSemiring
    orbit_size: int
    key: int
    match: str | None = None


def canonical_keys(tables: np.ndarray, autos: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Per table: the least key over the automorphism orbit, and the orbit size."""
    m, n, _ = tables.shape
    weights = n ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    keys = []
    for perm in autos:
        inv = np.argsort(perm)
        image = perm[tables[:, inv][:, :, inv]]
        keys.append(image.reshape(m, -1) @ weights)
    keys = np.vstack(keys)
    srt = np.sort(keys, axis=0)
    orbit = 1 + (np.diff(srt, axis=0) != 0).sum(axis=0)
    return srt[0], orbit


def decode_key(key: int, n: int) -> np.ndarray:
    digits = []
    for _ in range(n * n):
        key, d = divmod(int(key), n)
        digits.append(d)
    return np.array(digits[::-1], dtype=np.int64).reshape(n, n)


def enumerate_ai_semirings(add: np.ndarray, name_prefix: str = "class") -> list[IsoClass]:
    """One class per isomorphism type of multiplication over ``add``,
    sorted by canonical key (the lexicographically least table in the orbit)."""
    add = np.asarray(add, dtype=np.int64)
    n = add.shape[0]
    tables = kernels.ai_tables(add, join_endomorphisms(add))
    if tables.shape[0] == 0:
        return []
    keys, orbits = canonical_keys(tables, automorphisms(add))
    uniq, first = np.unique(keys, return_index=True)
    out = []
    for i, (key, idx) in enumerate(zip(uniq.tolist(), first.tolist())):
        rep = FiniteAiSemiring(f"{name_prefix}-{i + 1}", add, decode_key(key, n))
        out.append(IsoClass(rep, int(orbits[idx]), key))
    return out


def count_order(n: int) -> int:
    return sum(len(enumerate_ai_semirings(s.add)) for s in enumerate_semilattices(n))


def all_tables_valid(classes: list[IsoClass]) -> bool:
    return all(validate_axioms(c.representative.add, c.representative.mul).ok for c in classes)


# ---------------------------------------------------------------------------
# matching against the catalog


@dataclass
class MatchReport:
    matches: dict[str, str]  # catalog name -> class name
    isomorphisms: dict[str, tuple[int, ...]]  # catalog name -> 1-based map
    unmatched_classes: list[str]
    unmatched_entries: list[str]
    duplicates: dict[str, list[str]]  # class name -> catalog names sharing it

    @property
    def bijective(self) -> bool:
        return not (self.unmatched_classes or self.unmatched_entries or self.duplicates)

    def summary(self) -> str:
        parts = [f"{len(self.matches)} matched"]
        if self.unmatched_classes:
            parts.append(f"unmatched classes: {', '.join(self.unmatched_classes)}")
        if self.unmatched_entries:
            parts.append(f"unmatched entries: {', '.join(self.unmatched_entries)}")
        for cls, names in self.duplicates.items():
            parts.append(f"{cls} matched by {', '.join(names)}")
        return "; ".join(parts)


def match_catalog(classes: list[IsoClass], registry: Registry, names: list[str] | None = None) -> MatchReport:
    """Pair classes with catalog entries sharing their addition, by canonical key."""
    if not classes:
        return MatchReport({}, {}, [], list(names or []), {})
    add = classes[0].representative.add
    autos = automorphisms(add)
    by_key = {c.key: c for c in classes}
    if names is None:
        names = [e.name for e in registry.table1()]
    hits: dict[str, list[str]] = {}
    matches, isos, unmatched = {}, {}, []
    for name in names:
        S = registry[name]
        if S.order != add.shape[0] or not np.array_equal(S.add, add):
            unmatched.append(name)
            continue
        images = [_table_key(_relabel(S.mul, p), S.order) for p in autos]
        key = min(images)
        cls = by_key.get(key)
        if cls is None:
            unmatched.append(name)
            continue
        perm = autos[images.index(key)]
        matches[name] = cls.representative.name
        isos[name] = tuple(int(v) + 1 for v in perm)
        hits.setdefault(cls.representative.name, []).append(name)
    dup = {c: ns for c, ns in hits.items() if len(ns) > 1}
    missing = [c.representative.name for c in classes if c.representative.name not in hits]
    return MatchReport(matches, isos, missing, unmatched, dup)


def classes_to_registry(classes: list[IsoClass]) -> Registry:
    return Registry(CatalogEntry(c.representative.name, c.representative, Provenance("enumerated")) for c in classes)


def figure1_classes() -> list[IsoClass]:
    return enumerate_ai_semirings(figure1_addition(), name_prefix="fig1")
