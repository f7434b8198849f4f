"""Named registry of ai-semirings: the 112 four-element tables, the six
two-element algebras, and three-element algebras recovered as subalgebras or
quotients of the four-element ones.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import algebra as alg
from ._table1 import MULTIPLICATION
from .algebra import Congruence, FiniteAiSemiring

TABLE1_RANGE = range(276, 388)
CATALOG_ENV = "AISEMIRING_CATALOG"


class CatalogError(ValueError):
    pass


class CatalogParseError(CatalogError):
    pass


class CatalogValidationError(CatalogError):
    pass


def table1_name(k: int) -> str:
    return f"S_(4,{k})"


def normalize_name(name: str) -> str:
    """Accept ``S_(4,277)``, ``S(4,277)``, ``4,277`` or ``277`` for the
    four-element algebras and ``S57`` / ``S_57`` for three-element ones."""
    s = name.strip().replace(" ", "")
    m = re.fullmatch(r"(?:S_?)?\(?4,(\d+)\)?", s)
    if m:
        return table1_name(int(m.group(1)))
    if re.fullmatch(r"\d{3}", s):
        return table1_name(int(s))
    m = re.fullmatch(r"S_?(\d{1,2})", s)
    if m:
        return f"S_{int(m.group(1))}"
    m = re.fullmatch(r"([LRMDNT])_?2", s)
    if m:
        return f"{m.group(1)}_2"
    return name


# ---------------------------------------------------------------------------
# provenance


@dataclass(frozen=True)
class Provenance:
    kind: str  # table1 | definitional | derived-subalgebra | derived-quotient
    host: str | None = None
    subset: tuple[int, ...] | None = None  # 0-based
    partition: Congruence | None = None

    def __str__(self):
        if self.kind == "derived-subalgebra":
            return f"derived-subalgebra({self.host},{{{','.join(str(a + 1) for a in self.subset)}}})"
        if self.kind == "derived-quotient":
            return f"derived-quotient({self.host},{self.partition})"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> Provenance:
        text = text.strip()
        if text in ("table1", "figure1", "definitional", "enumerated"):
            return cls(text)
        m = re.fullmatch(r"derived-subalgebra\((.+),\{([\d,]+)\}\)", text)
        if m:
            subset = tuple(int(x) - 1 for x in m.group(2).split(","))
            return cls("derived-subalgebra", m.group(1), subset=subset)
        m = re.fullmatch(r"derived-quotient\((.+),([\d|]+)\)", text)
        if m:
            blocks = tuple(tuple(int(c) - 1 for c in b) for b in m.group(2).split("|"))
            return cls("derived-quotient", m.group(1), partition=Congruence(blocks))
        raise CatalogParseError(f"unknown provenance {text!r}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: FiniteAiSemiring
    provenance: Provenance


class Registry:
    """Ordered, read-only mapping from names to catalog entries."""

    def __init__(self, entries: Iterable[CatalogEntry] = (), unresolved: dict[str, str] | None = None):
        self._entries: dict[str, CatalogEntry] = {}
        for e in entries:
            if e.name in self._entries:
                raise CatalogError(f"duplicate entry {e.name}")
            self._entries[e.name] = e
        self.unresolved: dict[str, str] = dict(unresolved or {})

    def __getitem__(self, name: str) -> FiniteAiSemiring:
        return self.entry(name).algebra

    def entry(self, name: str) -> CatalogEntry:
        key = normalize_name(name)
        try:
            return self._entries[key]
        except KeyError:
            if key in self.unresolved:
                raise KeyError(f"{key} is unresolved: {self.unresolved[key]}") from None
            raise KeyError(f"no catalog entry named {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return normalize_name(name) in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def entries(self) -> list[CatalogEntry]:
        return list(self._entries.values())

    def table1(self) -> list[CatalogEntry]:
        return [e for e in self._entries.values() if e.provenance.kind == "table1"]

    def with_entries(self, extra: Iterable[CatalogEntry], unresolved: dict[str, str] | None = None) -> Registry:
        merged = dict(self.unresolved)
        merged.update(unresolved or {})
        return Registry([*self._entries.values(), *extra], merged)

    def replace(self, entry: CatalogEntry) -> Registry:
        """Copy with one entry swapped out (used by perturbation tests)."""
        entries = [entry if e.name == entry.name else e for e in self._entries.values()]
        return Registry(entries, self.unresolved)

    def __eq__(self, other):
        if not isinstance(other, Registry):
            return NotImplemented
        return list(self._entries) == list(other._entries) and all(
            self._entries[k].algebra == other._entries[k].algebra
            and str(self._entries[k].provenance) == str(other._entries[k].provenance)
            for k in self._entries
        )


# ---------------------------------------------------------------------------
# built-in data


def hasse_join_table(n: int, covers: Iterable[tuple[int, int]]) -> np.ndarray:
    """Join table of the order generated by ``covers`` (pairs lower < upper,
    0-based). Raises if some pair has no least upper bound."""
    above = [{a} for a in range(n)]
    changed = True
    up = {a: set() for a in range(n)}
    for lo, hi in covers:
        up[lo].add(hi)
    while changed:
        changed = False
        for a in range(n):
            new = set(above[a])
            for b in above[a]:
                new |= up[b]
            if new != above[a]:
                above[a] = new
                changed = True
    table = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ub = above[a] & above[b]
            least = [c for c in ub if ub <= above[c]]
            if len(least) != 1:
                raise ValueError(f"elements {a + 1} and {b + 1} have no least upper bound")
            table[a, b] = least[0]
    return table


def figure1_addition() -> np.ndarray:
    # 3 < 1, 4 < 1, 1 < 2 (1-based labels)
    return hasse_join_table(4, [(2, 0), (3, 0), (0, 1)])


def _parse_rows(text: str) -> list[list[int]]:
    return [[int(c) - 1 for c in row] for row in text.split()]


def two_element_algebras() -> dict[str, FiniteAiSemiring]:
    add = [[0, 1], [1, 1]]
    meet = [[0, 0], [0, 1]]
    return {
        "L_2": FiniteAiSemiring("L_2", add, [[0, 0], [1, 1]]),
        "R_2": FiniteAiSemiring("R_2", add, [[0, 1], [0, 1]]),
        "M_2": FiniteAiSemiring("M_2", add, add),
        "D_2": FiniteAiSemiring("D_2", add, meet),
        "N_2": FiniteAiSemiring("N_2", add, [[0, 0], [0, 0]]),
        "T_2": FiniteAiSemiring("T_2", add, [[1, 1], [1, 1]]),
    }


def _check(entry: CatalogEntry) -> CatalogEntry:
    report = alg.validate_axioms(entry.algebra.add, entry.algebra.mul)
    if not report.ok:
        raise CatalogValidationError(f"{entry.name}: {report.axiom} fails: {report.detail}")
    return entry


def builtin_registry() -> Registry:
    add = figure1_addition()
    entries = []
    for k in TABLE1_RANGE:
        name = table1_name(k)
        S = FiniteAiSemiring(name, add, _parse_rows(MULTIPLICATION[k]))
        entries.append(_check(CatalogEntry(name, S, Provenance("table1"))))
    for name, S in two_element_algebras().items():
        entries.append(_check(CatalogEntry(name, S, Provenance("definitional"))))
    return Registry(entries)


# ---------------------------------------------------------------------------
# derived three-element algebras

# Subsets are 1-based, as printed.
SUBALGEBRA_ANCHORS = {
    "S_2": (277, (1, 3, 4)),
    "S_4": (281, (1, 3, 4)),
    "S_54": (360, (1, 2, 4)),
    "S_57": (360, (1, 2, 3)),
    "S_59": (366, (1, 2, 3)),
    "S_60": (368, (1, 2, 4)),
}

# host -> (known factor, name of the three-element factor)
SUBDIRECT_ANCHORS = {
    "S_10": (285, "N_2"),
    "S_18": (277, "S_2"),
    "S_19": (288, "S_2"),
    "S_21": (281, "S_4"),
    "S_22": (292, "S_4"),
    "S_23": (325, "S_4"),
    "S_27": (299, "S_2"),
    "S_28": (330, "S_2"),
    "S_29": (303, "S_4"),
    "S_44": (379, "T_2"),
    "S_46": (380, "T_2"),
    "S_47": (385, "T_2"),
    "S_53": (357, "S_4"),
}

# Names the data cannot pin down; recorded, never fabricated.
UNRESOLVED = {
    "S_6": "no subalgebra or quotient anchor",
    "S_7": "table is defined externally; only shared subalgebras are computable",
    "S_30": "no subalgebra or quotient anchor",
    "S_55": "no subalgebra or quotient anchor",
    "S_58": "only known as the dual of S_56",
    "S_61": "no subalgebra or quotient anchor",
}


def complement_quotients(host: FiniteAiSemiring, known: FiniteAiSemiring, size: int = 3):
    """Pairs (theta1, theta2) with host/theta1 ~ known, |host/theta2| = size and
    trivial meet, in restricted-growth order."""
    cons = alg.congruences(host)
    left = [t for t, Q in cons if alg.is_isomorphic(Q, known)]
    right = [(t, Q) for t, Q in cons if Q.order == size]
    return [(t1, t2, Q) for t1 in left for t2, Q in right if t1.meet(t2).is_equality()]


def _iso_classes(algebras):
    reps = []
    for A in algebras:
        if not any(alg.is_isomorphic(A, B) for B in reps):
            reps.append(A)
    return reps


def derive_named_relatives(registry: Registry) -> Registry:
    """Add the three-element algebras the four-element tables determine.

    Subalgebra anchors are hard requirements. Quotient anchors must give a
    unique isomorphism class, otherwise the name is left unresolved.
    """
    extra: list[CatalogEntry] = []
    unresolved = dict(UNRESOLVED)
    known = {name: registry[name] for name in registry}

    def add_entry(entry):
        _check(entry)
        extra.append(entry)
        known[entry.name] = entry.algebra

    for name, (k, subset) in SUBALGEBRA_ANCHORS.items():
        host = table1_name(k)
        zero_based = tuple(a - 1 for a in subset)
        try:
            S = alg.subalgebra(registry[host], zero_based, name=name)
        except alg.NotClosedError as exc:
            raise CatalogError(f"{name}: anchor subset is not closed: {exc}") from exc
        add_entry(CatalogEntry(name, S, Provenance("derived-subalgebra", host, subset=zero_based)))

    # S_56 is the three-element subalgebra of S_(4,363) other than S_57
    host = table1_name(363)
    subs = [s for s in alg.closed_subsets(registry[host], 3)]
    others = [s for s in subs if not alg.is_isomorphic(alg.subalgebra(registry[host], s), known["S_57"])]
    if len(others) == 1:
        S = alg.subalgebra(registry[host], others[0], name="S_56")
        add_entry(CatalogEntry("S_56", S, Provenance("derived-subalgebra", host, subset=others[0])))
    else:
        unresolved["S_56"] = f"{host} has {len(others)} three-element subalgebras besides S_57"

    for name, (k, factor) in SUBDIRECT_ANCHORS.items():
        host = table1_name(k)
        if factor not in known:
            unresolved[name] = f"factor {factor} unavailable"
            continue
        found = complement_quotients(registry[host], known[factor])
        classes = _iso_classes([Q for _, _, Q in found])
        if not classes:
            raise CatalogError(f"{name}: {host} is not a subdirect product of {factor} and a 3-element algebra")
        if len(classes) > 1:
            unresolved[name] = f"{host} has {len(classes)} non-isomorphic candidate quotients"
            continue
        _, theta, Q = found[0]
        if name in known:
            # already derived as a subalgebra: the quotient must agree
            if not alg.is_isomorphic(Q, known[name]):
                raise CatalogError(f"{name}: quotient of {host} disagrees with the subalgebra anchor")
            continue
        add_entry(CatalogEntry(name, Q.renamed(name), Provenance("derived-quotient", host, partition=theta)))

    return registry.with_entries(extra, unresolved)


def rederive(registry: Registry, entry: CatalogEntry) -> FiniteAiSemiring:
    """Re-run a derived entry's recipe."""
    p = entry.provenance
    if p.kind == "derived-subalgebra":
        return alg.subalgebra(registry[p.host], p.subset, name=entry.name)
    if p.kind == "derived-quotient":
        return alg.quotient(registry[p.host], p.partition, name=entry.name)
    raise ValueError(f"{entry.name} is not a derived entry")


def full_registry() -> Registry:
    return derive_named_relatives(builtin_registry())


# ---------------------------------------------------------------------------
# file format


def entry_to_json(entry: CatalogEntry) -> dict:
    S = entry.algebra
    return {
        "name": entry.name,
        "order": S.order,
        "add": (S.add + 1).tolist(),
        "mul": (S.mul + 1).tolist(),
        "provenance": str(entry.provenance),
    }


def save_catalog(registry: Registry, path) -> None:
    data = [entry_to_json(e) for e in registry.entries()]
    text = "[\n" + ",\n".join("  " + json.dumps(d) for d in data) + "\n]\n"
    Path(path).write_text(text, encoding="utf-8")


def _field(obj, key, i, name):
    if key not in obj:
        raise CatalogParseError(f"entry {i} ({name}): missing field {key!r}")
    return obj[key]


def _table_field(obj, key, order, i, name):
    rows = _field(obj, key, i, name)
    if (
        not isinstance(rows, list)
        or len(rows) != order
        or not all(isinstance(r, list) and len(r) == order for r in rows)
        or not all(isinstance(v, int) and 1 <= v <= order for r in rows for v in r)
    ):
        raise CatalogParseError(f"entry {i} ({name}): field {key!r} is not a {order}x{order} table of labels 1..{order}")
    return [[v - 1 for v in r] for r in rows]


def parse_catalog(text: str, source: str = "<catalog>") -> Registry:
    if not text.strip():
        raise CatalogParseError(f"{source}: empty catalog file")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(data, dict) and "entries" in data:
        data = data["entries"]
    if not isinstance(data, list) or not data:
        raise CatalogParseError(f"{source}: expected a nonempty list of entries")
    entries = []
    for i, obj in enumerate(data):
        if not isinstance(obj, dict):
            raise CatalogParseError(f"{source}: entry {i} is not an object")
        name = _field(obj, "name", i, "?")
        if not isinstance(name, str) or not name:
            raise CatalogParseError(f"{source}: entry {i}: field 'name' must be a nonempty string")
        order = _field(obj, "order", i, name)
        if not isinstance(order, int) or order < 1:
            raise CatalogParseError(f"{source}: entry {i} ({name}): field 'order' must be a positive integer")
        add = _table_field(obj, "add", order, i, name)
        mul = _table_field(obj, "mul", order, i, name)
        prov = Provenance.parse(str(obj.get("provenance", "definitional")))
        entry = CatalogEntry(name, FiniteAiSemiring(name, add, mul), prov)
        entries.append(_check(entry))
    return Registry(entries)


def load_catalog(path) -> Registry:
    path = Path(path)
    return parse_catalog(path.read_text(encoding="utf-8"), source=str(path))


def default_registry() -> Registry:
    """The catalog named by ``$AISEMIRING_CATALOG``, else the built-in one."""
    path = os.environ.get(CATALOG_ENV)
    if not path:
        return full_registry()
    return complete(load_catalog(path))


def complete(registry: Registry) -> Registry:
    """Derive the named relatives unless the registry cannot support them or
    already carries them."""
    has_table1 = all(table1_name(k) in registry for k in TABLE1_RANGE)
    has_derived = any(e.provenance.kind.startswith("derived") for e in registry.entries())
    if has_table1 and not has_derived:
        return derive_named_relatives(registry)
    return registry
