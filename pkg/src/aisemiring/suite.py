"""The full verification run behind ``aisemiring verify-paper``.

Claims are grouped; groups run in a fixed order and every claim record has a
stable id, a short anchor describing what is claimed, a status and, for
failures, a witness. Timings are kept out of the records so that two runs
with the same seed and registry give identical reports.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable

import numpy as np

from . import __version__
from . import algebra as alg
from . import bases, derivation, enumeration
from .catalog import Registry, complement_quotients, rederive, table1_name, two_element_algebras
from .oracles import EXACT_ORACLES, HOSTS, NECESSARY_CONDITIONS, ORACLE_ALGEBRA, S53_BY_READING
from .satisfaction import IdentityProfile, satisfies
from .sweeps import (
    EXHAUSTIVE_BOUNDS,
    RANDOM_COUNT,
    RANDOM_PROFILE,
    PairFamily,
    exact_sweep,
    family_pairs,
    gf2_reduction_check,
    necessity_sweep,
    random_pairs,
    random_sweep,
    select_s2_reading,
)
from .terms import parse_identity

PASS, FAIL, SKIPPED = "pass", "fail", "skipped-unresolved"
STATUSES = (PASS, FAIL, SKIPPED)
GROUPS = ("catalog", "enumeration", "bases", "structure", "oracles", "derivation", "reductions")


@dataclass
class ClaimRecord:
    id: str
    group: str
    anchor: str
    status: str
    witness: str | None = None
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError(f"failing claim {self.id} has no witness")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "group": self.group,
            "anchor": self.anchor,
            "status": self.status,
            "witness": self.witness,
            "detail": self.detail,
        }


def _claim(cid, group, anchor, ok, witness=None, detail=""):
    if ok:
        return ClaimRecord(cid, group, anchor, PASS, None, detail)
    return ClaimRecord(cid, group, anchor, FAIL, witness or "no witness recorded", detail)


@dataclass
class SuiteOptions:
    only: tuple[str, ...] | None = None
    seed: int = RANDOM_PROFILE.seed
    jobs: int = 1
    full_866: bool = False
    random_count: int = RANDOM_COUNT
    bounds: tuple[int, int, int] = EXHAUSTIVE_BOUNDS
    log: Callable[[str], None] | None = None

    def __post_init__(self):
        if self.only:
            unknown = [g for g in self.only if g not in GROUPS]
            if unknown:
                raise ValueError(f"unknown group(s) {unknown}; choose from {', '.join(GROUPS)}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    @property
    def profile(self) -> IdentityProfile:
        p = RANDOM_PROFILE
        return IdentityProfile(p.max_vars, p.max_word_len, p.max_summands, seed=self.seed, mode="random")

    def selected(self, group: str) -> bool:
        return not self.only or group in self.only


@dataclass
class SuiteReport:
    claims: list[ClaimRecord]
    seed: int
    version: str = __version__
    aborted: str | None = None
    seconds: float = field(default=0.0, compare=False)

    @property
    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for c in self.claims:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.aborted is None and all(c.status != FAIL for c in self.claims)

    def claim(self, cid: str) -> ClaimRecord:
        for c in self.claims:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "seed": self.seed,
            "aborted": self.aborted,
            "summary": self.counts,
            "claims": [c.to_dict() for c in self.claims],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render(self) -> str:
        lines = [f"aisemiring {self.version}, seed {self.seed}"]
        group = None
        for c in self.claims:
            if c.group != group:
                group = c.group
                lines.append(f"[{group}]")
            lines.append(f"  {c.status.upper():<18} {c.id}: {c.anchor}")
            if c.detail:
                lines.append(f"      {c.detail}")
            if c.witness:
                lines.append(f"      witness: {c.witness}")
        k = self.counts
        lines.append(f"{k[PASS]} pass, {k[FAIL]} fail, {k[SKIPPED]} skipped-unresolved")
        if self.aborted:
            lines.append(f"aborted: {self.aborted}")
        return "\n".join(lines)


class SuiteAbort(Exception):
    def __init__(self, report: SuiteReport):
        super().__init__(report.aborted)
        self.report = report


# ---------------------------------------------------------------------------
# catalog


def validation_claim(registry: Registry) -> ClaimRecord:
    bad = []
    for e in registry.entries():
        r = alg.validate_axioms(e.algebra.add, e.algebra.mul)
        if not r.ok:
            bad.append(f"{e.name}: {r.axiom} at {tuple(a + 1 for a in r.witness)} ({r.detail})")
    n = len(registry.table1())
    return _claim(
        "catalog-valid",
        "catalog",
        "every catalog table is an ai-semiring",
        not bad and n == 112,
        "; ".join(bad) if bad else f"{n} four-element tables instead of 112",
        f"{len(registry)} entries, {n} four-element tables",
    )


def _catalog_claims(registry: Registry, opts: SuiteOptions) -> list[ClaimRecord]:
    out = [validation_claim(registry)]
    entries = registry.table1()
    if entries:
        add = entries[0].algebra.add
        muls = np.stack([e.algebra.mul for e in entries])
        keys, _ = enumeration.canonical_keys(muls, enumeration.automorphisms(add))
        seen: dict[int, str] = {}
        clashes = []
        for e, k in zip(entries, keys.tolist()):
            if k in seen:
                clashes.append(f"{seen[k]} ~ {e.name}")
            seen.setdefault(k, e.name)
        same_add = all(np.array_equal(e.algebra.add, add) for e in entries)
        out.append(
            _claim(
                "catalog-distinct",
                "catalog",
                "the four-element tables share one addition and are pairwise non-isomorphic",
                same_add and not clashes,
                "; ".join(clashes) or "additions differ",
            )
        )
    derived = [e for e in registry.entries() if e.provenance.kind.startswith("derived")]
    mismatched = [e.name for e in derived if rederive(registry, e) != e.algebra]
    out.append(
        _claim(
            "catalog-derived",
            "catalog",
            "three-element relatives re-derive from their recipes",
            not mismatched,
            ", ".join(mismatched),
            f"{len(derived)} derived; unresolved: {', '.join(sorted(registry.unresolved)) or 'none'}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# enumeration


def _count_claim(cid, n, expected):
    classes = [c for s in enumeration.enumerate_semilattices(n) for c in enumeration.enumerate_ai_semirings(s.add)]
    valid = enumeration.all_tables_valid(classes)
    return _claim(
        cid,
        "enumeration",
        f"{expected} ai-semirings of order {n} up to isomorphism",
        len(classes) == expected and valid,
        f"found {len(classes)} classes" + ("" if valid else ", some tables invalid"),
        f"{len(classes)} classes",
    )


def _enumeration_claims(registry: Registry, opts: SuiteOptions) -> list[ClaimRecord]:
    out = [_count_claim("count-order-2", 2, 6), _count_claim("count-order-3", 3, 61)]
    classes = enumeration.figure1_classes()
    report = enumeration.match_catalog(classes, registry)
    out.append(
        _claim(
            "count-figure1",
            "enumeration",
            "112 ai-semirings over the fixed four-element addition, matching the catalog",
            len(classes) == 112 and report.bijective and enumeration.all_tables_valid(classes),
            f"{len(classes)} classes; {report.summary()}",
            f"{len(classes)} classes; {report.summary()}",
        )
    )
    if opts.full_866:
        out.append(_count_claim("count-order-4", 4, 866))
    return out


# ---------------------------------------------------------------------------
# bases


def basis_claim(registry: Registry, host: int) -> ClaimRecord:
    cid = f"prop-{host}-basis"
    anchor = f"the stated basis holds in S_(4,{host})"
    S = registry[table1_name(host)]
    count = 0
    for entry in bases.basis(host):
        for ident in entry.instances():
            count += 1
            v = satisfies(S, ident)
            if not v.holds:
                return _claim(cid, "bases", anchor, False, f"{entry.tag}: {v.describe()}")
    return _claim(cid, "bases", anchor, True, detail=f"{count} instances")


def _bases_claims(registry: Registry, opts: SuiteOptions) -> list[ClaimRecord]:
    return [basis_claim(registry, h) for h in bases.BASIS_HOSTS]


# ---------------------------------------------------------------------------
# structure

# (algebra, host, 1-based subset or None for "embeds somewhere")
EMBEDDINGS = (
    ("S_2", 277, (1, 3, 4)),
    ("S_4", 281, (1, 3, 4)),
    ("N_2", 277, (1, 2)),
    ("T_2", 366, (1, 2)),
    ("D_2", 380, (2, 3)),
    ("S_54", 360, (1, 2, 4)),
    ("S_57", 360, (1, 2, 3)),
    ("S_59", 368, (1, 2, 3)),
    ("S_60", 368, (1, 2, 4)),
    ("S_59", 366, (1, 2, 3)),
    ("S_60", 375, (1, 2, 3)),
    ("S_56", 363, None),
    ("S_57", 363, None),
)

DUAL_PAIRS = ((279, 281), (290, 292), (299, 322), (301, 325), (303, 324), (357, 358), (362, 365), (363, 376), (380, 383))

# host, first factor, second factor (a name, or an int for "any quotient of this size")
SUBDIRECT = ((285, "N_2", 3), (372, "S_2", "S_59"), (362, "S_4", "S_57"))


def _skip(cid, group, anchor, reason):
    return ClaimRecord(cid, group, anchor, SKIPPED, reason)


def embedding_claim(registry: Registry, name: str, host: int, subset) -> ClaimRecord:
    cid = f"embed-{name.lower().replace('_', '')}-{host}"
    where = f"as {{{','.join(map(str, subset))}}} " if subset else ""
    anchor = f"{name} embeds {where}in S_(4,{host})"
    if name not in registry:
        return _skip(cid, "structure", anchor, f"{name} is not in the registry")
    A, S = registry[name], registry[table1_name(host)]
    if subset is None:
        found = alg.embeddings(A, S)
        img = f"image {{{','.join(str(a + 1) for a in sorted(found[0].map))}}}" if found else ""
        return _claim(cid, "structure", anchor, bool(found), "no injective homomorphism", img)
    sub = tuple(a - 1 for a in subset)
    try:
        B = alg.subalgebra(S, sub)
    except alg.NotClosedError as exc:
        return _claim(cid, "structure", anchor, False, str(exc))
    iso = alg.find_isomorphism(B, A)
    return _claim(cid, "structure", anchor, iso is not None, "subalgebra is not isomorphic to " + name)


def dual_claim(registry: Registry, a: int, b: int) -> ClaimRecord:
    cid = f"dual-{a}-{b}"
    anchor = f"S_(4,{b}) is the dual of S_(4,{a}) up to isomorphism"
    A, B = registry[table1_name(a)], registry[table1_name(b)]
    iso = alg.find_isomorphism(alg.dual(A), B)
    detail = ""
    if iso is not None:
        detail = "map " + " ".join(f"{i + 1}->{j + 1}" for i, j in enumerate(iso.map))
    return _claim(cid, "structure", anchor, iso is not None, "no isomorphism from the dual", detail)


def subdirect_claim(registry: Registry, host: int, left: str, right) -> ClaimRecord:
    cid = f"subdirect-{host}"
    what = f"a {right}-element quotient" if isinstance(right, int) else right
    anchor = f"S_(4,{host}) is a subdirect product of {left} and {what}"
    missing = [n for n in (left, right) if isinstance(n, str) and n not in registry]
    if missing:
        return _skip(cid, "structure", anchor, f"{', '.join(missing)} not in the registry")
    S, A = registry[table1_name(host)], registry[left]
    if isinstance(right, int):
        found = complement_quotients(S, A, right)
        pair = (found[0][0], found[0][1]) if found else None
    else:
        pair = alg.subdirect_witness(S, A, registry[right])
    detail = f"congruences {pair[0]} and {pair[1]}" if pair else ""
    return _claim(cid, "structure", anchor, pair is not None, "no pair of congruences with trivial meet", detail)


def _structure_claims(registry: Registry, opts: SuiteOptions) -> list[ClaimRecord]:
    out = [embedding_claim(registry, *e) for e in EMBEDDINGS]
    out += [dual_claim(registry, a, b) for a, b in DUAL_PAIRS]
    out += [subdirect_claim(registry, *s) for s in SUBDIRECT]
    return out


# ---------------------------------------------------------------------------
# oracles


@lru_cache(maxsize=4)
def _family(bounds, reduced):
    return PairFamily(*bounds, reduced=reduced)


@lru_cache(maxsize=2)
def _random(count, seed):
    p = RANDOM_PROFILE
    return random_pairs(count, IdentityProfile(p.max_vars, p.max_word_len, p.max_summands, seed=seed, mode="random"))


def _sweep_claim(cid, anchor, results, extra=""):
    bad = [r for r in results if not r.ok]
    witness = None
    if bad:
        r = bad[0]
        witness = r.examples[0] if r.examples else r.summary()
    detail = "; ".join(r.summary() for r in results)
    if extra:
        detail += "; " + extra
    return _claim(cid, "oracles", anchor, not bad, witness, detail)


def oracle_claim(registry: Registry, name: str, opts: SuiteOptions) -> ClaimRecord:
    lemma = name.lower()
    algebra_name = ORACLE_ALGEBRA[name]
    reduced = _family(opts.bounds, True)
    identities, rpairs = _random(opts.random_count, opts.seed)
    if name in EXACT_ORACLES:
        cid, anchor = f"lemma-{lemma}-exactness", f"the {name} criterion decides satisfaction in {algebra_name}"
        if algebra_name not in registry:
            return _skip(cid, "oracles", anchor, f"{algebra_name} is not in the registry")
        S, o = registry[algebra_name], EXACT_ORACLES[name]
        results = [exact_sweep(name, o, S, reduced), random_sweep(name, o, S, identities, rpairs, exact=True)]
        return _sweep_claim(cid, anchor, results)
    cid = f"lemma-{lemma}-necessity"
    if name not in HOSTS:
        anchor = f"the {name} conditions hold for every identity of {algebra_name}"
        if algebra_name not in registry:
            return _skip(cid, "oracles", anchor, f"{algebra_name} is not in the registry")
        S, o = registry[algebra_name], NECESSARY_CONDITIONS[name]
        results = [necessity_sweep(name, o, S, reduced), random_sweep(name, o, S, identities, rpairs, exact=False)]
        return _sweep_claim(cid, anchor, results)
    host = registry[HOSTS[name]]
    anchor = f"the {name} conditions hold for every identity of {HOSTS[name]}"
    extra = ""
    if name == "S53":
        choice = select_s2_reading(host, reduced, _family(opts.bounds, False))
        o = S53_BY_READING[choice.chosen]
        results = [choice.results[choice.chosen]]
        others = [r.summary() for m, r in choice.results.items() if m != choice.chosen]
        extra = choice.summary() + ("; rejected: " + "; ".join(others) if others else "")
    else:
        o = NECESSARY_CONDITIONS[name]
        results = [necessity_sweep(name, o, host, reduced)]
    results.append(random_sweep(name, o, host, identities, rpairs, exact=False))
    if algebra_name in registry:
        info = necessity_sweep(name, o, registry[algebra_name], reduced)
        extra = "; ".join(filter(None, [extra, f"informational, derived table: {info.summary()}"]))
    return _sweep_claim(cid, anchor, results, extra)


def gf2_claim(registry: Registry, opts: SuiteOptions) -> ClaimRecord:
    _, rpairs = _random(opts.random_count, opts.seed)
    red = gf2_reduction_check(list(family_pairs(_family(opts.bounds, True))) + list(rpairs))
    return _claim(
        "lemma-s10-parity-reduction",
        "oracles",
        "the parity criterion agrees with multiset search over at most 27 summands",
        red.ok,
        "; ".join(red.examples),
        f"{red.mismatches} mismatches over {red.instances} instances",
    )


ORACLE_ORDER = ("S2", "S4", "S10", "S56", "S57", "S59", "S60", "S44", "S46", "S47", "S53")


# ---------------------------------------------------------------------------
# derivation


def _derivation_claims(registry: Registry, opts: SuiteOptions) -> list[ClaimRecord]:
    out = []
    for chain in derivation.builtin_proof_corpus():
        cid, anchor = f"chain-{chain.name}", f"{chain.claim} in {chain.semiring}"
        if chain.semiring not in registry:
            out.append(_skip(cid, "derivation", anchor, f"{chain.semiring} is not in the registry"))
            continue
        r = derivation.check_chain(chain, registry)
        out.append(_claim(cid, "derivation", anchor, r.ok, "; ".join(r.problems), f"{len(chain.steps)} steps"))
    return out


# ---------------------------------------------------------------------------
# reductions to known varieties; only identity-level facts are checked

CUBE_HOSTS = (
    294, 295, 296, 297, 305, 306, 307, 308, 315, 316, 318, 320, 327, 328,
    336, 337, 338, 339, 342, 343, 347, 348, 349, 352, 353, 354, 355,
)  # fmt: skip
TWO_ELEMENT_HOSTS = (
    276, 278, 280, 283, 284, 286, 287, 289, 291, 298, 300, 302, 309, 310, 311, 312, 313,
    314, 319, 321, 323, 329, 331, 333, 340, 344, 345, 371, 381, 382, 384, 386, 387,
)  # fmt: skip
NONFINITELY_BASED = (282, 293, 304, 326, 335, 359)
SHARED_SUBALGEBRA_HOSTS = (293, 304, 326, 335)


def _cube_claim(registry):
    ident = parse_identity("x^3 = x")
    bad = []
    for k in CUBE_HOSTS:
        v = satisfies(registry[table1_name(k)], ident)
        if not v.holds:
            bad.append(f"S_(4,{k}) {v.describe()}")
    return _claim(
        "prop-cube-identity",
        "reductions",
        f"x^3 = x holds in the {len(CUBE_HOSTS)} listed algebras",
        not bad,
        "; ".join(bad),
    )


def _two_element_claim(registry, opts):
    """Proxy for membership in the variety of all order-two ai-semirings.

    Sufficient: the two-element quotients separate points. Otherwise the
    algebra must satisfy every bounded pair that all six two-element
    algebras satisfy.
    """
    family = _family(opts.bounds, True)
    common = None
    separated, bounded, bad = [], [], []
    for k in TWO_ELEMENT_HOSTS:
        S = registry[table1_name(k)]
        thetas = [t for t, Q in alg.congruences(S) if Q.order == 2]
        if alg.separates_points(S, thetas):
            separated.append(k)
            continue
        if common is None:
            common = np.logical_and.reduce([family.holds_matrix(A) for A in two_element_algebras().values()])
        gap = np.argwhere(common & ~family.holds_matrix(S))
        if gap.size:
            t, j = gap[0]
            bad.append(f"S_(4,{k}) fails {family.term(t)} = {family.term(t)} + {family.words[j]}")
        else:
            bounded.append(k)
    return _claim(
        "prop-two-element-variety",
        "reductions",
        f"the {len(TWO_ELEMENT_HOSTS)} listed algebras lie in the variety of order-two ai-semirings (proxy)",
        not bad,
        "; ".join(bad),
        f"{len(separated)} separated by two-element quotients; bounded identity check for "
        + (", ".join(map(str, bounded)) or "none"),
    )


def _three_element_subalgebras(registry, host):
    named = [(n, registry[n]) for n in registry if registry[n].order == 3]
    S = registry[table1_name(host)]
    out = []
    for s in alg.closed_subsets(S, 3):
        A = alg.subalgebra(S, s)
        names = [n for n, B in named if alg.is_isomorphic(A, B)]
        out.append((s, A, names))
    return out


def _nonfinite_claims(registry):
    subs = {k: _three_element_subalgebras(registry, k) for k in NONFINITELY_BASED}
    shared = []
    for s, A, names in subs[SHARED_SUBALGEBRA_HOSTS[0]]:
        if all(any(alg.is_isomorphic(A, B) for _, B, _ in subs[k]) for k in SHARED_SUBALGEBRA_HOSTS):
            shared.append((s, A, names))
    out = []
    for k in NONFINITELY_BASED:
        parts = []
        for s, _, names in subs[k]:
            label = "{" + ",".join(str(a + 1) for a in s) + "}"
            parts.append(f"{label}~{names[0]}" if names else f"{label} unnamed")
        out.append(
            _skip(
                f"thm-{k}-nonfinitely-based",
                "reductions",
                f"S_(4,{k}) is nonfinitely based",
                "not decidable here; three-element subalgebras: " + ", ".join(parts),
            )
        )
    desc = ", ".join(
        "mul " + str((A.mul + 1).tolist()) + (f" ~ {names[0]}" if names else "") for _, A, names in shared
    )
    out.append(
        _skip(
            "thm-shared-subalgebra",
            "reductions",
            "S_(4,293), 304, 326 and 335 share a three-element subalgebra",
            f"S_7 is not available; classes shared by all four: {desc or 'none'}",
        )
    )
    return out


def _reduction_claims(registry: Registry, opts: SuiteOptions) -> list[ClaimRecord]:
    return [_cube_claim(registry), _two_element_claim(registry, opts), *_nonfinite_claims(registry)]


# ---------------------------------------------------------------------------
# driver


def _tasks(opts: SuiteOptions) -> list[tuple[str, str]]:
    out = []
    for g in GROUPS:
        if not opts.selected(g):
            continue
        if g == "oracles":
            out += [("oracles", n) for n in ORACLE_ORDER] + [("oracles", "parity")]
        else:
            out.append((g, ""))
    return out


_GROUP_RUNNERS = {
    "catalog": _catalog_claims,
    "enumeration": _enumeration_claims,
    "bases": _bases_claims,
    "structure": _structure_claims,
    "derivation": _derivation_claims,
    "reductions": _reduction_claims,
}


def _run_task(task, registry, opts) -> list[ClaimRecord]:
    group, arg = task
    if group != "oracles":
        return _GROUP_RUNNERS[group](registry, opts)
    if arg == "parity":
        return [gf2_claim(registry, opts)]
    return [oracle_claim(registry, arg, opts)]


def verify_paper_suite(registry: Registry, options: SuiteOptions | None = None) -> SuiteReport:
    """Run every selected claim group; raise SuiteAbort on an invalid registry."""
    opts = options or SuiteOptions()
    say = opts.log or (lambda s: None)
    start = time.perf_counter()
    check = validation_claim(registry)
    if check.status == FAIL:
        report = SuiteReport([check], opts.seed, aborted=f"catalog validation failed: {check.witness}")
        raise SuiteAbort(report)
    tasks = _tasks(opts)
    results: list[list[ClaimRecord]] = [[] for _ in tasks]
    if opts.jobs > 1 and len(tasks) > 1:
        quiet = replace(opts, log=None)  # callables do not pickle
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            futures = [pool.submit(_run_task, t, registry, quiet) for t in tasks]
            for i, f in enumerate(futures):
                results[i] = f.result()
                for c in results[i]:
                    say(f"{c.status:<18} {c.id}")
    else:
        for i, t in enumerate(tasks):
            results[i] = _run_task(t, registry, opts)
            for c in results[i]:
                say(f"{c.status:<18} {c.id}")
    claims = [c for r in results for c in r]
    return SuiteReport(claims, opts.seed, seconds=time.perf_counter() - start)
