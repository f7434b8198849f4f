"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run standalone with ``python3 tests/test_acceptance.py``. The order-4 count
runs only with AISEMIRING_STRETCH=1.
"""

import os
import sys
import time
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from aisemiring import algebra as alg  # noqa: E402
from aisemiring.bases import BASIS_HOSTS, basis  # noqa: E402
from aisemiring.catalog import builtin_registry, full_registry, table1_name  # noqa: E402
from aisemiring.derivation import builtin_proof_corpus, check_chain  # noqa: E402
from aisemiring.enumeration import (  # noqa: E402
    count_order,
    enumerate_ai_semirings,
    enumerate_semilattices,
    figure1_classes,
    match_catalog,
)
from aisemiring.satisfaction import satisfies  # noqa: E402
from aisemiring.suite import SuiteOptions, verify_paper_suite  # noqa: E402
from aisemiring.sweeps import run_oracle_programme  # noqa: E402

STRETCH = os.environ.get("AISEMIRING_STRETCH") == "1"


@lru_cache(maxsize=None)
def registry():
    return full_registry()


@lru_cache(maxsize=None)
def programme():
    return run_oracle_programme(registry())


def criterion_1():
    start = time.perf_counter()
    entries = builtin_registry().table1()
    bad = [e.name for e in entries if not alg.validate_axioms(e.algebra.add, e.algebra.mul).ok]
    dt = time.perf_counter() - start
    ok = len(entries) == 112 and not bad and dt < 1.0
    return ok, f"{len(entries) - len(bad)}/{len(entries)} tables valid in {dt:.2f} s"


def criterion_2():
    start = time.perf_counter()
    two = sum(len(enumerate_ai_semirings(s.add)) for s in enumerate_semilattices(2))
    three = sum(len(enumerate_ai_semirings(s.add)) for s in enumerate_semilattices(3))
    classes = figure1_classes()
    report = match_catalog(classes, registry())
    dt = time.perf_counter() - start
    ok = (two, three, len(classes)) == (6, 61, 112) and report.bijective and dt < 30
    return ok, f"order 2: {two}, order 3: {three}, catalog order: {len(classes)} ({report.summary()}) in {dt:.1f} s"


def criterion_3():
    start = time.perf_counter()
    total = count_order(4)
    dt = time.perf_counter() - start
    return total == 866 and dt < 600, f"order 4: {total} classes in {dt:.1f} s"


def criterion_4():
    start = time.perf_counter()
    failures = []
    for host in BASIS_HOSTS:
        S = registry()[table1_name(host)]
        for entry in basis(host):
            for ident in entry.instances():
                v = satisfies(S, ident)
                if not v.holds:
                    failures.append(f"{entry.tag}: {v.describe()}")
    dt = time.perf_counter() - start
    ok = len(BASIS_HOSTS) == 16 and not failures and dt < 5.0
    return ok, f"{len(BASIS_HOSTS)} bases, {len(failures)} failing members, {dt:.2f} s" + (
        f"; first: {failures[0]}" if failures else ""
    )


def criterion_5():
    rep = programme()
    exact = {r.oracle: r for r in rep.exact if r.family.startswith("exhaustive")}
    parts = [f"{n}: {r.mismatches} mismatches over {r.checked:,} pairs" for n, r in exact.items()]
    parts.append(f"GF(2) vs multisets: {rep.reduction.mismatches} mismatches over {rep.reduction.instances} instances")
    ok = set(exact) == {"S2", "S4", "S10"} and all(r.ok for r in rep.exact) and rep.reduction.ok
    return ok, "; ".join(parts)


def criterion_6():
    rep = programme()
    results = rep.necessity + rep.hosted
    covered = {(r.oracle.split("[")[0], r.algebra) for r in results}
    wanted = {(n, f"S_{n[1:]}") for n in ("S56", "S57", "S59", "S60")} | {
        ("S53", "S_(4,357)"),
        ("S44", "S_(4,379)"),
        ("S46", "S_(4,380)"),
        ("S47", "S_(4,385)"),
    }
    violations = sum(r.mismatches for r in results)
    ok = wanted <= covered and all(r.ok for r in results)
    detail = f"{violations} violations over {len(wanted)} algebras"
    if rep.reading is not None:
        detail += f"; {rep.reading.summary()}"
    return ok, detail


def criterion_7():
    report = verify_paper_suite(registry(), SuiteOptions(only=("structure",)))
    k = report.counts
    bad = [c.id for c in report.claims if c.status == "fail"]
    return report.ok and k["pass"] > 0, f"{k['pass']} structural claims pass" + (f"; failing: {bad}" if bad else "")


def criterion_8():
    corpus = builtin_proof_corpus()
    reports = [check_chain(c, registry()) for c in corpus]
    bad = [r.summary() for r in reports if not r.ok]
    return len(corpus) >= 6 and not bad, f"{len(corpus) - len(bad)}/{len(corpus)} chains pass with model-valid claims" + (
        f"; {bad[0]}" if bad else ""
    )


def criterion_9():
    import test_derivation
    import test_enumeration
    import test_satisfaction

    checks = {
        "eval homomorphism": test_satisfaction.test_eval_is_a_homomorphism,
        "decomposition equivalence": test_satisfaction.test_decomposition_is_equivalent,
        "dual-reversal symmetry": test_satisfaction.test_dual_reverses_identities,
        "AI normal form": test_derivation.test_ai_normal_form_ignores_order_and_duplicates,
        "dedup idempotence": lambda: test_enumeration.test_enumeration_is_deterministic(figure1_classes()),
    }
    failed = []
    for name, fn in checks.items():
        try:
            fn()
        except AssertionError as exc:
            failed.append(f"{name}: {str(exc).splitlines()[0] if str(exc) else 'assertion failed'}")
    return not failed, f"{len(checks) - len(failed)}/{len(checks)} property suites hold" + (
        f"; {failed}" if failed else ""
    )


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def line(n, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


def _check(n, capsys):
    ok, detail = CRITERIA[n]()
    with capsys.disabled():
        print("\n" + line(n, ok, detail))
    assert ok, detail


@pytest.mark.parametrize("n", [1, 2, 4, 7, 8, 9])
def test_criterion(n, capsys):
    _check(n, capsys)


@pytest.mark.stretch
def test_criterion_3(capsys):
    _check(3, capsys)


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_oracle_criterion(n, capsys):
    _check(n, capsys)


def main() -> int:
    failed = 0
    for n, fn in CRITERIA.items():
        if n == 3 and not STRETCH:
            print("SKIP criterion 3: set AISEMIRING_STRETCH=1 to count all order-4 algebras")
            continue
        ok, detail = fn()
        failed += not ok
        print(line(n, ok, detail), flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
