import itertools
import os
import time

import numpy as np
import pytest

from aisemiring import algebra as alg
from aisemiring.catalog import CatalogEntry, Provenance
from aisemiring.enumeration import (
    all_tables_valid,
    automorphisms,
    canonical_keys,
    count_order,
    enumerate_ai_semirings,
    enumerate_semilattices,
    figure1_classes,
    join_endomorphisms,
    match_catalog,
)
from aisemiring import kernels


@pytest.fixture(scope="module")
def fig1():
    return figure1_classes()


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 5), (5, 15)])
def test_semilattice_counts(n, count):
    tables = enumerate_semilattices(n)
    assert len(tables) == count
    for s in tables:
        a = s.add
        assert np.array_equal(a, a.T)
        assert all(a[i, i] == i for i in range(n))
        assert all(a[a[i, j], k] == a[i, a[j, k]] for i, j, k in itertools.product(range(n), repeat=3))


def test_order_two_and_three_counts():
    two = [c for s in enumerate_semilattices(2) for c in enumerate_ai_semirings(s.add)]
    assert len(two) == 6
    assert sum(len(enumerate_ai_semirings(s.add)) for s in enumerate_semilattices(3)) == 61
    assert count_order(3) == 61


def test_order_two_classes_are_the_named_ones(registry):
    two = enumerate_ai_semirings(enumerate_semilattices(2)[0].add)
    named = [registry[n] for n in ("L_2", "R_2", "M_2", "D_2", "N_2", "T_2")]
    for S in named:
        assert sum(alg.is_isomorphic(S, c.representative) for c in two) == 1


def test_order_two_against_unpruned_brute_force():
    add = enumerate_semilattices(2)[0].add
    valid = []
    for flat in itertools.product(range(2), repeat=4):
        mul = np.array(flat, dtype=np.int64).reshape(2, 2)
        if alg.validate_axioms(add, mul).ok:
            valid.append(mul)
    found = kernels.ai_tables(add, join_endomorphisms(add)).astype(np.int64)
    assert sorted(t.tobytes() for t in found) == sorted(t.tobytes() for t in valid)
    classes = []
    for mul in valid:
        S = alg.FiniteAiSemiring("t", add, mul)
        if not any(alg.is_isomorphic(S, T) for T in classes):
            classes.append(S)
    assert len(classes) == 6


def test_figure1_count_and_bijection(fig1, registry):
    start = time.perf_counter()
    classes = figure1_classes()
    assert time.perf_counter() - start < 30
    assert len(classes) == 112
    assert all_tables_valid(classes)
    report = match_catalog(classes, registry)
    assert report.bijective, report.summary()
    assert len(report.matches) == 112
    assert report.isomorphisms["S_(4,277)"] == (1, 2, 3, 4)
    assert set(report.isomorphisms.values()) <= {(1, 2, 3, 4), (1, 2, 4, 3)}


def test_perturbed_entry_is_reported_as_duplicate(fig1, registry):
    e = registry.entry("S_(4,277)")
    mul = e.algebra.mul.copy()
    mul[3, 3] = 0
    assert np.array_equal(mul, registry["S_(4,276)"].mul)
    bad = registry.replace(CatalogEntry(e.name, alg.FiniteAiSemiring(e.name, e.algebra.add, mul), Provenance("table1")))
    report = match_catalog(fig1, bad)
    assert not report.bijective
    assert any(set(names) == {"S_(4,276)", "S_(4,277)"} for names in report.duplicates.values())
    assert len(report.unmatched_classes) == 1


def test_enumeration_is_deterministic(fig1):
    again = figure1_classes()
    assert [c.key for c in again] == [c.key for c in fig1]
    assert all(a.representative.same_tables(b.representative) for a, b in zip(again, fig1))


def test_orbit_sizes_sum_to_table_count(fig1):
    add = fig1[0].representative.add
    tables = kernels.ai_tables(add, join_endomorphisms(add))
    assert sum(c.orbit_size for c in fig1) == len(tables)


def test_dual_closure(fig1):
    add = fig1[0].representative.add
    keys = {c.key for c in fig1}
    duals = np.stack([c.representative.mul.T for c in fig1]).astype(np.int64)
    dual_keys, _ = canonical_keys(duals, automorphisms(add))
    assert set(dual_keys.tolist()) <= keys


def test_all_order_three_classes_valid():
    for s in enumerate_semilattices(3):
        assert all_tables_valid(enumerate_ai_semirings(s.add))


@pytest.mark.stretch
def test_order_four_total():
    start = time.perf_counter()
    assert count_order(4) == 866
    assert time.perf_counter() - start < 600
