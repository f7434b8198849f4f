import json
import time

import numpy as np
import pytest

from aisemiring import algebra as alg
from aisemiring.catalog import (
    SUBALGEBRA_ANCHORS,
    CatalogEntry,
    CatalogParseError,
    CatalogValidationError,
    Provenance,
    builtin_registry,
    derive_named_relatives,
    entry_to_json,
    figure1_addition,
    full_registry,
    load_catalog,
    parse_catalog,
    rederive,
    save_catalog,
    table1_name,
)


def test_112_entries_valid_quickly():
    start = time.perf_counter()
    reg = builtin_registry()
    entries = reg.table1()
    assert len(entries) == 112
    assert [e.name for e in entries] == [table1_name(k) for k in range(276, 388)]
    assert all(alg.validate_axioms(e.algebra.add, e.algebra.mul).ok for e in entries)
    assert time.perf_counter() - start < 1.0


def test_277_multiplication(registry):
    mul = registry["S_(4,277)"].mul + 1
    expected = np.ones((4, 4), dtype=int)
    expected[3, 3] = 3
    assert np.array_equal(mul, expected)


def test_figure1_addition():
    add = figure1_addition() + 1
    assert add[2, 3] == 1  # 3 + 4 = 1
    assert add[0, 1] == 2  # 1 + 2 = 2
    assert all(add[i, i] == i + 1 for i in range(4))
    for x in (1, 3, 4):
        assert add[x - 1, 1] == 2
        assert add[x - 1, 0] == 1


def test_two_element_anchors(registry):
    assert alg.subalgebra(registry["S_(4,366)"], (0, 1)).same_tables(registry["T_2"])
    assert alg.is_isomorphic(alg.subalgebra(registry["S_(4,277)"], (0, 1)), registry["N_2"])
    assert alg.is_isomorphic(alg.subalgebra(registry["S_(4,380)"], (1, 2)), registry["D_2"])


def test_table1_pairwise_non_isomorphic(registry):
    entries = registry.table1()
    # the only nontrivial additive automorphism swaps 3 and 4
    swap = (0, 1, 3, 2)
    seen = set()
    for e in entries:
        S = e.algebra
        p = np.array(swap)
        image = p[S.mul[np.ix_(p, p)]]
        key = min(S.mul.tobytes(), image.tobytes())
        assert key not in seen
        seen.add(key)


def test_derived_subalgebras(registry):
    for name, (host, subset) in SUBALGEBRA_ANCHORS.items():
        e = registry.entry(name)
        assert e.provenance.kind == "derived-subalgebra"
        expected = alg.subalgebra(registry[table1_name(host)], tuple(a - 1 for a in subset))
        assert e.algebra.same_tables(expected)


def test_derived_entries_rederive(registry):
    derived = [e for e in registry.entries() if e.provenance.kind.startswith("derived")]
    assert {"S_2", "S_4", "S_10", "S_57", "S_59"} <= {e.name for e in derived}
    for e in derived:
        assert rederive(registry, e).same_tables(e.algebra)


def test_s10_quotient_of_285(registry):
    e = registry.entry("S_10")
    assert e.provenance.kind == "derived-quotient"
    assert e.provenance.host == "S_(4,285)"
    assert e.algebra.order == 3


def test_unresolved_names_are_not_fabricated(registry):
    assert "S_7" not in registry
    with pytest.raises(KeyError, match="unresolved"):
        registry["S_7"]


def test_round_trip(tmp_path, registry):
    path = tmp_path / "catalog.json"
    save_catalog(registry, path)
    loaded = load_catalog(path)
    assert loaded == registry


def test_builtin_round_trip(tmp_path):
    reg = builtin_registry()
    path = tmp_path / "catalog.json"
    save_catalog(reg, path)
    assert load_catalog(path) == reg


def _catalog_text(registry, mutate=None):
    data = [entry_to_json(e) for e in registry.table1()]
    if mutate:
        mutate(data)
    return json.dumps(data)


def test_load_rejects_perturbed_entry(registry):
    def perturb(data):
        data[1]["mul"][3][3] = 2  # S_(4,277)

    with pytest.raises(CatalogValidationError, match=r"S_\(4,277\).*distributivity"):
        parse_catalog(_catalog_text(registry, perturb))


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "empty"),
        ("   \n", "empty"),
        ("[", "line 1"),
        ("{}", "nonempty list"),
        ('[{"name": "A", "order": 1, "add": [[1]]}]', "'mul'"),
        ('[{"name": "A", "order": 2, "add": [[1]], "mul": [[1]]}]', "2x2"),
        ('[{"name": "A", "order": 1, "add": [[1]], "mul": [[1]], "provenance": "magic"}]', "provenance"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(CatalogParseError, match=message):
        parse_catalog(text)


def test_provenance_round_trip(registry):
    for e in registry.entries():
        assert str(Provenance.parse(str(e.provenance))) == str(e.provenance)


def test_derivation_is_idempotent_on_full_registry():
    reg = full_registry()
    assert len(reg) == 138
    again = derive_named_relatives(builtin_registry())
    assert again == reg


def test_replace_keeps_order(registry):
    e = registry.entry("S_(4,277)")
    swapped = registry.replace(CatalogEntry(e.name, e.algebra, Provenance("definitional")))
    assert list(swapped) == list(registry)
