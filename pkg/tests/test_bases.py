import time

import pytest

from aisemiring import algebra as alg
from aisemiring.bases import BASIS_HOSTS, DERIVED_RULES, all_bases, basis, rule, rule_tags
from aisemiring.catalog import table1_name
from aisemiring.satisfaction import satisfies
from aisemiring.suite import basis_claim


def test_sixteen_hosts():
    assert len(BASIS_HOSTS) == 16
    assert {277, 281, 357, 372, 375, 379, 385} <= set(BASIS_HOSTS)


@pytest.mark.parametrize("host", BASIS_HOSTS)
def test_basis_holds(registry, host):
    S = registry[table1_name(host)]
    for entry in basis(host):
        for ident in entry.instances():
            v = satisfies(S, ident)
            assert v.holds, f"{entry.tag}: {v.describe()}"


def test_all_bases_within_budget(registry):
    start = time.perf_counter()
    for host, entries in all_bases().items():
        S = registry[table1_name(host)]
        assert all(satisfies(S, i).holds for e in entries for i in e.instances())
    assert time.perf_counter() - start < 5.0


def test_basis_claims_pass(registry):
    for host in BASIS_HOSTS:
        assert basis_claim(registry, host).status == "pass"


def test_bases_do_not_hold_everywhere(registry):
    # 277's basis pins down commutativity, which 281 lacks
    S = registry["S_(4,281)"]
    assert not all(satisfies(S, i).holds for e in basis(277) for i in e.instances())
    assert not satisfies(alg.dual(registry["S_(4,357)"]), rule("357.1")).holds


def test_derived_rules_hold_in_their_hosts(registry):
    for tag, text in DERIVED_RULES.items():
        host = int(tag.split(".")[0])
        assert satisfies(registry[table1_name(host)], rule(tag)).holds


def test_rule_lookup_errors():
    with pytest.raises(KeyError, match="no basis recorded"):
        basis(276)
    with pytest.raises(KeyError, match="unknown rule tag"):
        rule("277.99")
    with pytest.raises(KeyError, match="optional variables"):
        rule("357.4")
    assert "357.1" in rule_tags() and "357.4" not in rule_tags()
