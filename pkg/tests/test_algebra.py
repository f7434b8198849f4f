import itertools

import numpy as np
import pytest

from aisemiring import algebra as alg
from aisemiring.algebra import FiniteAiSemiring, NotClosedError, TableError


def perturbed_277(registry, value):
    S = registry["S_(4,277)"]
    mul = S.mul.copy()
    mul[3, 3] = value - 1
    return S.add, mul


def test_table1_entry_validates(registry):
    S = registry["S_(4,277)"]
    assert alg.validate_axioms(S.add, S.mul).ok


def test_one_element_algebra_validates():
    assert alg.validate_axioms([[0]], [[0]]).ok


def test_perturbed_entry_fails_distributivity(registry):
    add, mul = perturbed_277(registry, 2)
    report = alg.validate_axioms(add, mul)
    assert not report.ok
    assert "distributivity" in report.axiom
    # the first witness in scan order is (4,1,4); (4,3,4) is another one
    assert report.witness == (3, 0, 3)
    violations = set(alg.axiom_violations(np.asarray(add), np.asarray(mul)))
    assert ("left distributivity", (3, 2, 3)) in violations
    # 4(3+4) = 4*1 = 1 but 4*3 + 4*4 = 1 + 2 = 2
    assert mul[3, add[2, 3]] == 0
    assert add[mul[3, 2], mul[3, 3]] == 1


def test_mismatched_orders_rejected():
    with pytest.raises(TableError):
        alg.validate_axioms([[0]], [[0, 0], [0, 0]])


def test_homomorphisms_contain_identity(registry):
    N2 = registry["N_2"]
    assert any(h.map == (0, 1) for h in alg.all_homomorphisms(N2, N2))


def test_inclusion_of_n2_into_277(registry):
    S = registry["S_(4,277)"]
    sub = alg.subalgebra(S, (0, 1))
    assert alg.is_isomorphic(sub, registry["N_2"])
    incl = [h for h in alg.all_homomorphisms(sub, S) if h.map == (0, 1)]
    assert incl and incl[0].injective


def test_homomorphism_count_277_to_n2(registry):
    # frozen from exhaustive search over the 16 maps
    homs = alg.all_homomorphisms(registry["S_(4,277)"], registry["N_2"])
    assert len(homs) == 2
    assert all(alg.is_homomorphism(h.source, h.target, h.map) for h in homs)


def test_isomorphism_examples(registry):
    S = registry["S_(4,281)"]
    assert alg.find_isomorphism(S, S).map == (0, 1, 2, 3)
    iso = alg.find_isomorphism(registry["S_(4,279)"], alg.dual(S))
    assert iso.map == (0, 1, 2, 3)
    assert np.array_equal(registry["S_(4,279)"].mul, S.mul.T)
    assert alg.find_isomorphism(registry["N_2"], registry["T_2"]) is None


def test_subalgebra_examples(registry):
    assert alg.is_isomorphic(alg.subalgebra(registry["S_(4,277)"], (0, 2, 3)), registry["S_2"])
    assert alg.is_isomorphic(alg.subalgebra(registry["S_(4,380)"], (1, 2)), registry["D_2"])
    with pytest.raises(NotClosedError, match=r"2·2=1"):
        alg.subalgebra(registry["S_(4,277)"], (1,))


def test_congruences_of_trivial_algebra():
    one = FiniteAiSemiring("one", [[0]], [[0]])
    cons = alg.congruences(one)
    assert [t.blocks for t, _ in cons] == [((0,),)]


def test_congruences_285(registry):
    S = registry["S_(4,285)"]
    cons = alg.congruences(S)
    for theta, Q in cons:
        assert alg.validate_axioms(Q.add, Q.mul).ok
        assert alg.projection(S, theta).surjective
    found = [
        (t1, t2)
        for (t1, Q1), (t2, Q2) in itertools.product(cons, cons)
        if Q1.order == 2 and alg.is_isomorphic(Q1, registry["N_2"]) and Q2.order == 3 and t1.meet(t2).is_equality()
    ]
    assert found


def test_every_algebra_has_extreme_congruences(registry):
    for name in ("S_(4,277)", "S_(4,362)", "S_57", "N_2"):
        S = registry[name]
        sizes = {t.size for t, _ in alg.congruences(S)}
        assert 1 in sizes and S.order in sizes


def test_subdirect_examples(registry):
    S = registry["S_(4,281)"]
    assert alg.subdirect_witness(S, S, S) is not None
    for host, a, b in (("S_(4,372)", "S_2", "S_59"), ("S_(4,362)", "S_4", "S_57")):
        H = registry[host]
        pair = alg.subdirect_witness(H, registry[a], registry[b])
        assert pair is not None
        assert alg.separates_points(H, pair)


def test_dual_examples(registry):
    comm = registry["S_(4,277)"]
    assert alg.dual(comm).same_tables(comm)
    assert alg.dual(registry["S_(4,281)"]).same_tables(registry["S_(4,279)"])
    assert alg.is_isomorphic(alg.dual(registry["S_(4,357)"]), registry["S_(4,358)"])
    for e in registry.table1()[:20]:
        assert alg.dual(alg.dual(e.algebra)).same_tables(e.algebra)


def test_isomorphism_is_an_equivalence(registry):
    names = ["S_(4,279)", "S_(4,281)", "S_(4,290)", "S_(4,292)"]
    algs = [registry[n] for n in names] + [alg.dual(registry[n]) for n in names]
    for A, B in itertools.product(algs, algs):
        f = alg.find_isomorphism(A, B)
        if f is not None:
            inv = tuple(int(i) for i in np.argsort(f.map))
            assert alg.is_homomorphism(B, A, inv)
    for A, B, C in itertools.product(algs, repeat=3):
        if alg.is_isomorphic(A, B) and alg.is_isomorphic(B, C):
            assert alg.is_isomorphic(A, C)


def test_direct_product_is_ai_semiring(registry):
    P = alg.direct_product(registry["N_2"], registry["S_2"])
    assert P.order == 6
    assert alg.validate_axioms(P.add, P.mul).ok
