import pytest

from carlitz_mzv import (SideConditionError, relation_in_span, series_eq,
                         verify_catalog, verify_shuffle_product,
                         verify_sum_shuffle, zeta)
from carlitz_mzv.mzv import jumps_to_preorder, nondegenerate_preorder
from carlitz_mzv.relations import (CATALOG_IDS, enumerate_atoms,
                                   enumerate_monomials, find_relations,
                                   fp_nullspace)
from carlitz_mzv.series import residual_valuation
from conftest import shared_cache


def test_sum_shuffle_holds():
    cc = shared_cache(3, 1)
    assert verify_sum_shuffle(cc, (2, 3), 80).holds
    assert verify_sum_shuffle(cc, (1, 2, 1), 60).holds


def test_shuffle_product_holds():
    cc = shared_cache(3, 1)
    rho1 = nondegenerate_preorder(1)
    inst = verify_shuffle_product(cc, (1,), rho1, (1, 1),
                                  nondegenerate_preorder(2), 60)
    assert inst.holds, inst
    inst = verify_shuffle_product(cc, (2,), rho1, (1, 1),
                                  jumps_to_preorder(set(), 2), 60)
    assert inst.holds, inst


def test_catalog_identities_q3():
    cc = shared_cache(3, 1)
    assert verify_catalog(cc, "p-power", {"s": (1, 2)}, 80).holds
    assert verify_catalog(cc, "even-rational", {"s": 2}, 150).holds
    assert verify_catalog(cc, "low-s-shuffle", {"s": (1, 2)}, 80).holds
    assert verify_catalog(cc, "salvage", {}, 100).holds
    assert verify_catalog(cc, "z-collapse", {"s": (2, 1)}, 80).holds
    assert verify_catalog(cc, "z-collapse", {"s": (1, 1, 1)}, 80).holds
    assert verify_catalog(cc, "degenerate-collapse",
                          {"s": (1, 2), "i": 1}, 80).holds


def test_catalog_side_conditions_raise():
    cc = shared_cache(3, 1)
    with pytest.raises(SideConditionError):
        verify_catalog(cc, "even-rational", {"s": 3}, 80)
    with pytest.raises(SideConditionError):
        verify_catalog(cc, "digit-cube", {"b": 1}, 80)
    with pytest.raises(SideConditionError):
        verify_catalog(cc, "low-s-shuffle", {"s": (2, 2)}, 80)


def test_digit_identities():
    cc16 = shared_cache(2, 4)
    assert verify_catalog(cc16, "digit-cube", {"b": 3, "dmax": 1}, 60).holds
    cc8 = shared_cache(2, 3)
    assert verify_catalog(cc8, "digit-cube", {"b": 1, "dmax": 1}, 60).holds
    cc5 = shared_cache(5, 1)
    assert verify_catalog(cc5, "digit-quartic",
                          {"b": 2, "k": 2, "dmax": 1}, 60).holds


def test_naive_shuffle_failure_has_certificate():
    cc = shared_cache(3, 1)
    ctx = cc.ctx
    N = 100
    z2 = zeta(cc, (2,), N)
    z22 = zeta(cc, (2, 2), N)
    z4 = zeta(cc, (4,), N)
    res = (z2 * z2).truncate(N) - z22.scale(ctx.int_embed(2)) - z4
    v, _ = residual_valuation(res)
    assert v is not None  # a concrete nonzero exponent witnesses the failure


def test_fp_nullspace_small():
    # over F_3: rows (1,1), (2,2) have nullspace spanned by (1,1)
    basis = fp_nullspace([[1, 1], [2, 2]], 3)
    assert len(basis) == 1
    v = basis[0]
    assert [(v[0] * 1 + v[1] * 2) % 3, (v[0] * 1 + v[1] * 2) % 3] == [0, 0]
    assert fp_nullspace([[1, 0], [0, 1]], 3) == []


def test_enumerations_are_deterministic():
    a1 = enumerate_atoms(3, 2)
    a2 = enumerate_atoms(3, 2)
    assert a1 == a2
    m1 = enumerate_monomials(4, 2)
    assert m1 == enumerate_monomials(4, 2)
    assert all(sum(sum(sum(b) for b in a[0]) for a in mono) == 4
               for mono in m1)


def test_find_relations_weight2_q2():
    cc = shared_cache(2, 1)
    rels = find_relations(cc, 2, 2, 60)
    assert rels  # zeta(2) = zeta(1)^2 lives here
    for r in rels:
        assert r.verified_at == 120


def test_find_relations_weight1_empty():
    cc = shared_cache(3, 1)
    assert find_relations(cc, 1, 2, 30) == []


def test_find_relations_weight4_q3_contains_even_zeta_relation():
    cc = shared_cache(3, 1)
    rels = find_relations(cc, 4, 2, 150)
    assert rels
    basis = enumerate_monomials(4, 2)
    target = [0] * len(basis)
    for k, mono in enumerate(basis):
        keys = sorted(a[0] for a in mono)
        if keys == [((2,),), ((2,),)]:
            target[k] = 1  # zeta(2)^2
        elif keys == [((4,),)]:
            target[k] = -1  # - zeta(4)
    assert sum(abs(t) for t in target) == 2
    assert relation_in_span(rels, target, 3)
