import itertools

import pytest

from carlitz_mzv import (Composition, InsufficientPrecisionError,
                         LinearPreorder, TildeSeries, as_composition,
                         enumerate_preorders, jumps_to_preorder,
                         nondegenerate_preorder, series_eq, zeta, zeta_I,
                         zeta_direct, zeta_rho, zeta_totally_degenerate)
from carlitz_mzv.mzv import zeta_mixed
from conftest import shared_cache


def test_preorder_counts():
    # ordered set partitions: the Fubini numbers
    for r, expect in [(1, 1), (2, 3), (3, 13), (4, 75)]:
        assert len(enumerate_preorders(r)) == expect


def test_preorders_partition_degree_shapes():
    """Every weakly ordered degree tuple matches exactly one preorder."""
    for r in (1, 2, 3):
        pres = enumerate_preorders(r)
        for d in itertools.product(range(4), repeat=r):
            cnt = 0
            for rho in pres:
                ok = all(len({d[i - 1] for i in b}) == 1 for b in rho.blocks)
                if ok:
                    degs = [d[b[0] - 1] for b in rho.blocks]
                    if all(x < y for x, y in zip(degs, degs[1:])):
                        cnt += 1
            assert cnt == 1, (r, d)


def test_jump_sets_to_preorders():
    assert jumps_to_preorder({2}, 3).blocks == ((3,), (1, 2))
    assert jumps_to_preorder({1, 2}, 3).blocks == ((3,), (2,), (1,))
    assert jumps_to_preorder(set(), 3).blocks == ((1, 2, 3),)
    assert nondegenerate_preorder(3) == jumps_to_preorder({1, 2}, 3)


def test_preorder_parse_format_roundtrip():
    for text in ("1", "1,2", "3|1,2", "3|2|1"):
        rho = LinearPreorder.parse(text)
        assert rho.format() == text
        assert LinearPreorder.parse(rho.format()) == rho


def test_composition_basics():
    s = as_composition((2, 1))
    assert s.depth == 2 and s.weight == 3
    assert as_composition(s) is s
    with pytest.raises(ValueError):
        as_composition((0, 1))


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1)])
def test_zeta_matches_direct_summation(p, m):
    cc = shared_cache(p, m)
    N = 80
    for s in [(1,), (2,), (1, 1), (2, 1), (1, 2)]:
        a = zeta(cc, s, N)
        b = zeta_direct(cc, s, N, dmax=7)
        assert series_eq(a, b, prec=N), (cc.ctx.q, s)


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1)])
def test_preorder_values_refine_the_product(p, m):
    cc = shared_cache(p, m)
    ctx = cc.ctx
    N = 80
    for s in [(1, 2), (2, 2), (3, 1)]:
        prod = (zeta(cc, (s[0],), N) * zeta(cc, (s[1],), N)).truncate(N)
        tot = TildeSeries.zero(ctx, N)
        for rho in enumerate_preorders(2):
            tot = tot + zeta_rho(cc, s, rho, N)
        assert series_eq(prod, tot, prec=N), (ctx.q, s)


def test_depth3_preorder_refinement():
    cc = shared_cache(3, 1)
    ctx = cc.ctx
    N = 60
    s = (1, 2, 1)
    prod = TildeSeries.one(ctx, N)
    for si in s:
        prod = (prod * zeta(cc, (si,), N)).truncate(N)
    tot = TildeSeries.zero(ctx, N)
    for rho in enumerate_preorders(3):
        tot = tot + zeta_rho(cc, s, rho, N)
    assert series_eq(prod, tot, prec=N)


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1)])
def test_jump_set_values_sum_to_weak_value(p, m):
    cc = shared_cache(p, m)
    N = 80
    for s in [(1, 1), (2, 1)]:
        tot = TildeSeries.zero(cc.ctx, N)
        for I in [set(), {1}]:
            tot = tot + zeta_I(cc, s, I, N)
        assert series_eq(tot, zeta_mixed(cc, s, set(), N), prec=N)


def test_degenerate_specializations():
    cc = shared_cache(3, 1)
    N = 80
    # full jump set is the plain multizeta value
    assert series_eq(zeta_I(cc, (2, 1), {1}, N), zeta(cc, (2, 1), N), prec=N)
    # empty jump set at depth 2 is the single-block preorder value
    rho = jumps_to_preorder(set(), 2)
    assert series_eq(zeta_I(cc, (1, 1), set(), N),
                     zeta_rho(cc, (1, 1), rho, N), prec=N)
    assert series_eq(zeta_totally_degenerate(cc, (1, 1), N),
                     zeta_I(cc, (1, 1), set(), N), prec=N)


def test_restrict_and_shift():
    rho = LinearPreorder.parse("3|1,2")
    assert rho.restrict(range(1, 3)).blocks == ((1, 2),)
    assert rho.shift(2) == ((5,), (3, 4))
