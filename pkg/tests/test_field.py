import pytest
from hypothesis import given, settings, strategies as st

from carlitz_mzv import make_field_context, least_irreducible
from carlitz_mzv.fq import is_prime

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 4), (3, 2), (7, 1)]


@pytest.mark.parametrize("p,m", FIELDS)
def test_modulus_irreducible_and_deterministic(p, m):
    mod = least_irreducible(p, m)
    assert len(mod) == m + 1 and mod[-1] == 1
    assert least_irreducible(p, m) == mod
    ctx = make_field_context(p, m)
    assert tuple(ctx.modulus) == tuple(mod)
    assert ctx.q == p**m


def test_rejects_composite_characteristic():
    assert not is_prime(6)
    with pytest.raises(ValueError):
        make_field_context(6, 1)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3), (5, 1)])
def test_field_axioms_exhaustive(p, m):
    ctx = make_field_context(p, m)
    es = list(ctx.elements())
    for a in es:
        assert ctx.add(a, ctx.zero) == a
        assert ctx.mul(a, ctx.one) == a
        assert ctx.add(a, ctx.neg(a)) == ctx.zero
        if a != ctx.zero:
            assert ctx.mul(a, ctx.inv(a)) == ctx.one
            assert ctx.pow(a, ctx.q - 1) == ctx.one
        # the field is exactly the fixed set of x -> x^q
        assert ctx.pow(a, ctx.q) == a
        assert ctx.frobenius(a, 1) == ctx.pow(a, ctx.p)
    for a in es:
        for b in es:
            assert ctx.mul(a, b) == ctx.mul(b, a)


@given(st.integers(-50, 50), st.integers(-50, 50))
@settings(max_examples=60, deadline=None)
def test_int_embed_is_a_ring_map(x, y):
    for p, m in [(3, 1), (2, 2), (5, 1)]:
        ctx = make_field_context(p, m)
        assert ctx.int_embed(x + y) == ctx.add(ctx.int_embed(x),
                                               ctx.int_embed(y))
        assert ctx.int_embed(x * y) == ctx.mul(ctx.int_embed(x),
                                               ctx.int_embed(y))


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2)])
def test_frobenius_is_additive_and_invertible(p, m):
    ctx = make_field_context(p, m)
    es = list(ctx.elements())
    for a in es:
        assert ctx.frobenius(ctx.frobenius(a, 1), -1) == a
        for b in es:
            assert ctx.frobenius(ctx.add(a, b), 1) == ctx.add(
                ctx.frobenius(a, 1), ctx.frobenius(b, 1))
