import pytest

from carlitz_mzv import (InsufficientPrecisionError, PolyT, RatFunc,
                         embed_ratfunc, make_field_context,
                         rational_reconstruct, zeta)
from conftest import shared_cache


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_roundtrip_with_explicit_bounds(p, m):
    ctx = make_field_context(p, m)
    f = RatFunc(PolyT.one(ctx), PolyT.from_int_coeffs(ctx, [1, 1]))
    x = embed_ratfunc(f, 120)
    assert rational_reconstruct(x, 0, 1) == f


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_roundtrip_with_automatic_bounds(p, m):
    ctx = make_field_context(p, m)
    g = RatFunc(PolyT.from_int_coeffs(ctx, [1, 2, 0, 1]),
                PolyT.from_int_coeffs(ctx, [3, 1, 1, 0, 1]))
    x = embed_ratfunc(g, 200)
    assert rational_reconstruct(x) == g


def test_result_reexpands_to_input():
    ctx = make_field_context(3, 1)
    g = RatFunc(PolyT.from_int_coeffs(ctx, [0, 1, 1]),
                PolyT.from_int_coeffs(ctx, [2, 0, 0, 1]))
    x = embed_ratfunc(g, 150)
    got = rational_reconstruct(x)
    y = embed_ratfunc(got, 150)
    assert (x - y).is_zero()


def test_raises_when_bounds_exceed_available_precision():
    ctx = make_field_context(3, 1)
    f = RatFunc(PolyT.one(ctx), PolyT.from_int_coeffs(ctx, [1, 1]))
    x = embed_ratfunc(f, 40)
    with pytest.raises(InsufficientPrecisionError):
        rational_reconstruct(x, 40, 40)


def test_rejects_non_rational_series():
    cc = shared_cache(3, 1)
    N = 260
    z22 = zeta(cc, (2, 2), N)
    ratio = (z22 * cc.pi_tilde_pow(-4, N)).truncate(N)
    assert rational_reconstruct(ratio) is None


def test_even_zeta_ratio_is_rational():
    cc = shared_cache(3, 1)
    N = 260
    z2 = zeta(cc, (2,), N)
    ratio = (z2 * cc.pi_tilde_pow(-2, N)).truncate(N)
    got = rational_reconstruct(ratio)
    assert got is not None
    assert (embed_ratfunc(got, N) - ratio).is_zero()
