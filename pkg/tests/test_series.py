import pytest
from hypothesis import given, settings, strategies as st

from carlitz_mzv import (InsufficientPrecisionError, PolyT, RatFunc,
                         TildeSeries, embed_poly, embed_ratfunc,
                         make_field_context, series_eq)

CTX3 = make_field_context(3, 1)
CTX4 = make_field_context(2, 2)


def rand_series(ctx, data, prec=40):
    terms = {}
    n = data.draw(st.integers(0, 6))
    for _ in range(n):
        e = data.draw(st.integers(-10, prec - 1))
        c = ctx.int_embed(data.draw(st.integers(0, ctx.p - 1)))
        terms[e] = c
    return TildeSeries.from_terms(ctx, terms, prec)


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_ring_axioms(data):
    ctx = CTX3
    a = rand_series(ctx, data)
    b = rand_series(ctx, data)
    c = rand_series(ctx, data)
    p = min(a.prec, b.prec, c.prec) - 25  # products lose precision at worst
    assert series_eq(a + b, b + a, prec=min(a.prec, b.prec))
    assert series_eq((a + b) + c, a + (b + c), prec=p + 25)
    assert series_eq(a * b, b * a, prec=p)
    assert series_eq((a * b) * c, a * (b * c), prec=p)
    assert series_eq(a * (b + c), a * b + a * c, prec=p)
    assert series_eq(a - a, TildeSeries.zero(ctx, a.prec), prec=a.prec)


@given(st.data())
@settings(max_examples=50, deadline=None)
def test_inverse_roundtrip(data):
    ctx = CTX3
    x = rand_series(ctx, data)
    if x.is_zero():
        return
    inv = x.inv()
    prod = x * inv
    assert series_eq(prod, TildeSeries.one(ctx, prod.prec), prec=prod.prec)


@given(st.data())
@settings(max_examples=50, deadline=None)
def test_twist_is_multiplicative(data):
    ctx = CTX4
    a = rand_series(ctx, data, prec=30)
    b = rand_series(ctx, data, prec=30)
    lhs = (a * b).twist(1)
    rhs = a.twist(1) * b.twist(1)
    assert series_eq(lhs, rhs, prec=min(lhs.prec, rhs.prec))


def test_twist_agrees_with_qth_power_on_embedded_polys():
    for p, m in [(3, 1), (2, 2)]:
        ctx = make_field_context(p, m)
        f = PolyT.from_int_coeffs(ctx, [1, 2 % p, 1, 1])
        x = embed_poly(f, 80)
        y = x ** ctx.q
        assert series_eq(x.twist(1), y, prec=min(30, y.prec))


def test_negative_twist_roundtrip():
    ctx = CTX3
    x = embed_poly(PolyT.from_int_coeffs(ctx, [2, 1, 1]), 54)
    back = x.twist(-1).twist(1)
    assert series_eq(back, x, prec=back.prec)


def test_embed_poly_exponent_lattice():
    ctx = CTX3
    q = ctx.q
    x = embed_poly(PolyT.from_int_coeffs(ctx, [0, 1]), 40)  # the element t
    assert x.valuation_scaled() == -(q - 1)
    assert all(e % (q - 1) == 0 for e, _ in x.terms())


def test_embed_ratfunc_matches_division():
    ctx = CTX3
    num = PolyT.from_int_coeffs(ctx, [1, 1])
    den = PolyT.from_int_coeffs(ctx, [2, 0, 1])
    x = embed_ratfunc(RatFunc(num, den), 80)
    y = embed_poly(num, 90) / embed_poly(den, 90)
    assert series_eq(x, y.truncate(80), prec=75)


def test_series_eq_raises_when_precision_insufficient():
    ctx = CTX3
    a = TildeSeries.one(ctx, 10)
    b = TildeSeries.one(ctx, 10)
    with pytest.raises(InsufficientPrecisionError):
        series_eq(a, b, prec=50)


def test_truncate_and_valuation():
    ctx = CTX3
    x = TildeSeries.monomial(ctx, 5, 30) + TildeSeries.monomial(ctx, 12, 30)
    assert x.valuation_scaled() == 5
    t = x.truncate(10)
    assert t.prec == 10 and t.valuation_scaled() == 5
    assert x.truncate(4).is_zero()
