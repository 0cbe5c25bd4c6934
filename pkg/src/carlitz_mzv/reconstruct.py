"""Rational reconstruction: recover f/g in F_q(t) from a truncated series.

A series with exponents in (q-1)Z lies in F_q((1/t)); extended-Euclidean
(Pade) approximation on its 1/t expansion recovers the unique rational
function within the degree bounds, when one exists.  Every candidate is
verified by re-expansion before being returned.
"""

from .errors import InsufficientPrecisionError
from .polys import PolyT, RatFunc
from .series import embed_ratfunc, series_eq

MARGIN = 8


def series_to_inv_t_coeffs(x):
    """The expansion x = sum a_n t^{-n}: returns (n0, [a_{n0}, a_{n0+1}, ...]).

    Requires x to lie in F_q((1/t)), i.e. integer lattice and all exponents
    multiples of q-1.  Raises ValueError otherwise.
    """
    x = x.reduce_lattice()
    if x.w != 0:
        raise ValueError("series does not lie on the integer exponent lattice")
    ctx = x.ctx
    q = ctx.q
    step = q - 1
    for e, c in x.terms():
        if e % step:
            raise ValueError("series exponents are not multiples of q-1; "
                             "not in F_q((1/t))")
    if x.is_zero():
        return 0, []
    v = x.valuation_scaled()
    n0 = -(-v // step)  # first n with n*step >= valuation
    n_top = x.prec // step  # coefficients a_n known exactly for n < n_top
    coeffs = []
    for n in range(n0, n_top):
        c = x.coeff_at(n * step)
        # t^{-n} = (-1)^n u^{n(q-1)}
        if n % 2:
            c = ctx.neg(c)
        coeffs.append(c)
    return n0, coeffs


def _poly_eea_pade(ctx, h, L, deg_num):
    """First remainder of degree <= deg_num in the extended Euclidean scheme
    on (v^L, h), with its cofactor: returns (P, Q) with P = s*v^L + Q*h."""
    r0, r1 = PolyT.monomial(ctx, L), h
    t0, t1 = PolyT.zero(ctx), PolyT.one(ctx)
    while r1.degree > deg_num if not r1.is_zero() else False:
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        t0, t1 = t1, t0 - quo * t1
    return r1, t1


def _reverse(poly, at_degree):
    """t^{at_degree} * poly(1/t) as a polynomial (coefficient reversal)."""
    ctx = poly.ctx
    co = ctx.vec_zeros(at_degree + 1)
    for k in range(poly.degree + 1):
        co[:, at_degree - k] = poly.coeff(k)
    return PolyT(ctx, co)


def rational_reconstruct(x, deg_bound_num=None, deg_bound_den=None):
    """The unique f/g in F_q(t) with deg f <= deg_bound_num,
    deg g <= deg_bound_den agreeing with x to its precision, or None.

    Default bounds split the half-precision budget evenly.  A returned value
    always re-expands to x (checked internally).
    """
    ctx = x.ctx
    q = ctx.q
    n0, coeffs = series_to_inv_t_coeffs(x)
    if not coeffs:
        return RatFunc.from_poly(PolyT.zero(ctx))
    L_avail = len(coeffs)
    budget = (L_avail - MARGIN) // 2
    if deg_bound_num is None and deg_bound_den is None:
        deg_bound_den = budget // 2
        deg_bound_num = budget - deg_bound_den
    dn, dd = deg_bound_num, deg_bound_den
    if dn < 0 or dd < 0:
        raise ValueError("degree bounds must be nonnegative")
    if dn + dd > budget:
        raise InsufficientPrecisionError(
            f"bounds ({dn},{dd}) need precision >= "
            f"{2 * (dn + dd) + MARGIN} inverse-t coefficients; "
            f"have {L_avail}")
    # x = v^{dd-dn} P(v)/Q(v) with P = rev_dn f, Q = rev_dd g; shift so the
    # target H = P/Q is a power series in v
    shift = n0 + dn - dd
    if shift < 0:
        return None  # polynomial part exceeds the numerator bound
    L = L_avail - (dd - dn if dd > dn else 0)
    if L <= dn + dd:
        raise InsufficientPrecisionError("window too small after shifting")
    h_co = ctx.vec_zeros(L)
    for i, c in enumerate(coeffs):
        k = i + shift
        if k < L:
            h_co[:, k] = c
    h = PolyT(ctx, h_co)
    P, Q = _poly_eea_pade(ctx, h, L, dn)
    if Q.is_zero() or P.degree > dn or Q.degree > dd:
        return None
    f = _reverse(P, dn)
    g = _reverse(Q, dd)
    if g.is_zero():
        return None
    candidate = RatFunc(f, g)
    # the actual guarantee: the candidate re-expands to x
    expansion = embed_ratfunc(candidate, x.prec)
    if not series_eq(expansion, x, prec=x.prec):
        return None
    return candidate
