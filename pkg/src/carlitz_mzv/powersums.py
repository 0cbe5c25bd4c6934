"""Power sums S_d(s) over monic polynomials of fixed degree.

Three independent routes:
  * brute       -- enumerate the q^d monics of degree d and sum 1/a^s;
  * formula     -- the closed forms 1/ell_d^{k p^n} and the digit-condition
                   expression for s = aq + b, 0 < a, b < q;
  * interp      -- the interpolation identity for H_{s-1}, with the d-fold
                   twist resolved exactly through the functional equation of
                   Omega, giving S_d(s) = H_{s-1}^{(d)}(t) / (Gamma_s ell_d^s)
                   as an exact rational function;
plus delayed interpolation (fractional exponent lattice) and multiple power
sums for tuples.
"""

import itertools

from .errors import BudgetExceededError, LatticeCapError
from .polys import PolyT, RatFunc
from .series import TSeries, TildeSeries, embed_poly, embed_ratfunc

DEFAULT_BRUTE_BUDGET = 10**7


def lucas_binomial(n, k, p):
    """C(n, k) mod p via Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        ni, n = n % p, n // p
        ki, k = k % p, k // p
        if ki > ni:
            return 0
        num = den = 1
        for i in range(ki):
            num = (num * (ni - i)) % p
            den = (den * (i + 1)) % p
        result = (result * num * pow(den, p - 2, p)) % p
    return result


def power_sum_brute(cache, d, s, N, budget=DEFAULT_BRUTE_BUDGET):
    """Sum of 1/a^s over the q^d monic a of degree d, mod u^N.

    Enumeration is a base-q counter on the d lower coefficients, constant
    coefficient fastest, for reproducible partial sums.
    """
    ctx = cache.ctx
    if ctx.q**d > budget:
        raise BudgetExceededError(f"q^d = {ctx.q**d} exceeds budget {budget}")
    elements = list(ctx.elements())
    acc = TildeSeries.zero(ctx, N)
    for lower in itertools.product(elements, repeat=d):
        # lower is (c_{d-1}, ..., c_1, c_0); constant coefficient varies fastest
        a = PolyT.from_coeffs(ctx, list(reversed(lower)) + [ctx.one])
        acc = acc + embed_ratfunc(RatFunc(PolyT.one(ctx), a**s, reduce=False), N)
    return acc


def power_sum_formula(cache, d, s):
    """Exact rational closed form, or None when no stated form applies.

    Applies for s = k p^n with 0 < k < q (giving 1/ell_d^s) and for
    s = aq + b with 0 < a, b < q (the digit-condition expression with
    binomials reduced mod p).
    """
    ctx = cache.ctx
    q, p = ctx.q, ctx.p
    # shape s = k p^n with 0 < k < q
    k = s
    while k % p == 0:
        k //= p
    if 0 < k < q:
        return RatFunc(PolyT.one(ctx), cache.ell(d) ** s, reduce=False)
    a, b = divmod(s, q)
    if 0 < a < q and 0 < b < q:
        if d == 0:
            return RatFunc.from_poly(PolyT.one(ctx))
        # assemble the correction factor over the common denominator [1]^a
        # without gcd reduction (the operands reach large degrees)
        br_d = cache.bracket(d)
        br_1 = cache.bracket(1)
        acc = br_1 ** a
        for j in range(1, a + 1):
            c = lucas_binomial(b + j - 1, j, p)
            if c == 0:
                continue
            if j % 2 == 1:
                c = p - c
            term = ((br_d ** (j * q)) * (br_1 ** (a - j))).scale(
                ctx.int_embed(c))
            acc = acc + term
        return RatFunc(acc, (cache.ell(d) ** s) * (br_1 ** a), reduce=False)
    return None


def power_sum_rational(cache, d, s):
    """S_d(s) as an exact rational function via interpolation:
    H_{s-1}^{(d)}(t) / (Gamma_s ell_d^s)."""
    ctx = cache.ctx
    q = ctx.q
    H = cache.H(s - 1)
    num = PolyT.zero(ctx)
    for j, h in enumerate(H):
        num = num + h.dilate(q**d).shift(j)
    den = cache.gamma(s) * (cache.ell(d) ** s)
    return RatFunc(num, den)


def power_sum_interp(cache, d, s, N):
    """Interpolation-route S_d(s) mod u^N."""
    return embed_ratfunc(power_sum_rational(cache, d, s), N)


def power_sum_interp_series(cache, d, s, N):
    """The interpolation identity evaluated literally as a truncated series:
    pi~^s (H_{s-1} Omega^s)^{(d)}|_{T=t} / Gamma_s.  Exponential in d; used
    as a cross-check for small d."""
    ctx = cache.ctx
    q = ctx.q
    # twisted coefficient exponents scale by q^d; evaluate at precision N
    P = N + 4
    om, M = cache.omega_for_eval(P, extra_order=2 + cache.h_deg_T(s - 1))
    F = om.pow(s, order=M)
    F = F.mul(cache.h_tseries(s - 1, F.coeffs[0].prec, order=1), order=M)
    Ftw = F.twist(d, prec_cap=max(P + M * (q - 1) + 1, P))
    ev = Ftw.eval_at_t(P)
    gam = embed_poly(cache.gamma(s), P)
    val = cache.pi_tilde_pow(s, P + 2 * q * s + 4) * ev * gam.inv()
    return val.truncate(N)


def power_sum_valuation_bound(cache, s, d):
    """Provable lower bound on val_u S_d(s), from the interpolation form.

    bound = (q-1) [ deg Gamma_s + s (q + ... + q^d) - q^d deg_t H_{s-1}
                    - deg_T H_{s-1} ].
    Increasing in d as soon as s q/(q-1) > deg_t H_{s-1} (checked by callers
    that rely on monotonicity for tail cutoffs).
    """
    q = cache.ctx.q
    if d == 0:
        return 0
    dt = cache.h_deg_t(s - 1)
    dT = cache.h_deg_T(s - 1)
    geom = q * (q**d - 1) // (q - 1)
    return (q - 1) * (cache.gamma_deg(s) + s * geom - q**d * dt - dT)


def bound_is_increasing(cache, s):
    """Whether the valuation bound for S_d(s) grows with d."""
    q = cache.ctx.q
    return s * q > (q - 1) * cache.h_deg_t(s - 1)


def power_sum_delayed(cache, d, s, w, N, max_w=None):
    """Delayed interpolation of S_d(s): evaluates

      pi~^s (H_{s-1}^{(-w)} [(T-t)^{(0)} ... (T-t)^{(-w+1)}]^s Omega^s)^{(d+w)}
        |_{T=t} / Gamma_s

    on the (1/q^w)-exponent lattice."""
    if w < 1:
        raise ValueError("delay w must be >= 1")
    ctx = cache.ctx
    q = ctx.q
    if max_w is None:
        max_w = cache.lattice_cap
    if w > max_w:
        raise LatticeCapError(f"delay {w} exceeds lattice cap {max_w}")
    P = N + 4
    # Omega^s coefficient valuations grow like q^{k/s}, so the T-order must
    # scale with s (plus room for the H and (T-t)-block factors)
    om, M = cache.omega_for_eval(
        P, extra_order=2 + cache.h_deg_T(s - 1) + s * w
        + (s - 1) * cache.omega_order_for(P))
    prec0 = om.coeffs[0].prec
    F = om.pow(s, order=M)
    # embed H at q^w-fold precision so the negative twist keeps prec0
    Hs = cache.h_tseries(s - 1, prec0 * q**w, order=1).twist(-w, max_w=max_w)
    scaled_prec = prec0 * q**w
    B = TSeries.one(ctx, 1, scaled_prec, w=w)
    for j in range(w):
        # (T - t)^{(-j)} = T - t^{1/q^j}; t^{1/q^j} = -u^{-(q-1)/q^j}
        e = -(q - 1) * q ** (w - j)
        mt = TildeSeries.monomial(ctx, e, scaled_prec, w=w, c=ctx.one)
        factor = TSeries.from_tilde_coeffs(
            [mt, TildeSeries.one(ctx, scaled_prec, w=w)])
        B = B * factor
    F = F.mul(B.pow(s), order=M).mul(Hs, order=M)
    cap = (P + M * (q - 1) + 1) * q**w
    ev = F.twist(d + w, prec_cap=cap).eval_at_t(P * q**w)
    ev = ev.reduce_lattice()
    gam = embed_poly(cache.gamma(s), P)
    val = cache.pi_tilde_pow(s, P + 2 * q * s + 4) * ev * gam.inv()
    return val.truncate(N)


def power_sum_auto(cache, d, s, N, brute_threshold=4):
    """Method auto-selection: formula if applicable, else interpolation for
    large d, else either (interp is exact and cheap, so it is the default)."""
    rf = power_sum_formula(cache, d, s)
    if rf is not None:
        return embed_ratfunc(rf, N)
    return power_sum_interp(cache, d, s, N)


def multi_power_sum(cache, dvec, svec, N):
    """S_d(s) for tuples: the product of the per-index power sums."""
    if len(dvec) != len(svec) or not dvec:
        raise ValueError("dvec and svec must have equal positive length")
    acc = TildeSeries.one(cache.ctx, N)
    for d, s in zip(dvec, svec):
        acc = acc * power_sum_auto(cache, d, s, N)
    return acc.truncate(N)
