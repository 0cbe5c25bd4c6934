"""The special quantities of the Carlitz theory.

Bracket polynomials [n], products D_n and ell_n, the Carlitz gamma/factorial,
the entire function Omega, its reciprocal-at-t period, and the interpolation
polynomials H_s obtained from their generating series.
"""

import math

from .polys import PolyT
from .series import TSeries, TildeSeries, DEFAULT_LATTICE_CAP


def _multinomial_mod_p(parts, p):
    n = sum(parts)
    v = math.factorial(n)
    for a in parts:
        v //= math.factorial(a)
    return v % p


class CarlitzCache:
    """Per-field memo for the special polynomials and series.

    Immutable from the caller's point of view: all public methods return
    fresh or cached read-only values.
    """

    def __init__(self, ctx, lattice_cap=DEFAULT_LATTICE_CAP):
        self.ctx = ctx
        self.lattice_cap = lattice_cap
        self._bracket = {}
        self._D = {}
        self._ell = {}
        self._gamma = {}
        self._omega = {}
        self._pi = {}
        self._H = {}
        self.memo = {}  # scratch memos for downstream modules

    # -- special polynomials -------------------------------------------

    def bracket(self, n):
        """[n] = t^{q^n} - t."""
        if n < 1:
            raise ValueError("bracket requires n >= 1")
        if n not in self._bracket:
            ctx = self.ctx
            t = PolyT.variable(ctx)
            self._bracket[n] = PolyT.monomial(ctx, ctx.q**n) - t
        return self._bracket[n]

    def D(self, n):
        """D_n = prod_{i=0}^{n-1} (t^{q^n} - t^{q^i})."""
        if n < 0:
            raise ValueError("D requires n >= 0")
        if n not in self._D:
            ctx = self.ctx
            acc = PolyT.one(ctx)
            for i in range(n):
                acc = acc * (PolyT.monomial(ctx, ctx.q**n)
                             - PolyT.monomial(ctx, ctx.q**i))
            self._D[n] = acc
        return self._D[n]

    def ell(self, n):
        """ell_n = prod_{i=1}^{n} (t - t^{q^i})."""
        if n < 0:
            raise ValueError("ell requires n >= 0")
        if n not in self._ell:
            ctx = self.ctx
            acc = PolyT.one(ctx)
            for i in range(1, n + 1):
                acc = acc * (PolyT.variable(ctx) - PolyT.monomial(ctx, ctx.q**i))
            self._ell[n] = acc
        return self._ell[n]

    def L(self, n):
        """L_n = (-1)^n ell_n."""
        e = self.ell(n)
        return e if n % 2 == 0 else -e

    def special_poly(self, kind, n):
        if kind == "bracket":
            return self.bracket(n)
        if kind == "D":
            return self.D(n)
        if kind == "ell":
            return self.ell(n)
        if kind == "L":
            return self.L(n)
        raise ValueError(f"unknown special polynomial kind {kind!r}")

    def gamma(self, n):
        """Carlitz gamma: Gamma_n = prod_i D_i^{n_i} with n-1 = sum n_i q^i
        in standard base-q digits (0 <= n_i <= q-1)."""
        if n < 1:
            raise ValueError("carlitz_gamma requires n >= 1")
        if n not in self._gamma:
            ctx = self.ctx
            acc = PolyT.one(ctx)
            v = n - 1
            i = 0
            while v:
                v, digit = divmod(v, ctx.q)
                if digit:
                    acc = acc * (self.D(i) ** digit)
                i += 1
            self._gamma[n] = acc
        return self._gamma[n]

    def gamma_deg(self, n):
        return self.gamma(n).degree

    def gamma_series(self, n, N):
        """Gamma_n embedded in the series field, mod u^N."""
        from .series import embed_poly
        key = (n, N)
        memo = self.memo.setdefault("gamma_series", {})
        if key not in memo:
            memo[key] = embed_poly(self.gamma(n), N)
        return memo[key]

    # -- Omega and the period ------------------------------------------

    def omega(self, M, N):
        """Omega as a TSeries of order M with coefficients known mod u^N.

        The product over (1 - T/t^{q^i}) is cut once the factor differs from 1
        only at or above precision; coefficients are exact signed monomial sums.
        """
        key = (M, N)
        if key not in self._omega:
            ctx = self.ctx
            q = ctx.q
            P0 = N - q
            F = TSeries.one(ctx, M, P0)
            # t^{-q^i} = (-1)^{q^i} u^{(q-1) q^i}; the factor is 1 - T t^{-q^i}
            sign = ctx.minus_one if q % 2 == 1 else ctx.one
            c = ctx.neg(sign)
            i = 1
            while (q - 1) * q**i < P0:
                factor = TSeries.from_tilde_coeffs(
                    [TildeSeries.one(ctx, P0),
                     TildeSeries.monomial(ctx, (q - 1) * q**i, P0, c=c)])
                F = F.mul(factor, order=M)
                i += 1
            self._omega[key] = TSeries([co.shift_exp(q) for co in F.coeffs])
        return self._omega[key]

    def omega_order_for(self, N):
        """T-truncation adequate for evaluating Omega-derived series at T=t
        with target precision N (coefficient valuations grow like q^{k+1})."""
        q = self.ctx.q
        M = 1
        while q ** (M + 1) <= N:
            M += 1
        return M + 5

    def omega_for_eval(self, N, extra_order=0):
        M = self.omega_order_for(N) + extra_order
        q = self.ctx.q
        return self.omega(M, N + M * (q - 1) + q + 8), M

    def pi_tilde(self, N):
        """pi~ = 1/Omega(t), known mod u^N (valuation -q)."""
        if N not in self._pi:
            q = self.ctx.q
            om, _ = self.omega_for_eval(N + 2 * q + 2)
            self._pi[N] = om.eval_at_t(N + 2 * q + 2).inv().truncate(N)
        return self._pi[N]

    def pi_tilde_pow(self, s, N):
        """pi~^s (s may be negative), known mod u^N."""
        if s == 0:
            return TildeSeries.one(self.ctx, N)
        q = self.ctx.q
        a = abs(s)
        pt = self.pi_tilde(N + (a + 1) * q)
        if s < 0:
            pt = pt.inv()
        return (pt ** a).truncate(N)

    # -- power-sum interpolation polynomials ---------------------------

    def H(self, s):
        """H_s as a list of F_q[t] coefficients indexed by T-degree."""
        if s not in self._H:
            self._H[s] = self._compute_H(s)
        return self._H[s]

    def h_deg_T(self, s):
        return len(self.H(s)) - 1

    def h_deg_t(self, s):
        return max((h.degree for h in self.H(s)), default=0)

    def h_as_T_poly_of_t(self, s):
        """H_s as a polynomial in T over F_q with t specialised: transpose view
        {t_deg: PolyT in T} used by formatting."""
        ctx = self.ctx
        byt = {}
        for j, h in enumerate(self.H(s)):
            for k in range(h.degree + 1):
                c = h.coeff(k)
                if c != ctx.zero:
                    byt.setdefault(k, {})[j] = c
        out = {}
        for k, d in byt.items():
            co = ctx.vec_zeros(max(d) + 1)
            for j, c in d.items():
                co[:, j] = c
            out[k] = PolyT(ctx, co)
        return out

    def _gen_series_c(self, i):
        """c_i of the generating series as (bivariate numerator, denominator),
        the numerator a dict {t_degree: PolyT in T} and the denominator in
        F_q[T] only."""
        ctx = self.ctx
        q = ctx.q
        num = {0: PolyT.one(ctx)}
        den = PolyT.one(ctx)
        for j in range(1, i + 1):
            # factor (T^{q^i} - t^{q^j}) / (T^{q^i} - T^{q^{j-1}})
            fac = {0: PolyT.monomial(ctx, q**i),
                   q**j: PolyT.constant(ctx, ctx.minus_one)}
            num = _bivar_mul(ctx, num, fac)
            den = den * (PolyT.monomial(ctx, q**i)
                         - PolyT.monomial(ctx, q ** (j - 1)))
        return num, den

    def _compute_H(self, s):
        ctx = self.ctx
        q = ctx.q
        p = ctx.p
        # enumerate multiplicity vectors (a_0, a_1, ...) with sum a_i q^i = s
        imax = 0
        while q ** (imax + 1) <= max(s, 1):
            imax += 1
        solutions = []

        def rec(i, rem, acc):
            if i < 0:
                if rem == 0:
                    solutions.append(tuple(acc))
                return
            step = q**i
            for a in range(rem // step, -1, -1):
                rec(i - 1, rem - a * step, acc + [a])

        rec(imax, s, [])
        # sum of multinomial * prod_i c_i^{a_i} as a single fraction
        total_num = {}
        total_den = PolyT.one(ctx)
        cs = {}
        for sol in solutions:
            parts = tuple(reversed(sol))  # parts[i] = a_i
            coeff = _multinomial_mod_p(parts, p)
            if coeff == 0:
                continue
            term_num = {0: PolyT.constant(ctx, ctx.int_embed(coeff))}
            term_den = PolyT.one(ctx)
            for i, a in enumerate(parts):
                if a == 0 or i == 0:
                    continue
                if i not in cs:
                    cs[i] = self._gen_series_c(i)
                ni, di = cs[i]
                for _ in range(a):
                    term_num = _bivar_mul(ctx, term_num, ni)
                    term_den = term_den * di
            # total += term  (common denominator, light gcd reduction)
            total_num = _bivar_add(ctx,
                                   _bivar_scale_poly(ctx, total_num, term_den),
                                   _bivar_scale_poly(ctx, term_num, total_den))
            total_den = total_den * term_den
            total_num, total_den = _bivar_reduce(ctx, total_num, total_den)
        gamma_T = self.gamma(s + 1)  # variable read as T
        total_num = _bivar_scale_poly(ctx, total_num, gamma_T)
        # clear the denominator exactly; H_s must land in A[T]
        byt = {}
        max_T = 0
        for tdeg, polT in total_num.items():
            quo, rem = polT.divmod(total_den)
            if not rem.is_zero():
                raise ArithmeticError("denominator failed to clear in H_s")
            if not quo.is_zero():
                byt[tdeg] = quo
                max_T = max(max_T, quo.degree)
        # transpose into T-degree indexed F_q[t] coefficients
        out = []
        for j in range(max_T + 1):
            co = ctx.vec_zeros(max(byt) + 1 if byt else 1)
            for tdeg, quo in byt.items():
                co[:, tdeg] = quo.coeff(j)
            out.append(PolyT(ctx, co))
        while len(out) > 1 and out[-1].is_zero():
            out.pop()
        return out

    def h_family(self, s_max):
        """H_s for s = 0..s_max."""
        if s_max < 0:
            raise ValueError("s_max must be >= 0")
        return [self.H(s) for s in range(s_max + 1)]

    def h_tseries(self, s, prec, order=None, w=0):
        """H_s as a TSeries with embedded coefficients."""
        from .series import embed_poly
        coeffs = [embed_poly(h, prec, w=w) for h in self.H(s)]
        return TSeries.from_tilde_coeffs(coeffs, order=order, prec=prec,
                                         w=w, ctx=self.ctx)


def _bivar_mul(ctx, A, B):
    out = {}
    for da, pa in A.items():
        for db, pb in B.items():
            prod = pa * pb
            if prod.is_zero():
                continue
            k = da + db
            out[k] = out[k] + prod if k in out else prod
    return {k: v for k, v in out.items() if not v.is_zero()}


def _bivar_add(ctx, A, B):
    out = dict(A)
    for d, pb in B.items():
        out[d] = out[d] + pb if d in out else pb
    return {k: v for k, v in out.items() if not v.is_zero()}


def _bivar_scale_poly(ctx, A, poly):
    if poly.is_zero():
        return {}
    return {d: pa * poly for d, pa in A.items() if not (pa * poly).is_zero()}


def _bivar_reduce(ctx, num, den):
    g = den
    for pa in num.values():
        if g.degree == 0:
            break
        g = g.gcd(pa)
    if g.degree > 0:
        num = {d: pa.exact_div(g) for d, pa in num.items()}
        den = den.exact_div(g)
    return num, den
