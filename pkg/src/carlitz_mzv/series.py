"""Truncated Laurent series in u = 1/t~ over F_q, and power series in T.

A TildeSeries holds terms c_e * u^{e / q^w} for scaled exponents e in
[val, prec); w is the lattice-denominator exponent (exponents live in
(1/q^w) Z).  The embedding of K_infinity uses t = -t~^{q-1}, so an embedded
element of F_q((1/t)) has all scaled exponents divisible by (q-1) q^w.

A TSeries is a truncated power series in T whose coefficients are
TildeSeries; Frobenius twisting acts on coefficients only.
"""

from fractions import Fraction

import numpy as np

from .errors import (InsufficientPrecisionError, LatticeCapError,
                     NonconvergentEvaluationError)

DEFAULT_LATTICE_CAP = 4


class TildeSeries:
    __slots__ = ("ctx", "w", "val", "prec", "co")

    def __init__(self, ctx, w, val, prec, co):
        co = np.asarray(co, dtype=np.int64) % ctx.p
        width = prec - val
        if co.shape != (ctx.m, width):
            raise ValueError("coefficient array has wrong shape")
        # advance val past leading zero columns (storage normalization)
        k = 0
        while k < width and not co[:, k].any():
            k += 1
        self.ctx = ctx
        self.w = w
        self.val = val + k
        self.prec = prec
        self.co = np.ascontiguousarray(co[:, k:])

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ctx, prec, w=0):
        return cls(ctx, w, prec, prec, ctx.vec_zeros(0))

    @classmethod
    def one(cls, ctx, prec, w=0):
        return cls.monomial(ctx, 0, prec, w=w)

    @classmethod
    def monomial(cls, ctx, e, prec, w=0, c=None):
        if e >= prec:
            return cls.zero(ctx, prec, w)
        co = ctx.vec_zeros(prec - e)
        co[:, 0] = ctx.one if c is None else c
        return cls(ctx, w, e, prec, co)

    @classmethod
    def from_terms(cls, ctx, terms, prec, w=0):
        """terms: mapping scaled-exponent -> F_q element."""
        live = {e: c for e, c in terms.items() if e < prec and c != ctx.zero}
        if not live:
            return cls.zero(ctx, prec, w)
        val = min(live)
        co = ctx.vec_zeros(prec - val)
        for e, c in live.items():
            co[:, e - val] = c
        return cls(ctx, w, val, prec, co)

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        """Indistinguishable from 0 at the current precision."""
        return self.co.shape[1] == 0

    def valuation_scaled(self):
        return None if self.is_zero() else self.val

    def valuation(self):
        """u-valuation as a Fraction, or None if zero to precision."""
        v = self.valuation_scaled()
        return None if v is None else Fraction(v, self.ctx.q**self.w)

    def deg_at_infinity(self):
        """Degree in t: -val_u / (q-1)."""
        v = self.valuation()
        if v is None:
            raise InsufficientPrecisionError("degree of a series that is 0 to precision")
        return -v / (self.ctx.q - 1)

    def coeff_at(self, e, w=None):
        """Coefficient of u^{e/q^{w}} (defaults to this series' lattice)."""
        if w is not None and w != self.w:
            f = self.ctx.q ** abs(w - self.w)
            if w > self.w:
                e_self, rem = divmod(e, f)
                if rem:
                    return self.ctx.zero
                e = e_self
            else:
                e = e * f
        if self.val <= e < self.prec:
            return tuple(int(x) for x in self.co[:, e - self.val])
        if e >= self.prec:
            raise InsufficientPrecisionError(f"coefficient {e} beyond precision {self.prec}")
        return self.ctx.zero

    def terms(self):
        """Sorted list of (scaled exponent, element) with nonzero element."""
        out = []
        for k in range(self.co.shape[1]):
            c = self.co[:, k]
            if c.any():
                out.append((self.val + k, tuple(int(x) for x in c)))
        return out

    # -- lattice handling -------------------------------------------------

    def lift_to_w(self, new_w):
        if new_w == self.w:
            return self
        if new_w < self.w:
            raise ValueError("cannot coarsen the exponent lattice")
        f = self.ctx.q ** (new_w - self.w)
        width = self.co.shape[1]
        co = self.ctx.vec_zeros((self.prec - self.val) * f)
        if width:
            co[:, (np.arange(width)) * f] = self.co
        return TildeSeries(self.ctx, new_w, self.val * f, self.prec * f, co)

    @staticmethod
    def _unify(a, b):
        w = max(a.w, b.w)
        return a.lift_to_w(w), b.lift_to_w(w)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        a, b = TildeSeries._unify(self, other)
        prec = min(a.prec, b.prec)
        val = min(a.val, b.val, prec)
        co = a.ctx.vec_zeros(prec - val)
        for s in (a, b):
            lo = s.val - val
            n = min(s.co.shape[1], prec - s.val)
            if n > 0:
                co[:, lo:lo + n] += s.co[:, :n]
        return TildeSeries(a.ctx, a.w, val, prec, co)

    def __neg__(self):
        return TildeSeries(self.ctx, self.w, self.val, self.prec, -self.co)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if c == self.ctx.zero:
            return TildeSeries.zero(self.ctx, self.prec, self.w)
        return TildeSeries(self.ctx, self.w, self.val, self.prec,
                           self.ctx.vec_scale(self.co, c))

    def __mul__(self, other):
        a, b = TildeSeries._unify(self, other)
        ctx = a.ctx
        if a.is_zero() or b.is_zero():
            # 0 mod u^pa times series with valuation vb is 0 mod u^{pa+vb}
            va = a.prec if a.is_zero() else a.val
            vb = b.prec if b.is_zero() else b.val
            return TildeSeries.zero(ctx, min(a.prec + vb, b.prec + va), a.w)
        val = a.val + b.val
        prec = min(a.prec + b.val, b.prec + a.val)
        width = prec - val
        ca = a.co[:, :width]
        cb = b.co[:, :width]
        co = ctx.vec_mul_full(ca, cb)[:, :width]
        if co.shape[1] < width:
            co = np.hstack([co, ctx.vec_zeros(width - co.shape[1])])
        return TildeSeries(ctx, a.w, val, prec, co)

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        if e == 0:
            return TildeSeries.one(self.ctx, self.prec, self.w)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inv(self):
        """Series inverse via Newton iteration; needs a visible leading term."""
        ctx = self.ctx
        if self.is_zero():
            raise InsufficientPrecisionError(
                "insufficient precision: cannot invert a series that is 0 to precision")
        v = self.val
        W = self.prec - v
        g = self.co
        x = ctx.vec_zeros(1)
        x[:, 0] = ctx.inv(tuple(int(c) for c in g[:, 0]))
        cur = 1
        while cur < W:
            cur = min(2 * cur, W)
            t = ctx.vec_mul_full(g[:, :cur], x)[:, :cur]
            e = (-t) % ctx.p
            e[:, 0] = (e[:, 0] + ctx.one_arr()) % ctx.p
            corr = ctx.vec_mul_full(x, e)[:, :cur]
            nx = ctx.vec_zeros(cur)
            nx[:, :x.shape[1]] = x
            nx[:, :corr.shape[1]] += corr
            x = nx % ctx.p
        return TildeSeries(ctx, self.w, -v, self.prec - 2 * v, x)

    def __truediv__(self, other):
        return self * other.inv()

    # -- twisting ---------------------------------------------------------

    def twist(self, n, max_w=DEFAULT_LATTICE_CAP, prec_cap=None):
        """Frobenius twist: u-exponents scale by q^n, coefficients fixed."""
        ctx = self.ctx
        q = ctx.q
        if n == 0:
            return self.truncate(prec_cap) if prec_cap is not None else self
        if n > 0:
            f = q**n
            val2 = self.val * f
            prec2 = self.prec * f
            if prec_cap is not None:
                prec2 = min(prec2, prec_cap)
            width2 = max(prec2 - val2, 0)
            co = ctx.vec_zeros(width2)
            if width2:
                idx = np.arange(self.co.shape[1]) * f
                keep = idx < width2
                co[:, idx[keep]] = self.co[:, keep]
            if width2 == 0:
                val2 = prec2
            return TildeSeries(ctx, self.w, val2, prec2, co)
        a = -n
        f = q**a
        nz = [self.val + k for k in range(self.co.shape[1]) if self.co[:, k].any()]
        delta = None
        for d in range(a + 1):
            g = q ** (a - d)
            if all(e % g == 0 for e in nz):
                delta = d
                break
        if self.w + delta > max_w:
            raise LatticeCapError(
                f"negative twist needs lattice denominator exponent {self.w + delta} "
                f"> cap {max_w}")
        s = q**delta
        val2 = -((-self.val * s) // f)
        prec2 = -((-self.prec * s) // f)
        if prec_cap is not None:
            prec2 = min(prec2, prec_cap)
        width2 = max(prec2 - val2, 0)
        co = ctx.vec_zeros(width2)
        for e in nz:
            pos = (e * s) // f - val2
            if 0 <= pos < width2:
                co[:, pos] = self.co[:, e - self.val]
        if width2 == 0:
            val2 = prec2
        return TildeSeries(ctx, self.w + delta, val2, prec2, co)

    # -- misc -------------------------------------------------------------

    def shift_exp(self, e):
        """Exact multiplication by the monomial u^{e/q^w}."""
        return TildeSeries(self.ctx, self.w, self.val + e, self.prec + e, self.co)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        val = min(self.val, prec)
        return TildeSeries(self.ctx, self.w, val, prec, self.co[:, :prec - val])

    def in_integer_lattice(self):
        """True if all visible exponents are multiples of q^w (plain u-powers)."""
        f = self.ctx.q**self.w
        return all(e % f == 0 for e, _ in self.terms())

    def reduce_lattice(self):
        """Drop to the coarsest lattice containing all visible exponents."""
        s = self
        while s.w > 0:
            q = s.ctx.q
            if all(e % q == 0 for e, _ in s.terms()) and s.val % q == 0 and s.prec % q == 0:
                width = -(-(s.prec - s.val) // q)
                co = s.ctx.vec_zeros(width)
                for e, c in s.terms():
                    co[:, (e - s.val) // q] = c
                s = TildeSeries(s.ctx, s.w - 1, s.val // q, s.prec // q, co)
            else:
                break
        return s

    def __repr__(self):
        ts = self.terms()
        f = self.ctx.q**self.w
        def mono(e, c):
            ex = Fraction(e, f)
            cs = str(c[0]) if self.ctx.m == 1 else str(c)
            return f"{cs}*u^{ex}"
        body = " + ".join(mono(e, c) for e, c in ts[:8])
        if len(ts) > 8:
            body += " + ..."
        return f"TildeSeries({body or '0'} + O(u^{Fraction(self.prec, f)}))"


def residual_valuation(a, b=None):
    """Scaled exponent of the first nonzero coefficient of a - b (or of a),
    together with the comparison precision.  Returns (None, prec) when the
    residual vanishes to precision."""
    r = a if b is None else a - b
    return r.valuation_scaled(), r.prec


def series_eq(a, b, prec=None):
    v, p = residual_valuation(a, b)
    if prec is not None and p < prec:
        raise InsufficientPrecisionError(
            f"comparison precision {p} below requested {prec}")
    return v is None


# -- embeddings of A and K into the tilde-series world ---------------------

def embed_poly(poly, prec, w=0):
    """Expansion of an element of F_q[t] at infinity: t^k = (-1)^k u^{-k(q-1)}."""
    ctx = poly.ctx
    q = ctx.q
    step = (q - 1) * q**w
    terms = {}
    for k in range(poly.degree + 1):
        c = poly.coeff(k)
        if c == ctx.zero:
            continue
        if k % 2 == 1:
            c = ctx.neg(c)
        terms[-k * step] = c
    return TildeSeries.from_terms(ctx, terms, prec, w=w)


def embed_ratfunc(rf, prec, w=0):
    """Laurent expansion of an element of K = F_q(t) at infinity.

    Embedding windows are sized by prec - val(result), not by the raw
    polynomial degrees, so high-degree numerators/denominators stay cheap."""
    ctx = rf.ctx
    q = ctx.q
    if rf.num.is_zero():
        return TildeSeries.zero(ctx, prec, w)
    step = (q - 1) * q**w
    dn = rf.num.degree
    dd = rf.den.degree
    if (dd - dn) * step >= prec:  # result valuation already clears prec
        return TildeSeries.zero(ctx, prec, w)
    num = embed_poly(rf.num, prec - dd * step + 4, w=w)
    den = embed_poly(rf.den, prec + (dn - 2 * dd) * step + 4, w=w)
    return (num * den.inv()).truncate(prec)


class TSeries:
    """Power series in T truncated at T^order, with TildeSeries coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise ValueError("TSeries needs at least one coefficient")

    @property
    def ctx(self):
        return self.coeffs[0].ctx

    @property
    def order(self):
        return len(self.coeffs)

    @classmethod
    def zero(cls, ctx, order, prec, w=0):
        return cls([TildeSeries.zero(ctx, prec, w) for _ in range(order)])

    @classmethod
    def one(cls, ctx, order, prec, w=0):
        c = [TildeSeries.one(ctx, prec, w)]
        c += [TildeSeries.zero(ctx, prec, w) for _ in range(order - 1)]
        return cls(c)

    @classmethod
    def from_tilde_coeffs(cls, coeffs, order=None, prec=None, w=0, ctx=None):
        """Polynomial in T with given TildeSeries coefficients, padded to order."""
        coeffs = list(coeffs)
        ctx = ctx or coeffs[0].ctx
        if prec is None:
            prec = min(c.prec for c in coeffs)
        if order is not None:
            while len(coeffs) < order:
                coeffs.append(TildeSeries.zero(ctx, prec, w))
        return cls(coeffs)

    def coeff(self, k):
        return self.coeffs[k]

    def truncate_T(self, order):
        if order >= self.order:
            return self
        return TSeries(self.coeffs[:order])

    def truncate(self, prec):
        return TSeries([c.truncate(prec) for c in self.coeffs])

    def __add__(self, other):
        n = max(self.order, other.order)
        out = []
        for k in range(n):
            if k < self.order and k < other.order:
                out.append(self.coeffs[k] + other.coeffs[k])
            elif k < self.order:
                out.append(self.coeffs[k])
            else:
                out.append(other.coeffs[k])
        return TSeries(out)

    def __neg__(self):
        return TSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def mul(self, other, order=None):
        if order is None:
            order = self.order + other.order - 1
        out = [None] * order
        for i, a in enumerate(self.coeffs):
            if i >= order:
                break
            for j, b in enumerate(other.coeffs):
                if i + j >= order:
                    break
                term = a * b
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        prec = min(c.prec for c in out if c is not None)
        ctx = self.ctx
        w = max(c.w for c in out if c is not None)
        return TSeries([c if c is not None else TildeSeries.zero(ctx, prec, w)
                        for c in out])

    def __mul__(self, other):
        return self.mul(other)

    def scale_series(self, s):
        return TSeries([c * s for c in self.coeffs])

    def pow(self, e, order=None):
        if e == 0:
            return TSeries.one(self.ctx, order or 1,
                               min(c.prec for c in self.coeffs))
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result.mul(base, order=order)
            e >>= 1
            if e:
                base = base.mul(base, order=order)
        return result

    def twist(self, n, max_w=DEFAULT_LATTICE_CAP, prec_cap=None):
        return TSeries([c.twist(n, max_w=max_w, prec_cap=prec_cap)
                        for c in self.coeffs])

    def eval_at_t(self, N, cushion=3):
        """Sum_k coeff_k t^k truncated at precision N (scaled at the common
        lattice).  Certifies convergence by requiring the last `cushion`
        retained terms to lie entirely at or above N."""
        w = max(c.w for c in self.coeffs)
        coeffs = [c.lift_to_w(w) for c in self.coeffs]
        ctx = self.ctx
        step = (ctx.q - 1) * ctx.q**w
        acc = TildeSeries.zero(ctx, N, w)
        tail_ok = 0
        for k, c in enumerate(coeffs):
            term = c.shift_exp(-k * step)
            if k % 2 == 1:
                term = term.scale(ctx.minus_one)
            v = term.valuation_scaled()
            if v is None or v >= N:
                tail_ok += 1
            else:
                tail_ok = 0
                acc = acc + term.truncate(N)
        if tail_ok < cushion:
            raise NonconvergentEvaluationError(
                f"nonconvergent evaluation: last {cushion} T-coefficients still "
                f"contribute below precision {N} (order {self.order})")
        return acc.truncate(N)

    def residual_is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __repr__(self):
        return ("TSeries([" +
                ", ".join(repr(c) for c in self.coeffs[:4]) +
                (", ..." if self.order > 4 else "") + f"], order={self.order})")
