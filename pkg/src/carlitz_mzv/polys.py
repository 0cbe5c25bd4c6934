"""Univariate polynomials and rational functions over F_q.

PolyT is variable-agnostic; the package uses it both for A = F_q[t] and for
polynomials in the motive variable T.  Coefficients are stored as an array of
F_p coordinate rows, shape (m, deg+1).
"""

import numpy as np


class PolyT:
    __slots__ = ("ctx", "co")

    def __init__(self, ctx, co):
        co = np.asarray(co, dtype=np.int64) % ctx.p
        # trim trailing zero coefficients
        L = co.shape[1]
        while L > 0 and not co[:, L - 1].any():
            L -= 1
        self.ctx = ctx
        self.co = np.ascontiguousarray(co[:, :L])

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ctx.vec_zeros(0))

    @classmethod
    def one(cls, ctx):
        return cls.constant(ctx, ctx.one)

    @classmethod
    def constant(cls, ctx, c):
        co = ctx.vec_zeros(1)
        co[:, 0] = c
        return cls(ctx, co)

    @classmethod
    def variable(cls, ctx):
        return cls.monomial(ctx, 1, ctx.one)

    @classmethod
    def monomial(cls, ctx, k, c=None):
        co = ctx.vec_zeros(k + 1)
        co[:, k] = ctx.one if c is None else c
        return cls(ctx, co)

    @classmethod
    def from_coeffs(cls, ctx, coeffs):
        """coeffs: iterable of F_q elements (coordinate tuples), degree 0 first."""
        coeffs = list(coeffs)
        co = ctx.vec_zeros(len(coeffs))
        for k, c in enumerate(coeffs):
            co[:, k] = c
        return cls(ctx, co)

    @classmethod
    def from_int_coeffs(cls, ctx, coeffs):
        """Prime-subfield coefficients given as plain integers, degree 0 first."""
        return cls.from_coeffs(ctx, [ctx.int_embed(c) for c in coeffs])

    # -- basic queries --------------------------------------------------

    @property
    def degree(self):
        return self.co.shape[1] - 1

    def is_zero(self):
        return self.co.shape[1] == 0

    def coeff(self, k):
        if 0 <= k <= self.degree:
            return tuple(int(x) for x in self.co[:, k])
        return self.ctx.zero

    def coeffs(self):
        return [self.coeff(k) for k in range(self.degree + 1)]

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeff(self.degree)

    def is_monic(self):
        return not self.is_zero() and self.leading() == self.ctx.one

    # -- arithmetic -----------------------------------------------------

    def _binop_pad(self, other):
        L = max(self.co.shape[1], other.co.shape[1])
        a = np.zeros((self.ctx.m, L), dtype=np.int64)
        b = np.zeros((self.ctx.m, L), dtype=np.int64)
        a[:, :self.co.shape[1]] = self.co
        b[:, :other.co.shape[1]] = other.co
        return a, b

    def __add__(self, other):
        a, b = self._binop_pad(other)
        return PolyT(self.ctx, a + b)

    def __sub__(self, other):
        a, b = self._binop_pad(other)
        return PolyT(self.ctx, a - b)

    def __neg__(self):
        return PolyT(self.ctx, -self.co)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return PolyT.zero(self.ctx)
        return PolyT(self.ctx, self.ctx.vec_mul_full(self.co, other.co))

    def scale(self, c):
        if self.is_zero():
            return self
        return PolyT(self.ctx, self.ctx.vec_scale(self.co, c))

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = PolyT.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k):
        """Multiply by variable^k."""
        if self.is_zero() or k == 0:
            return self
        co = self.ctx.vec_zeros(self.co.shape[1] + k)
        co[:, k:] = self.co
        return PolyT(self.ctx, co)

    def dilate(self, f):
        """Map variable^k -> variable^{f k}; this is the q^d-power twist when
        f = q^d, since F_q coefficients are Frobenius-fixed."""
        if self.is_zero() or f == 1:
            return self
        co = self.ctx.vec_zeros((self.co.shape[1] - 1) * f + 1)
        co[:, ::f] = self.co
        return PolyT(self.ctx, co)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = self.co.copy()
        Lr = rem.shape[1]
        db = other.degree
        inv_lead = ctx.inv(other.leading())
        quo = ctx.vec_zeros(max(Lr - db, 0))
        r = PolyT(ctx, rem)
        while not r.is_zero() and r.degree >= db:
            c = ctx.mul(r.leading(), inv_lead)
            k = r.degree - db
            quo[:, k] = c
            r = r - other.scale(c).shift(k)
        return PolyT(ctx, quo), r

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.leading()))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def eval_poly(self, arg):
        """Evaluate with another PolyT (or reuse for substitution)."""
        result = PolyT.zero(self.ctx)
        for k in range(self.degree, -1, -1):
            result = result * arg + PolyT.constant(self.ctx, self.coeff(k))
        return result

    def __eq__(self, other):
        return (isinstance(other, PolyT) and self.ctx == other.ctx
                and self.co.shape == other.co.shape
                and bool((self.co == other.co).all()))

    def __hash__(self):
        return hash((self.ctx, self.co.shape[1], self.co.tobytes()))

    def __repr__(self):
        return f"PolyT({self.format()})"

    def format(self, var="t"):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == self.ctx.zero:
                continue
            if self.ctx.m == 1:
                cs = str(c[0])
            else:
                cs = "(" + "+".join(
                    f"{ci}*g^{i}" if i else str(ci)
                    for i, ci in enumerate(c) if ci) + ")"
            if k == 0:
                parts.append(cs)
            else:
                head = "" if (cs == "1") else cs + "*"
                parts.append(f"{head}{var}" + (f"^{k}" if k > 1 else ""))
        return " + ".join(parts)


class RatFunc:
    """Reduced fraction of PolyT's with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den, reduce=True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero():
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        if num.is_zero():
            den = PolyT.one(den.ctx)
        lead_inv = den.ctx.inv(den.leading())
        self.num = num.scale(lead_inv)
        self.den = den.scale(lead_inv)

    @classmethod
    def from_poly(cls, p):
        return cls(p, PolyT.one(p.ctx), reduce=False)

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other):
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        return RatFunc(self.num**e, self.den**e, reduce=False)

    def __eq__(self, other):
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return f"RatFunc({self.num.format()})"
        return f"RatFunc(({self.num.format()}) / ({self.den.format()}))"
