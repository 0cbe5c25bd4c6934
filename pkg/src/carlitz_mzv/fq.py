"""Finite field contexts F_q = F_p[x]/(f).

Elements are coordinate vectors of length m over F_p (tuples of ints in
[0, p)), written in the power basis 1, g, ..., g^{m-1} where g is the class
of x.  Bulk coefficient arrays (used by polynomials and series) have shape
(m, L): row i holds the i-th coordinate of L consecutive coefficients.
"""

from functools import lru_cache
import itertools

import numpy as np


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(f):
    while f and f[-1] == 0:
        f = f[:-1]
    return f


def _poly_mulmod(a, b, mod, p):
    # a, b, mod: coefficient tuples over F_p, mod monic
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    # reduce mod `mod`
    dm = len(mod) - 1
    for k in range(len(res) - 1, dm - 1, -1):
        c = res[k]
        if c:
            res[k] = 0
            for j in range(dm):
                res[k - dm + j] = (res[k - dm + j] - c * mod[j]) % p
    return tuple(_poly_trim(res[:dm]) or (0,))


def _poly_powmod(a, e, mod, p):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible(f, p):
    """Rabin test for a monic polynomial f over F_p."""
    m = len(f) - 1
    x = (0, 1) if m > 1 else (0, 1)
    xq = _poly_powmod(x, p**m, f, p)
    if _poly_trim(tuple((a - b) % p for a, b in
                        itertools.zip_longest(xq, x, fillvalue=0))):
        return False
    for ell in {d for d in range(2, m + 1) if m % d == 0 and is_prime(d)}:
        xe = _poly_powmod(x, p ** (m // ell), f, p)
        diff = tuple((a - b) % p for a, b in
                     itertools.zip_longest(xe, x, fillvalue=0))
        diff = _poly_trim(diff)
        if not diff:
            return False
        # gcd(x^{p^{m/ell}} - x, f) must be 1; f irreducible of degree m has
        # no roots in subfield unless diff == 0, so a nontrivial gcd shows up
        # as a common factor.  Compute gcd directly.
        if len(_poly_gcd(diff, f, p)) - 1 > 0:
            return False
    return True


def _poly_gcd(a, b, p):
    a = list(_poly_trim(a))
    b = list(_poly_trim(b))
    while b:
        # a mod b
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and _poly_trim(a):
            c = (a[-1] * inv_lead) % p
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            a = list(_poly_trim(a))
            if not a:
                break
        a, b = b, a
    return tuple(_poly_trim(a) or (0,))


@lru_cache(maxsize=None)
def least_irreducible(p, m):
    """The monic irreducible of degree m over F_p whose coefficient vector
    (c_0, ..., c_{m-1}) encodes the smallest integer sum(c_i p^i)."""
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        coeffs = []
        c = code
        for _ in range(m):
            coeffs.append(c % p)
            c //= p
        f = tuple(coeffs) + (1,)
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


class FieldContext:
    """Arithmetic context for F_q, q = p^m."""

    def __init__(self, p, m):
        if not is_prime(p):
            raise ValueError("p not prime")
        if m < 1:
            raise ValueError("m must be >= 1")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = least_irreducible(p, m)
        # coords of x^h mod modulus for h = 0 .. 2m-2
        red = np.zeros((2 * m - 1, m), dtype=np.int64)
        for h in range(2 * m - 1):
            xh = _poly_powmod((0, 1), h, self.modulus, p) if h else (1,)
            for i, c in enumerate(xh):
                red[h, i] = c
        self.basis_red = red
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        self.minus_one = ((p - 1),) + (0,) * (m - 1)

    # -- scalar element arithmetic -------------------------------------

    def element(self, coords):
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.m:
            raise ValueError("wrong number of coordinates")
        return coords

    def elements(self):
        for coords in itertools.product(range(self.p), repeat=self.m):
            yield coords

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        m, p = self.m, self.p
        if m == 1:
            return ((a[0] * b[0]) % p,)
        acc = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    acc[i + j] += ai * bj
        out = [0] * m
        for h, c in enumerate(acc):
            if c:
                row = self.basis_red[h]
                for k in range(m):
                    out[k] += c * int(row[k])
        return tuple(x % p for x in out)

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.pow(a, self.q - 2)

    def frobenius(self, a, k):
        """a^{p^k}; for k < 0 the unique p^{|k|}-th root."""
        e = k % self.m
        result = a
        for _ in range(e):
            result = self.pow(result, self.p)
        return result

    def int_embed(self, n):
        """Image of the integer n in the prime field."""
        return ((n % self.p),) + (0,) * (self.m - 1)

    # -- bulk coefficient arrays ---------------------------------------

    def one_arr(self):
        return np.array(self.one, dtype=np.int64)

    def vec_zeros(self, length):
        return np.zeros((self.m, length), dtype=np.int64)

    def vec_mul_full(self, A, B):
        """Full convolution product of two coefficient arrays (m, La), (m, Lb)."""
        m, p = self.m, self.p
        La, Lb = A.shape[1], B.shape[1]
        if La == 0 or Lb == 0:
            return self.vec_zeros(max(La + Lb - 1, 0))
        if m == 1:
            return (np.convolve(A[0], B[0]) % p)[None, :]
        acc = np.zeros((2 * m - 1, La + Lb - 1), dtype=np.int64)
        for i in range(m):
            if not A[i].any():
                continue
            for j in range(m):
                if not B[j].any():
                    continue
                acc[i + j] += np.convolve(A[i], B[j])
        acc %= p
        out = (self.basis_red.T @ acc) % p
        return out

    def vec_scale(self, A, c):
        """Multiply every coefficient in A (shape (m, L)) by the element c."""
        m, p = self.m, self.p
        if m == 1:
            return (A * c[0]) % p
        out = np.zeros_like(A)
        for i in range(m):
            if c[i] == 0:
                continue
            # c_i * g^i * (sum_j A_j g^j) contributes via basis_red[i+j]
            for j in range(m):
                row = self.basis_red[i + j]
                contrib = (c[i] * A[j]) % p
                for k in range(m):
                    if row[k]:
                        out[k] = (out[k] + row[k] * contrib) % p
        return out

    def __repr__(self):
        return f"FieldContext(p={self.p}, m={self.m})"

    def __eq__(self, other):
        return (isinstance(other, FieldContext)
                and self.p == other.p and self.m == other.m)

    def __hash__(self):
        return hash((self.p, self.m))


@lru_cache(maxsize=None)
def make_field_context(p, m):
    """Shared, memoized field contexts (deterministic modulus choice)."""
    return FieldContext(p, m)
