"""Multizeta values: iterated sums of power sums over degree shapes.

A composition (s_1, ..., s_r) and a shape on the degree tuple determine a
value:

  * strictly decreasing degrees   -> the multizeta value zeta(s);
  * degree shapes given by a jump set I (equalities allowed exactly off I)
    -> the degenerate value zeta_I(s);
  * a linear preorder rho (an ordered set partition of the index set)
    -> zeta_rho(s), the building block of the sum-shuffle algebra.

Degree cutoffs come from the provable power-sum valuation bound, which grows
geometrically, so the outer sums have O(log N) layers.
"""

import itertools

from .errors import InsufficientPrecisionError
from .series import TildeSeries
from .powersums import (power_sum_auto, power_sum_brute,
                        power_sum_valuation_bound, bound_is_increasing)


class Composition:
    """A tuple of positive integers (s_1, ..., s_r)."""

    __slots__ = ("s",)

    def __init__(self, s):
        s = tuple(int(x) for x in s)
        if not s or any(x < 1 for x in s):
            raise ValueError("composition entries must be positive integers")
        self.s = s

    @property
    def depth(self):
        return len(self.s)

    @property
    def weight(self):
        return sum(self.s)

    def __iter__(self):
        return iter(self.s)

    def __len__(self):
        return len(self.s)

    def __getitem__(self, i):
        return self.s[i]

    def __eq__(self, other):
        other = as_composition(other)
        return self.s == other.s

    def __hash__(self):
        return hash(self.s)

    def __repr__(self):
        return f"Composition{self.s}"

    def to_json(self):
        return {"s": list(self.s)}


def as_composition(s):
    return s if isinstance(s, Composition) else Composition(s)


class LinearPreorder:
    """An ordered set partition B_1, ..., B_k of {1, ..., r}.

    Indices in B_1 receive the smallest degree, those in B_k the largest;
    i <= j in the preorder iff block(i) <= block(j).
    """

    __slots__ = ("blocks", "r")

    def __init__(self, blocks):
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in blocks)
        if not blocks or any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        support = sorted(i for b in blocks for i in b)
        r = len(support)
        if support != list(range(1, r + 1)):
            raise ValueError("blocks must partition {1, ..., r}")
        self.blocks = blocks
        self.r = r

    @property
    def k(self):
        return len(self.blocks)

    def block_of(self, i):
        for j, b in enumerate(self.blocks):
            if i in b:
                return j
        raise ValueError(f"index {i} not in preorder")

    def leq(self, i, j):
        return self.block_of(i) <= self.block_of(j)

    def is_nondegenerate(self):
        """Singleton blocks in decreasing index order: strictly decreasing
        degrees d_1 > ... > d_r."""
        return self.blocks == tuple((i,) for i in range(self.r, 0, -1))

    def restrict(self, indices):
        """The induced preorder on a subset, relabelled to {1, ..., len}."""
        indices = sorted(indices)
        relabel = {orig: pos + 1 for pos, orig in enumerate(indices)}
        blocks = []
        for b in self.blocks:
            sub = tuple(relabel[i] for i in b if i in relabel)
            if sub:
                blocks.append(sub)
        return LinearPreorder(blocks)

    def shift(self, offset):
        """The same preorder on {1+offset, ..., r+offset} (blocks relabelled,
        kept as raw tuples for embedding into larger index sets)."""
        return tuple(tuple(i + offset for i in b) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, LinearPreorder) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"LinearPreorder{self.blocks}"

    def format(self):
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)

    @classmethod
    def parse(cls, text):
        return cls([part.split(",") for part in text.split("|")])

    def to_json(self):
        return {"blocks": [list(b) for b in self.blocks]}


def enumerate_preorders(r):
    """All ordered set partitions of {1, ..., r}, deterministic order."""
    if not 1 <= r <= 6:
        raise ValueError("enumerate_preorders supports 1 <= r <= 6")
    out = []

    def rec(remaining, acc):
        if not remaining:
            out.append(LinearPreorder(acc))
            return
        # choose the lowest-degree block among nonempty subsets
        for size in range(1, len(remaining) + 1):
            for block in itertools.combinations(remaining, size):
                left = tuple(i for i in remaining if i not in block)
                rec(left, acc + [block])

    rec(tuple(range(1, r + 1)), [])
    out.sort(key=lambda rho: rho.blocks)
    return out


def jumps_to_preorder(I, r):
    """The degree shape 'd_1 >= ... >= d_r with strict drops exactly at the
    positions in I' as a preorder: blocks are the maximal no-jump runs, in
    increasing degree order (later runs have smaller degrees)."""
    I = set(I)
    if not I.issubset(range(1, r)):
        raise ValueError(f"jump set must be a subset of 1..{r - 1}")
    runs = []
    current = [1]
    for i in range(1, r):
        if i in I:
            runs.append(tuple(current))
            current = [i + 1]
        else:
            current.append(i + 1)
    runs.append(tuple(current))
    return LinearPreorder(tuple(reversed(runs)))


def nondegenerate_preorder(r):
    return jumps_to_preorder(range(1, r), r)


def power_sum_memo(cache, d, s, N):
    """Auto-method power sum with a per-field memo keyed (d, s, N)."""
    memo = cache.memo.setdefault("psum", {})
    key = (d, s, N)
    if key not in memo:
        memo[key] = power_sum_auto(cache, d, s, N)
    return memo[key]


def power_sum_degree_cutoff(cache, svec, N):
    """Smallest D such that every product prod_i S_e(s_i) with e >= D
    vanishes mod u^N, from the valuation bound (geometric growth in e)."""
    for s in svec:
        if not bound_is_increasing(cache, s):
            raise InsufficientPrecisionError(
                f"no increasing tail bound for s = {s}; cannot truncate")
    D = 0
    while sum(max(power_sum_valuation_bound(cache, s, D),
                  D * s * (cache.ctx.q - 1)) for s in svec) < N:
        D += 1
    return D


def zeta_rho(cache, s, rho, N):
    """zeta_rho(s) = sum over degree tuples in the shape of rho of
    prod_i S_{d_i}(s_i), mod u^N.

    Evaluated by dynamic programming over block degrees e_1 < ... < e_k with
    prefix sums, so the cost is O(k * D) series operations.
    """
    s = as_composition(s)
    if not isinstance(rho, LinearPreorder):
        rho = LinearPreorder(rho)
    if rho.r != s.depth:
        raise ValueError("preorder size does not match composition depth")
    ctx = cache.ctx
    top = [s[i - 1] for i in rho.blocks[-1]]
    D = power_sum_degree_cutoff(cache, top, N)
    # G[j][e] = product of S_e(s_i) over i in block j
    zero = TildeSeries.zero(ctx, N)

    def block_value(j, e):
        acc = None
        for i in rho.blocks[j]:
            ps = power_sum_memo(cache, e, s[i - 1], N)
            acc = ps if acc is None else (acc * ps).truncate(N)
        return acc

    k = rho.k
    # layer[e] = sum over e_1 < ... < e_j = e of the partial products
    layer = [block_value(0, e) for e in range(D + 1)]
    for j in range(1, k):
        prefix = zero
        new_layer = []
        for e in range(D + 1):
            if e > 0:
                prefix = (prefix + layer[e - 1]).truncate(N)
            new_layer.append((block_value(j, e) * prefix).truncate(N))
        layer = new_layer
    total = zero
    for v in layer:
        total = total + v
    return total.truncate(N)


def zeta(cache, s, N):
    """The multizeta value zeta(s_1, ..., s_r): strictly decreasing degrees."""
    s = as_composition(s)
    return zeta_rho(cache, s, nondegenerate_preorder(s.depth), N)


def zeta_I(cache, s, I, N):
    """Degenerate multizeta: weakly decreasing degrees with strict drops
    exactly at the positions in I."""
    s = as_composition(s)
    return zeta_rho(cache, s, jumps_to_preorder(I, s.depth), N)


def zeta_totally_degenerate(cache, s, N):
    """z(s_1, ..., s_r): all degrees equal (the empty jump set)."""
    return zeta_I(cache, s, (), N)


def zeta_mixed(cache, s, strict, N):
    """Value for a mixed shape d_1 ? d_2 ? ... ? d_r where position i carries
    '>' for i in `strict` and '>=' otherwise: the sum of zeta_I over all jump
    sets containing `strict`."""
    s = as_composition(s)
    strict = set(strict)
    r = s.depth
    if not strict.issubset(range(1, r)):
        raise ValueError("strict positions must lie in 1..r-1")
    free = sorted(set(range(1, r)) - strict)
    total = TildeSeries.zero(cache.ctx, N)
    for size in range(len(free) + 1):
        for extra in itertools.combinations(free, size):
            total = total + zeta_I(cache, s, strict | set(extra), N)
    return total.truncate(N)


def zeta_direct(cache, s, N, dmax, method="brute"):
    """Direct-summation oracle: iterate over all strictly decreasing degree
    tuples with d_1 <= dmax, summing products of brute-force power sums.
    Exponential; test use only."""
    s = as_composition(s)
    ctx = cache.ctx
    psum = (power_sum_brute if method == "brute"
            else lambda c, d, t, P: power_sum_memo(c, d, t, P))
    total = TildeSeries.zero(ctx, N)
    for degs in itertools.combinations(range(dmax + 1), s.depth):
        # degs ascending; pair with s reversed so d_1 > ... > d_r
        term = TildeSeries.one(ctx, N)
        for d, si in zip(degs, reversed(s.s)):
            term = (term * psum(cache, d, si, N)).truncate(N)
        total = total + term
    return total.truncate(N)
