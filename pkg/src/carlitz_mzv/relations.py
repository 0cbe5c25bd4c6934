"""Identity verification and F_p-linear relation discovery.

Every verification is exact modulo precision: "holds" means the residual
series vanishes below u^N; a failure certificate is the scaled exponent of
the first nonzero residual coefficient.
"""

import itertools

from .errors import SideConditionError
from .series import TildeSeries, residual_valuation
from .powersums import power_sum_auto
from .mzv import (Composition, LinearPreorder, as_composition,
                  enumerate_preorders, zeta, zeta_rho, zeta_I,
                  zeta_totally_degenerate, power_sum_memo)
from .reconstruct import rational_reconstruct


class IdentityInstance:
    """Outcome of one identity check."""

    __slots__ = ("id", "params", "N", "holds", "certificate", "detail")

    def __init__(self, id, params, N, holds, certificate=None, detail=""):
        self.id = id
        self.params = params
        self.N = N
        self.holds = holds
        self.certificate = certificate  # scaled exponent of first violation
        self.detail = detail

    def __repr__(self):
        state = "holds" if self.holds else f"fails at u^{self.certificate}"
        return f"IdentityInstance({self.id}, {self.params}, N={self.N}: {state})"


def _instance(id, params, N, residual, detail=""):
    v, _ = residual_valuation(residual)
    return IdentityInstance(id, params, N, v is None, v, detail)


def _zeta_product(cache, tuples, N):
    acc = TildeSeries.one(cache.ctx, N)
    for s in tuples:
        acc = (acc * zeta(cache, s, N)).truncate(N)
    return acc


# -- shuffle identities ----------------------------------------------------

def verify_sum_shuffle(cache, svec, N):
    """prod_i zeta(s_i) = sum over all preorders rho of zeta_rho(svec)."""
    svec = tuple(svec)
    r = len(svec)
    if r > 5:
        raise ValueError("depth > 5 not supported")
    lhs = _zeta_product(cache, [(s,) for s in svec], N)
    rhs = TildeSeries.zero(cache.ctx, N)
    for rho in enumerate_preorders(r):
        rhs = rhs + zeta_rho(cache, svec, rho, N)
    return _instance("sum-shuffle", {"s": svec}, N, lhs - rhs)


def _restricts_to(rho, lo, hi, target):
    """Whether rho restricted to {lo, ..., hi} is `target` after relabelling."""
    return rho.restrict(range(lo, hi + 1)) == target


def verify_shuffle_product(cache, s0, rho0, s1, rho1, N):
    """zeta_rho0(s0) zeta_rho1(s1) = sum of zeta_rho over the preorders
    restricting to rho0 on the first factor and rho1 on the second."""
    s0, s1 = as_composition(s0), as_composition(s1)
    r0, r1 = s0.depth, s1.depth
    if r0 + r1 > 5:
        raise ValueError("combined depth > 5 not supported")
    s = tuple(s0) + tuple(s1)
    lhs = (zeta_rho(cache, s0, rho0, N) * zeta_rho(cache, s1, rho1, N)
           ).truncate(N)
    rhs = TildeSeries.zero(cache.ctx, N)
    count = 0
    for rho in enumerate_preorders(r0 + r1):
        if (_restricts_to(rho, 1, r0, rho0)
                and _restricts_to(rho, r0 + 1, r0 + r1, rho1)):
            rhs = rhs + zeta_rho(cache, s, rho, N)
            count += 1
    return _instance("shuffle-product",
                     {"s0": tuple(s0), "rho0": rho0.blocks,
                      "s1": tuple(s1), "rho1": rho1.blocks},
                     N, lhs - rhs, detail=f"{count} preorders on the right")


# -- the identity catalog --------------------------------------------------

def _leading_unit(s, p, q):
    """s = k p^n with p not dividing k: returns k, or None if k > q."""
    k = s
    while k % p == 0:
        k //= p
    return k if k <= q else None


def _classical_stuffle_rhs(cache, svec, N):
    """sum over preorders of zeta at the block-sum composition (the classical
    sum-shuffle right-hand side, blocks merged by adding exponents)."""
    rhs = TildeSeries.zero(cache.ctx, N)
    r = len(svec)
    for rho in enumerate_preorders(r):
        # blocks are listed in increasing degree; compositions list the
        # largest degree first
        merged = tuple(sum(svec[i - 1] for i in b)
                       for b in reversed(rho.blocks))
        rhs = rhs + zeta(cache, merged, N)
    return rhs


def verify_catalog(cache, id, params, N):
    ctx = cache.ctx
    p, q = ctx.p, ctx.q

    if id == "p-power":
        s = as_composition(params["s"])
        ps = tuple(p * x for x in s)
        lhs = zeta(cache, ps, N)
        rhs = zeta(cache, s, N) ** p
        return _instance(id, {"s": tuple(s)}, N, lhs - rhs.truncate(N))

    if id == "even-rational":
        s = int(params["s"])
        if s % (q - 1):
            raise SideConditionError(f"s = {s} is not divisible by q-1")
        ratio = (zeta(cache, (s,), N) * cache.pi_tilde_pow(-s, N)).truncate(N)
        rf = rational_reconstruct(ratio)
        inst = IdentityInstance(id, {"s": s}, N, rf is not None,
                                None if rf else 0,
                                detail=repr(rf) if rf else "not found")
        inst.detail = rf
        return inst

    if id == "low-s-shuffle":
        svec = tuple(params["s"])
        if sum(svec) > q:
            raise SideConditionError(
                f"classical sum shuffle needs total weight <= q; "
                f"{sum(svec)} > {q}")
        lhs = _zeta_product(cache, [(s,) for s in svec], N)
        rhs = _classical_stuffle_rhs(cache, svec, N)
        return _instance(id, {"s": svec}, N, lhs - rhs)

    if id == "degenerate-collapse":
        svec = tuple(params["s"])
        i = int(params.get("i", 1))
        r = len(svec)
        if not 1 <= i <= r - 1:
            raise SideConditionError("collapse position out of range")
        a = _leading_unit(svec[i - 1], p, q)
        b = _leading_unit(svec[i], p, q)
        c = _leading_unit(svec[i - 1] + svec[i], p, q)
        if a is None or b is None or c is None:
            raise SideConditionError(
                "digit condition fails: each of s_i, s_{i+1}, s_i + s_{i+1} "
                "must be (unit <= q) * p^n")
        d_range = range(int(params.get("dmax", 3)) + 1)
        for d in d_range:
            lhs = (power_sum_memo(cache, d, svec[i - 1], N)
                   * power_sum_memo(cache, d, svec[i], N)).truncate(N)
            rhs = power_sum_memo(cache, d, svec[i - 1] + svec[i], N)
            inst = _instance(id, {"s": svec, "i": i, "d": d}, N, lhs - rhs)
            if not inst.holds:
                return inst
        I = set(range(1, r)) - {i}
        merged = svec[:i - 1] + (svec[i - 1] + svec[i],) + svec[i + 1:]
        lhs = zeta_I(cache, svec, I, N)
        rhs = zeta(cache, merged, N)
        return _instance(id, {"s": svec, "i": i}, N, lhs - rhs,
                         detail=f"collapses to zeta{merged}")

    if id == "salvage":
        if p != 2 and q != 3:
            raise SideConditionError("salvage identity needs p = 2 or q = 3")
        z2 = zeta(cache, (2,), N)
        lhs = (z2 * z2).truncate(N)
        rhs = zeta(cache, (4,), N)
        inst = _instance(id, {}, N, lhs - rhs)
        if inst.holds:
            z22 = zeta(cache, (2, 2), N)
            if z22.is_zero():
                return IdentityInstance(id, {}, N, False, None,
                                        detail="zeta(2,2) vanished")
            inst.detail = ("zeta(2)^2 = zeta(4) and zeta(2,2) != 0 "
                           f"(valuation {z22.valuation_scaled()})")
        return inst

    if id == "z-collapse":
        svec = tuple(params["s"])
        units = [_leading_unit(x, p, q) for x in svec]
        total_unit = _leading_unit(sum(svec), p, q)
        if any(u is None for u in units) or total_unit is None:
            raise SideConditionError(
                "digit condition fails: parts and total must be "
                "(unit <= q) * p^n")
        lhs = zeta_totally_degenerate(cache, svec, N)
        rhs = zeta_totally_degenerate(cache, (sum(svec),), N)
        return _instance(id, {"s": svec}, N, lhs - rhs)

    if id == "digit-cube":
        if p != 2:
            raise SideConditionError("cube identity needs p = 2")
        b = int(params["b"])
        dmax = int(params.get("dmax", 2))
        if b % 4 == 3 and 0 < 3 * b < q:
            make_rhs_s = lambda: [(3 * q + 3 * b, [])]
        elif b % 4 == 1 and 0 < 2 * b < q:
            make_rhs_s = lambda: [(3 * q + b, [1] * (2 * b))]
        else:
            raise SideConditionError(
                "need b = 4k-1 with b < q/3, or b = 4k+1 with b < q/2")
        (big, ones), = make_rhs_s()
        for d in range(dmax + 1):
            lhs = power_sum_memo(cache, d, q + b, N) ** 3
            rhs = power_sum_memo(cache, d, big, N)
            for _ in ones:
                rhs = rhs * power_sum_memo(cache, d, 1, N)
            inst = _instance(id, {"b": b, "d": d}, N,
                             lhs.truncate(N) - rhs.truncate(N))
            if not inst.holds:
                return inst
        lhs = zeta_totally_degenerate(cache, (q + b,) * 3, N)
        rhs = zeta_totally_degenerate(cache, (big, *ones), N)
        return _instance(id, {"b": b}, N, lhs - rhs,
                         detail=f"z({q+b},{q+b},{q+b}) = z({big}"
                                + (f",1x{len(ones)})" if ones else ")"))

    if id == "digit-quartic":
        if p % 4 != 1:
            raise SideConditionError("quartic identity needs p = 1 mod 4")
        b = int(params["b"])
        k = int(params["k"])
        dmax = int(params.get("dmax", 2))
        if (b * b + 1) % p:
            raise SideConditionError("need b^2 = -1 mod p")
        c = k * p - 2 - 2 * b
        if not 0 < c < q:
            raise SideConditionError("need q > kp - 2 - 2b > 0")
        e1 = 2 * b - 2
        e3 = q - k * p + 2 + 4 * b
        for d in range(dmax + 1):
            S = lambda s: power_sum_memo(cache, d, s, N)
            res = (S(q + b) ** 2
                   + (S(q + 1) ** 2) * (S(1) ** e1 if e1 else
                                        TildeSeries.one(ctx, N))
                   + S(q + c) * S(1) ** e3
                   + (S(1) ** (2 * q + 2 * b)).scale(ctx.int_embed(p - 3)))
            inst = _instance(id, {"b": b, "k": k, "d": d}, N, res.truncate(N))
            if not inst.holds:
                return inst
        w = 2 * q + 2 * b
        zt = zeta_totally_degenerate
        res = (zt(cache, (q + b,) * 2, N)
               + zt(cache, (q + 1, q + 1) + (1,) * e1, N)
               + zt(cache, (q + c,) + (1,) * e3, N)
               + zt(cache, (1,) * w, N).scale(ctx.int_embed(p - 3)))
        return _instance(id, {"b": b, "k": k}, N, res)

    raise ValueError(f"unknown identity id {id!r}")


CATALOG_IDS = ("p-power", "even-rational", "low-s-shuffle",
               "degenerate-collapse", "salvage", "z-collapse",
               "digit-cube", "digit-quartic")


# -- relation discovery ----------------------------------------------------

def _atom_key(svec, rho):
    """Canonical key of zeta_rho(svec): the sequence of sorted per-block
    exponent multisets (two presentations with the same key denote the same
    value)."""
    return tuple(tuple(sorted(svec[i - 1] for i in b)) for b in rho.blocks)


def _compositions(total, max_depth):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        if max_depth >= 1:
            for rest in _compositions(total - first, max_depth - 1):
                yield (first,) + rest


def enumerate_atoms(weight, max_depth):
    """Deduplicated zeta_rho descriptors of the exact weight: list of
    (key, svec, rho)."""
    seen = {}
    for w in range(1, weight + 1):
        if w != weight:
            continue
        for svec in _compositions(w, max_depth):
            if not svec:
                continue
            for rho in enumerate_preorders(len(svec)):
                key = _atom_key(svec, rho)
                if key not in seen:
                    seen[key] = (key, svec, rho.blocks)
    return [seen[k] for k in sorted(seen)]


def enumerate_monomials(weight, max_depth):
    """Multisets of atoms with total weight `weight`, deterministic order.
    Returns a list of tuples of (key, svec, blocks)."""
    atoms_by_weight = {w: enumerate_atoms(w, max_depth)
                       for w in range(1, weight + 1)}
    out = []

    def rec(remaining, max_atom, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for w in range(min(remaining, weight), 0, -1):
            for atom in atoms_by_weight[w]:
                candidate = acc + [atom]
                if max_atom is not None and (w, atom[0]) > max_atom:
                    continue
                rec(remaining - w, (w, atom[0]), candidate)

    rec(weight, None, [])
    # dedupe (multisets can repeat via different orders) and sort
    uniq = {tuple(sorted(a[0] for a in mono)): mono for mono in out}
    return [uniq[k] for k in sorted(uniq)]


def fp_nullspace(rows, p):
    """Nullspace basis of the F_p-matrix whose rows are `rows` (lists of
    ints): vectors v with sum_i v_i rows[i] = 0, by Gaussian elimination."""
    B = len(rows)
    if B == 0:
        return []
    W = len(rows[0])
    # eliminate on the transpose: columns of M are the row vectors
    M = [[rows[i][j] % p for i in range(B)] for j in range(W)]
    pivots = []
    rank_row = 0
    for col in range(B):
        pivot = None
        for rr in range(rank_row, W):
            if M[rr][col] % p:
                pivot = rr
                break
        if pivot is None:
            continue
        M[rank_row], M[pivot] = M[pivot], M[rank_row]
        inv = pow(M[rank_row][col], p - 2, p)
        M[rank_row] = [(x * inv) % p for x in M[rank_row]]
        for rr in range(W):
            if rr != rank_row and M[rr][col] % p:
                c = M[rr][col]
                M[rr] = [(x - c * y) % p for x, y in zip(M[rr], M[rank_row])]
        pivots.append(col)
        rank_row += 1
    free = [c for c in range(B) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * B
        v[fc] = 1
        for prow, pcol in enumerate(pivots):
            v[pcol] = (-M[prow][fc]) % p
        basis.append(v)
    return basis


class RelationCandidate:
    __slots__ = ("weight", "basis", "coeffs", "N", "verified_at")

    def __init__(self, weight, basis, coeffs, N, verified_at):
        self.weight = weight
        self.basis = basis
        self.coeffs = coeffs
        self.N = N
        self.verified_at = verified_at

    def format(self):
        parts = []
        for c, mono in zip(self.coeffs, self.basis):
            if not c:
                continue
            factors = "*".join(
                "zeta[" + "|".join(",".join(map(str, blk)) for blk in key)
                + "]" for key in [a[0] for a in mono])
            parts.append(f"{c}*{factors}")
        return " + ".join(parts) + " = 0"

    def to_json(self):
        return {"coeffs": list(self.coeffs),
                "monomials": [[{"blocks": [list(b) for b in a[2]],
                                "s": list(a[1])} for a in mono]
                              for mono in self.basis]}


def _monomial_value(cache, mono, N):
    acc = TildeSeries.one(cache.ctx, N)
    for _, svec, blocks in mono:
        acc = (acc * zeta_rho(cache, svec, LinearPreorder(blocks), N)
               ).truncate(N)
    return acc


def _coefficient_rows(cache, values, N):
    """Flattened F_p coefficient vectors on a common exponent window."""
    ctx = cache.ctx
    vals = [v.reduce_lattice() for v in values]
    if any(v.w != 0 for v in vals):
        raise ValueError("basis values must be on the integer lattice")
    e0 = min((v.valuation_scaled() for v in vals
              if not v.is_zero()), default=0)
    rows = []
    for v in vals:
        row = []
        for e in range(e0, N):
            row.extend(v.coeff_at(e))
        rows.append(row)
    return rows


def find_relations(cache, weight, max_depth, N, basis_cap=120):
    """F_p-linear relations among the weight-graded monomials in zeta_rho
    values, by exact nullspace computation on truncated coefficient vectors;
    every candidate is re-verified at precision 2N before being reported."""
    ctx = cache.ctx
    p, q = ctx.p, ctx.q
    basis = enumerate_monomials(weight, max_depth)
    B = len(basis)
    if B > basis_cap:
        raise ValueError(f"basis size {B} exceeds cap {basis_cap}")
    if N < 3 * B * (q - 1):
        raise ValueError(
            f"window too small: need N >= {3 * B * (q - 1)} for {B} basis "
            f"elements, got {N}")
    values = [_monomial_value(cache, mono, N) for mono in basis]
    rows = _coefficient_rows(cache, values, N)
    candidates = fp_nullspace(rows, p)
    # re-verify at doubled precision
    out = []
    values2 = None
    for v in candidates:
        if values2 is None:
            values2 = [_monomial_value(cache, mono, 2 * N) for mono in basis]
        acc = TildeSeries.zero(ctx, 2 * N)
        for c, val in zip(v, values2):
            if c:
                acc = acc + val.scale(ctx.int_embed(c))
        if acc.truncate(2 * N).is_zero():
            out.append(RelationCandidate(weight, basis, tuple(v), N, 2 * N))
    return out


def relation_in_span(relations, target, p):
    """Whether the F_p vector `target` lies in the span of the candidate
    relation vectors (all over the same basis order)."""
    rows = [list(r.coeffs) for r in relations]
    if not rows:
        return all(c % p == 0 for c in target)
    B = len(rows[0])
    work = [row[:] for row in rows]
    t = [c % p for c in target]
    pivot_cols = []
    rank = 0
    for col in range(B):
        piv = None
        for rr in range(rank, len(work)):
            if work[rr][col] % p:
                piv = rr
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], p - 2, p)
        work[rank] = [(x * inv) % p for x in work[rank]]
        for rr in range(len(work)):
            if rr != rank and work[rr][col] % p:
                c = work[rr][col]
                work[rr] = [(x - c * y) % p
                            for x, y in zip(work[rr], work[rank])]
        if t[col] % p:
            c = t[col]
            t = [(x - c * y) % p for x, y in zip(t, work[rank])]
        pivot_cols.append(col)
        rank += 1
    return all(x % p == 0 for x in t)
