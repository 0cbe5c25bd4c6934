"""Triangular difference-equation bundles whose periods are multizeta values.

For a composition (s_1, ..., s_r) the bundle of size r+1 consists of

  Q       unit lower bidiagonal, Q_{i+1,i} = H_{s_i - 1}(T);
  Ddiag   diag((T-t)^{w_1}, ..., (T-t)^{w_r}, 1), w_i = s_i + ... + s_r;
  Lambda  diag(Omega^{w_1}, ..., Omega^{w_r}, 1);
  Phi     Q^{(-1)} Ddiag;
  L       the unit lower triangular solution of the twist recursions;
  Psi     Lambda L, satisfying Phi Psi = Psi^{(-1)}.

The inverse of Psi evaluated at T = t is the period matrix; its normalized
entries are signed sums of products of gamma-scaled multizeta values
(Z-expressions).  Delayed variants on fractional exponent lattices realize
the degenerate values.
"""

import itertools

from .polys import PolyT
from .series import (TSeries, TildeSeries, embed_poly, series_eq,
                     residual_valuation, DEFAULT_LATTICE_CAP)
from .mzv import as_composition, zeta, zeta_I
from .carlitz import CarlitzCache


# -- small helpers over matrices of TSeries --------------------------------

def _mat_zero_like(ctx, n, order, prec, w):
    return [[TSeries.zero(ctx, order, prec, w) for _ in range(n)]
            for _ in range(n)]


def mat_mul(A, B, order):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                term = A[i][k].mul(B[k][j], order=order)
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_twist(A, n, max_w=DEFAULT_LATTICE_CAP, prec_cap=None):
    return [[e.twist(n, max_w=max_w, prec_cap=prec_cap) for e in row]
            for row in A]


def _tseries_is_zero(f):
    return all(c.is_zero() for c in f.coeffs)


def _twisted_sum(f, prec_cap, max_w=DEFAULT_LATTICE_CAP):
    """Sum_{k>=0} f^{(k)} mod u^{prec_cap}; converges because twisting sends
    coefficient valuations v to q^k v with v > 0 here."""
    total = None
    g = f.truncate(prec_cap)
    while not _tseries_is_zero(g):
        total = g if total is None else total + g
        g = g.twist(1, max_w=max_w, prec_cap=prec_cap)
    if total is None:
        total = g
    return total


class MotiveBundle:
    """The assembled matrices for one composition (optionally with delays).

    delays[i] is the delay w of the slot-i interpolation polynomial; all-zero
    delays give the plain bundle.  With delays, the twist chain
    i_1 > ... > i_r corresponds to degrees d_j = i_j - delays[j], so the
    bottom-left period realizes the weak-inequality degree shape in which
    position j is weak (d_j >= d_{j+1}) exactly when delays[j] =
    delays[j+1] + 1.
    """

    def __init__(self, cache, s, M, P, delays=None):
        self.cache = cache
        self.ctx = cache.ctx
        self.s = as_composition(s)
        r = self.s.depth
        self.r = r
        self.M = M
        self.P = P  # coefficient precision (unscaled)
        self.delays = tuple(delays) if delays is not None else (0,) * r
        if len(self.delays) != r or any(d < 0 for d in self.delays):
            raise ValueError("delays must be r nonnegative integers")
        self.w = max(self.delays)
        self.weights = [sum(self.s.s[i:]) for i in range(r)] + [0]
        self._build()
        self.L = None
        self.Psi = None

    # -- assembly ------------------------------------------------------

    def _embed_prec(self):
        # scaled coefficient precision on the bundle lattice
        return self.P * self.ctx.q**self.w

    def _interp_factor(self, slot):
        """The slot interpolation polynomial Q_{slot+2, slot+1}: H_{s-1} for
        delay 0, else H_{s-1}^{(-w)} (prod_{l<w} (T - t^{1/q^l}))^s."""
        cache, ctx = self.cache, self.ctx
        q = ctx.q
        s = self.s[slot]
        wd = self.delays[slot]
        prec = self._embed_prec()
        if wd == 0:
            return cache.h_tseries(s - 1, prec, order=1, w=self.w)
        # embed at q^wd-fold precision so the negative twist keeps prec
        H = cache.h_tseries(s - 1, prec * q**wd, order=1).twist(
            -wd, max_w=self.w)
        H = TSeries([c.lift_to_w(self.w).truncate(prec) for c in H.coeffs])
        B = TSeries.one(ctx, 1, prec, w=self.w)
        for l in range(wd):
            mono = TildeSeries.monomial(ctx, -(q - 1) * q ** (self.w - l),
                                        prec, w=self.w, c=ctx.one)
            B = B * TSeries.from_tilde_coeffs(
                [mono, TildeSeries.one(ctx, prec, w=self.w)])
        return H.mul(B.pow(s))

    def _build(self):
        cache, ctx = self.cache, self.ctx
        q = ctx.q
        n = self.r + 1
        M, w = self.M, self.w
        prec = self._embed_prec()
        om = cache.omega(M, self.P)
        if w:
            om = TSeries([c.lift_to_w(w) for c in om.coeffs])
        # t embedded: t = -u^{q-1} inverse...; t = -tilde^{q-1} => t^1 has
        # exponent -(q-1), coefficient -1
        t_emb = embed_poly(PolyT.variable(ctx), prec, w=w)
        T_minus_t = TSeries.from_tilde_coeffs(
            [-t_emb, TildeSeries.one(ctx, prec, w=w)])
        one = TSeries.one(ctx, 1, prec, w=w)
        zero = TSeries.zero(ctx, 1, prec, w=w)

        self.Q = _mat_zero_like(ctx, n, 1, prec, w)
        self.Ddiag = _mat_zero_like(ctx, n, 1, prec, w)
        self.Lambda = _mat_zero_like(ctx, n, 1, prec, w)
        self.omega_pows = []
        for i in range(n):
            self.Q[i][i] = one
            wt = self.weights[i]
            self.Ddiag[i][i] = T_minus_t.pow(wt, order=M) if wt else one
            self.Lambda[i][i] = om.pow(wt, order=M) if wt else one
        for slot in range(self.r):
            self.Q[slot + 1][slot] = self._interp_factor(slot)
            self.omega_pows.append(om.pow(self.s[slot], order=M))
        self.Phi = mat_mul(mat_twist(self.Q, -1, max_w=self.w + 1),
                           self.Ddiag, self.M)

    # -- the L recursion -----------------------------------------------

    def _factor(self, slot):
        """Omega^{s_slot} Q_{slot+2, slot+1} (1-based: Omega^{s_i} Q_{i+1,i})."""
        return self.omega_pows[slot].mul(self.Q[slot + 1][slot], order=self.M)

    def solve_L(self):
        """L_{i+1,i} = sum_k (Omega^{s_i} Q_{i+1,i})^{(k)};
        L_{ij} = sum_k (Omega^{s_{i-1}} Q_{i,i-1} L_{i-1,j}^{(1)})^{(k)}."""
        ctx = self.ctx
        n = self.r + 1
        cap = self._embed_prec()
        L = _mat_zero_like(ctx, n, 1, cap, self.w)
        for i in range(n):
            L[i][i] = TSeries.one(ctx, 1, cap, self.w)
        for i in range(1, n):
            for j in range(i - 1, -1, -1):
                if j == i - 1:
                    f = self._factor(i - 1)
                else:
                    f = self._factor(i - 1).mul(L[i - 1][j].twist(1),
                                                order=self.M)
                L[i][j] = _twisted_sum(f, cap)
        self.L = L
        return L

    def recursion_residual(self, i, j):
        """L_{ij} - Omega^{s_{i-1}} Q_{i,i-1} L_{i-1,j}^{(1)} - L_{ij}^{(1)}
        (1-based i > j), which must vanish to precision."""
        Lm = self.L
        f = self._factor(i - 2).mul(Lm[i - 2][j - 1].twist(1), order=self.M)
        res = Lm[i - 1][j - 1] - f - Lm[i - 1][j - 1].twist(
            1, prec_cap=self._embed_prec())
        return res

    def closed_form_bottom_left(self):
        """L_{r+1,1} = sum over i_1 > ... > i_r >= 0 of
        prod_j (Omega^{s_j} Q_{j+1,j})^{(i_j)}, via prefix-sum dynamic
        programming over the twist indices (independent cross-check of the
        recursive solve)."""
        cap = self._embed_prec()
        zero = TSeries.zero(self.ctx, 1, cap, self.w)

        def prefix_at(cum, i):
            # sum of the deeper layer over indices <= i
            if cum is None or i < 0:
                return zero
            return cum[min(i, len(cum) - 1)]

        cum = None  # prefix sums of the layer for slots (slot+1)..r
        for slot in range(self.r - 1, -1, -1):
            layer = []
            g = self._factor(slot).truncate(cap)
            i = 0
            while not _tseries_is_zero(g):
                if slot == self.r - 1:
                    layer.append(g)
                else:
                    layer.append(g.mul(prefix_at(cum, i - 1), order=self.M))
                g = g.twist(1, prec_cap=cap)
                i += 1
            new_cum = []
            acc = zero
            for v in layer:
                acc = acc + v
                new_cum.append(acc)
            cum = new_cum or [zero]
        return cum[-1]

    # -- uniformizability ----------------------------------------------

    def assemble_psi_and_check(self):
        """Psi = Lambda L; checks the twisted difference equation
        Phi^{(1)} Psi^{(1)} = Psi (equivalent to Phi Psi = Psi^{(-1)} but
        avoids fractional-lattice refinement).  Returns (Psi, ok, worst)."""
        if self.L is None:
            self.solve_L()
        self.Psi = mat_mul(self.Lambda, self.L, self.M)
        cap = self._embed_prec()
        lhs = mat_mul(mat_twist(self.Phi, 1, prec_cap=cap),
                      mat_twist(self.Psi, 1, prec_cap=cap), self.M)
        ok = True
        worst = None
        n = self.r + 1
        for i in range(n):
            for j in range(n):
                res = lhs[i][j] - self.Psi[i][j]
                for k, c in enumerate(res.coeffs):
                    v, p = residual_valuation(c)
                    if v is not None:
                        ok = False
                        if worst is None or v < worst[0]:
                            worst = (v, i, j, k)
        return self.Psi, ok, worst

    # -- evaluation at T = t -------------------------------------------

    def psi_at_t(self, N):
        """Lower-triangular matrix of TildeSeries: Psi entries at T = t."""
        if self.Psi is None:
            self.assemble_psi_and_check()
        n = self.r + 1
        ctx = self.ctx
        Ns = N * ctx.q**self.w
        out = [[TildeSeries.zero(ctx, Ns, self.w) for _ in range(n)]
               for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                out[i][j] = self.Psi[i][j].eval_at_t(Ns)
        return out


# -- precision planning ----------------------------------------------------

def plan_truncations(cache, s, N):
    """(M, P): T-order and coefficient precision adequate for evaluating the
    bundle of `s` at T = t with target precision N.  The order follows the
    geometric coefficient-valuation growth of Omega; the precision budget
    covers the losses from multiplying by the polynomial entries (negative
    valuations of embedded H and (T-t) powers)."""
    s = as_composition(s)
    q = cache.ctx.q
    weight = s.weight
    max_T = max(cache.h_deg_T(si - 1) for si in s)
    M = cache.omega_order_for(N) + weight + max_T + 4
    # entries behave like Omega^weight, whose T^k coefficient valuation grows
    # only like weight * q^(k/weight); raise the order until the omitted tail
    # clears the evaluation target at T = t
    while (weight * q ** ((M - max_T - 4) // weight + 1)
           - M * (q - 1)) < N + q + 8:
        M += 1
    loss = (q - 1) * (sum(cache.h_deg_t(si - 1) for si in s)
                      + 2 * weight + s.depth + 6)
    P = N + M * (q - 1) + q + 8 + loss
    return M, P


def build_motive(cache, s, M=None, N=150, delays=None):
    """Assemble Q, Ddiag, Lambda, Phi for the composition (L not yet solved)."""
    if M is None:
        M, P = plan_truncations(cache, s, N)
    else:
        _, P = plan_truncations(cache, s, N)
    return MotiveBundle(cache, s, M, P, delays=delays)


# -- symbolic Z-expressions ------------------------------------------------
# A Z-expression is a dict {key: coeff mod p} where key is a sorted tuple of
# factors and each factor is a tuple of indices: Z_{i j ...} stands for
# Gamma_{s_i} Gamma_{s_j} ... zeta(s_i, s_j, ...).

def z_const(c=1):
    return {(): c} if c else {}


def z_label(seq):
    return {(tuple(seq),): 1}


def _z_trim(expr, p):
    return {k: c % p for k, c in expr.items() if c % p}


def z_add(a, b, p):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return _z_trim(out, p)


def z_neg(a, p):
    return _z_trim({k: -c for k, c in a.items()}, p)


def z_mul(a, b, p):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(sorted(ka + kb))
            out[k] = out.get(k, 0) + ca * cb
    return _z_trim(out, p)


def z_shift(a, k):
    return {tuple(tuple(i + k for i in f) for f in key): c
            for key, c in a.items()}


def z_format(expr):
    if not expr:
        return "0"
    parts = []
    for key in sorted(expr, key=lambda k: (len(k), k)):
        c = expr[key]
        factors = ["Z" + "".join(str(i) for i in f) for f in key]
        body = "*".join(factors) if factors else "1"
        if c != 1 or not factors:
            body = (f"{c}*{body}" if factors else str(c))
        parts.append(body)
    out = parts[0]
    for part in parts[1:]:
        out += " + " + part
    return out


def z_eval(cache, expr, s, N):
    """Numeric value of a Z-expression for the composition s, mod u^N."""
    s = as_composition(s)
    ctx = cache.ctx
    total = TildeSeries.zero(ctx, N)
    for key, c in expr.items():
        term = TildeSeries.one(ctx, N).scale(ctx.int_embed(c))
        for factor in key:
            sub = tuple(s[i - 1] for i in factor)
            val = zeta(cache, sub, N)
            for si in sub:
                val = val * cache.gamma_series(si, N)
            term = (term * val).truncate(N)
        total = total + term
    return total.truncate(N)


def normalized_period_column(r, p):
    """Symbolic first column of the normalized period matrix: entry i of the
    returned list (1-based, i = 1..r+1) is p'_{i1}, from the recursion
    p'_{i1} = -(p'_{i2} Z_1 + ... + p'_{ii} Z_{1..i-1}) and the shift law
    p'_{ij} = p'_{(i-j+1)1} with indices raised by j-1."""
    col = [None, z_const(1)]
    for i in range(2, r + 2):
        acc = {}
        for j in range(2, i + 1):
            pij = z_shift(col[i - j + 1], j - 1)
            acc = z_add(acc, z_mul(pij, z_label(range(1, j)), p), p)
        col.append(z_neg(acc, p))
    return col


# -- the period matrix -----------------------------------------------------

def _lower_tri_inverse(psi, N):
    """Exact inverse of a lower-triangular matrix of TildeSeries."""
    n = len(psi)
    ctx = psi[0][0].ctx
    w = max(e.w for row in psi for e in row)
    out = [[TildeSeries.zero(ctx, N * ctx.q**w, w) for _ in range(n)]
           for _ in range(n)]
    for j in range(n):
        for i in range(j, n):
            if i == j:
                out[i][j] = psi[i][i].inv()
            else:
                acc = None
                for k in range(j, i):
                    t = psi[i][k] * out[k][j]
                    acc = t if acc is None else acc + t
                out[i][j] = -(psi[i][i].inv() * acc)
    return out


class NormalizedPeriods:
    """Period matrix of a bundle, with pi-tilde powers divided out.

    psi_t: Psi at T = t; p: its inverse; psi_norm, p_norm: normalized
    entries; z_column: symbolic p'_{i1} as Z-expressions.
    """

    def __init__(self, cache, s, bundle, psi_t, N):
        self.cache = cache
        self.s = as_composition(s)
        self.bundle = bundle
        self.N = N
        self.psi_t = psi_t
        r = self.s.depth
        self.r = r
        ctx = cache.ctx
        self.p = _lower_tri_inverse(psi_t, N)
        weights = bundle.weights
        Ns = N * ctx.q**max(e.w for row in psi_t for e in row)
        self.psi_norm = [[None] * (r + 1) for _ in range(r + 1)]
        self.p_norm = [[None] * (r + 1) for _ in range(r + 1)]
        Np = N + 2 * ctx.q * weights[0] + 8  # pad for negative valuations
        for i in range(r + 1):
            for j in range(i + 1):
                pw_j = cache.pi_tilde_pow(weights[j], Np)
                pw_i = cache.pi_tilde_pow(-weights[i], Np)
                self.psi_norm[i][j] = (self.psi_t[i][j].reduce_lattice()
                                       * pw_j).truncate(N)
                self.p_norm[i][j] = (self.p[i][j].reduce_lattice()
                                     * pw_i).truncate(N)
        self.z_column = normalized_period_column(r, ctx.p)

    def bottom_left_expression(self):
        return z_format(self.z_column[self.r + 1])

    def check_psi_entries(self, N=None):
        """psi'_{ik} = Z_{k(k+1)...(i-1)} for i > k and 1 on the diagonal."""
        N = N or self.N
        for i in range(self.r + 1):
            for k in range(i + 1):
                if i == k:
                    expected = z_const(1)
                else:
                    expected = z_label(range(k + 1, i + 1))
                val = z_eval(self.cache, expected, self.s, N)
                if not series_eq(self.psi_norm[i][k].truncate(N), val, prec=N):
                    return False, (i + 1, k + 1)
        return True, None

    def check_p_entries(self, N=None):
        """p'_{ij} equals the shifted symbolic column entry: covers both the
        recursion for the first column and the shift law."""
        N = N or self.N
        for i in range(self.r + 1):
            for j in range(i + 1):
                expr = z_shift(self.z_column[i - j + 1], j)
                val = z_eval(self.cache, expr, self.s, N)
                if not series_eq(self.p_norm[i][j].truncate(N), val, prec=N):
                    return False, (i + 1, j + 1)
        return True, None


def period_matrix(cache, s, N):
    """Build, solve, check and invert the bundle of s; entries normalized by
    pi-tilde powers and labelled by Z-expressions."""
    s = as_composition(s)
    q = cache.ctx.q
    N_eval = N + 3 * q * s.weight + q + 8
    bundle = build_motive(cache, s, N=N_eval)
    _, ok, worst = bundle.assemble_psi_and_check()
    if not ok:
        raise ArithmeticError(
            f"difference equation violated at {worst}; "
            "construction or precision bug")
    psi_t = bundle.psi_at_t(N_eval)
    return NormalizedPeriods(cache, s, bundle, psi_t, N)


# -- degenerate values as periods ------------------------------------------

def _delays_for_strict_set(strict, r):
    """Slot delays realizing the weak-inequality degree shape whose strict
    positions are exactly `strict`: w_r = 0 and, going up, the delay grows by
    one across each weak position."""
    w = [0] * r
    for j in range(r - 2, -1, -1):
        w[j] = w[j + 1] + (0 if (j + 1) in strict else 1)
    return tuple(w)


class DegenerateMotive:
    """Signed family of delayed bundles realizing a degenerate value.

    One staggered-delay bundle turns the strictly decreasing twist chain into
    a weak-inequality degree shape (degrees may tie across delayed
    positions), i.e. its bottom-left period is sum_{I' >= I} of the values
    with jumps exactly I'.  Inclusion-exclusion over the supersets isolates
    the jumps-exactly-I value."""

    def __init__(self, cache, s, I, M=None, N=150):
        self.cache = cache
        self.s = as_composition(s)
        self.I = frozenset(I)
        r = self.s.depth
        if not self.I.issubset(range(1, r)):
            raise ValueError("jump set out of range")
        self.N = N
        free = sorted(set(range(1, r)) - self.I)
        self.terms = []
        for k in range(len(free) + 1):
            for extra in itertools.combinations(free, k):
                strict = self.I | set(extra)
                delays = _delays_for_strict_set(strict, r)
                sign = (-1) ** len(extra)
                bundle = build_motive(cache, self.s, M=M, N=N, delays=delays)
                self.terms.append((sign, strict, bundle))

    def max_lattice_exponent(self):
        return max(b.w for _, _, b in self.terms)

    def bottom_left_period(self):
        """Signed sum of L_{r+1,1}|_{T=t}; equals
        prod Gamma_{s_i} * zeta_I(s) / pi~^{weight} mod u^N."""
        ctx = self.cache.ctx
        total = None
        for sign, _, bundle in self.terms:
            bundle.solve_L()
            Ns = self.N * ctx.q**bundle.w
            v = bundle.L[self.s.depth][0].eval_at_t(Ns).reduce_lattice()
            v = v.truncate(self.N)
            if sign < 0:
                v = -v
            total = v if total is None else (total + v).truncate(self.N)
        return total

    def expected_value(self):
        cache, s, N = self.cache, self.s, self.N
        val = zeta_I(cache, s, self.I, N)
        for si in s:
            val = (val * cache.gamma_series(si, N)).truncate(N)
        return (val * cache.pi_tilde_pow(-s.weight, N)).truncate(N)


def degenerate_motive(cache, s, I, M=None, N=150):
    return DegenerateMotive(cache, s, I, M=M, N=N)


# -- integrality of the inverse-twisted interpolation polynomials ----------

def poly_is_qth_power(poly):
    """Whether an F_q[t] polynomial is a q-th power (all exponents with
    nonzero coefficient divisible by q; coefficients are automatically q-th
    powers in F_q)."""
    q = poly.ctx.q
    return all(k % q == 0 for k in range(poly.degree + 1)
               if poly.coeff(k) != poly.ctx.zero)


def phi_integrality_check(cache, s_max):
    """For each s <= s_max: is every t-coefficient of H_s a q-th power
    (equivalently, does the inverse twist of H_s stay over F_q[t][T])?
    Returns a list of (s, ok)."""
    report = []
    for s in range(s_max + 1):
        ok = all(poly_is_qth_power(h) for h in cache.H(s))
        report.append((s, ok))
    return report
