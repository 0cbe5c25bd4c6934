import pytest

from carlitz_mzv import PolyT, series_eq, zeta, zeta_I
from carlitz_mzv import motive
from carlitz_mzv.motive import (build_motive, degenerate_motive,
                                normalized_period_column, period_matrix,
                                phi_integrality_check, poly_is_qth_power,
                                z_format)
from conftest import shared_cache


@pytest.mark.parametrize("p,m", [(3, 1), (2, 1)])
@pytest.mark.parametrize("s", [(1,), (2,), (1, 1), (2, 1)])
def test_bundle_solution_and_periods(p, m, s):
    cc = shared_cache(p, m)
    N = 80
    b = build_motive(cc, s, N=N)
    psi, ok, worst = b.assemble_psi_and_check()
    assert ok, (cc.ctx.q, s, worst)
    # closed form equals the recursive solution
    r = len(s)
    res = b.closed_form_bottom_left() - b.L[r][0]
    assert motive._tseries_is_zero(res)
    # the bottom-left entry at T = t carries the Gamma-scaled multizeta value
    v = b.L[r][0].eval_at_t(N).reduce_lattice().truncate(N)
    expect = zeta(cc, s, N)
    for si in s:
        expect = (expect * cc.gamma_series(si, N)).truncate(N)
    expect = (expect * cc.pi_tilde_pow(-sum(s), N)).truncate(N)
    assert series_eq(v, expect, prec=N), (cc.ctx.q, s)


def test_recursion_residuals_vanish():
    cc = shared_cache(3, 1)
    b = build_motive(cc, (2, 1), N=60)
    b.solve_L()
    for i in range(2, b.r + 2):
        for j in range(1, i):
            res = b.recursion_residual(i, j)
            assert motive._tseries_is_zero(res), (i, j)


def test_normalized_column_symbolics():
    # rank 2, 3, 4 bottom entries of the inverse, as Z-expressions
    col = normalized_period_column(3, 5)
    assert z_format(col[2]) == "4*Z1"
    assert z_format(col[3]) == "4*Z12 + Z1*Z2"
    assert z_format(col[4]) == "4*Z123 + Z1*Z23 + Z12*Z3 + 4*Z1*Z2*Z3"


@pytest.mark.parametrize("s", [(1,), (2, 1), (1, 1, 1)])
def test_period_matrix_entries_and_recursion(s):
    cc = shared_cache(3, 1)
    np_ = period_matrix(cc, s, 60)
    ok, where = np_.check_psi_entries()
    assert ok, ("psi", s, where)
    ok, where = np_.check_p_entries()
    assert ok, ("p", s, where)


@pytest.mark.parametrize("p,m", [(3, 1), (2, 1)])
def test_degenerate_motive_bottom_left(p, m):
    cc = shared_cache(p, m)
    dm = degenerate_motive(cc, (1, 1), set(), N=60)
    got = dm.bottom_left_period()
    exp = dm.expected_value()
    assert series_eq(got, exp, prec=60)
    # a genuinely refined exponent lattice appears along the way
    assert dm.max_lattice_exponent() >= 1


def test_degenerate_motive_full_jump_set_is_plain():
    cc = shared_cache(3, 1)
    dm = degenerate_motive(cc, (2, 1), {1}, N=60)
    assert len(dm.terms) == 1 and dm.terms[0][2].w == 0
    assert series_eq(dm.bottom_left_period(), dm.expected_value(), prec=60)


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2)])
def test_phi_entries_are_integral_and_not_qth_powers(p, m):
    cc = shared_cache(p, m)
    rep = phi_integrality_check(cc, 3 * cc.ctx.q)
    assert rep and all(ok for _, ok in rep)
    assert not poly_is_qth_power(PolyT.from_int_coeffs(cc.ctx, [1, 1]))
