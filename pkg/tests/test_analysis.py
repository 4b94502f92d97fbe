from fractions import Fraction

import pytest

from drinfeld_hecke.analysis import (
    IDENTITY_NAMES,
    analyze,
    check_direct_sum,
    check_tt_injective,
    compute_decomposition,
    compute_slopes,
    run_identity_suite,
)
from drinfeld_hecke.errors import InvalidWeightType, ZeroSpace
from drinfeld_hecke.hecke import build_operators, decompose_weight
from drinfeld_hecke.linalg import full_subspace, subspace_eq

VALID_SMALL_GRID = []
for _q in (2, 3, 4, 5):
    for _m in range(1, max(_q - 1, 1) + 1):
        for _n in range(1, 9):
            _k = 2 * _m + (_n - 1) * (_q - 1)
            VALID_SMALL_GRID.append((_q, _k, _m))


def ops_for(q, k, m):
    return build_operators(decompose_weight(q, k, m))


# ---------------------------------------------------------------------------
# decomposition


def test_decomposition_all_new_case():
    ops = ops_for(3, 2, 1)
    dec = compute_decomposition(ops)
    assert dec.dim_level1 == 0
    assert dec.oldspace.dim == 0
    assert subspace_eq(dec.newspace, full_subspace(1, 3))
    assert dec.dims_add_up and dec.intersection_trivial


def test_decomposition_all_old_case():
    ops = ops_for(2, 3, 0)
    dec = compute_decomposition(ops)
    assert dec.dim_level1 == 1
    assert dec.oldspace.dim == 2
    assert dec.newspace.dim == 0
    assert subspace_eq(dec.oldspace, full_subspace(2, 2))
    assert dec.dims_add_up and dec.intersection_trivial


def test_decomposition_mixed_case():
    ops = ops_for(3, 6, 1)
    dec = compute_decomposition(ops)
    assert (dec.dim_level1, dec.oldspace.dim, dec.newspace.dim) == (1, 2, 1)
    assert dec.dims_add_up and dec.intersection_trivial


def test_decomposition_matches_spec_route_on_small_grid():
    # the optimized stacked-kernel route equals intersecting the kernels
    from drinfeld_hecke.hecke import twisted_core_unscaled
    from drinfeld_hecke.linalg import kernel_basis, subspace_intersect
    from drinfeld_hecke.analysis import _subspace_expand, _zdata

    for (q, k, m) in [(2, 3, 1), (2, 6, 1), (3, 6, 1), (3, 8, 2), (5, 10, 1)]:
        ops = ops_for(q, k, m)
        p = ops.wp.p
        dec = compute_decomposition(ops)
        ker_t = kernel_basis(ops.trace, p)
        ker_c = kernel_basis(twisted_core_unscaled(ops), p)
        want = subspace_intersect(ker_t, ker_c, p)
        assert subspace_eq(dec.newspace, want)
        _zdata.cache_clear()


# ---------------------------------------------------------------------------
# injectivity


def test_tt_injective_q2_k3():
    verdict, witness = check_tt_injective(ops_for(2, 3, 0))
    assert verdict is True and witness is None


def test_tt_injective_vacuous_when_no_level_one():
    verdict, witness = check_tt_injective(ops_for(3, 2, 1))
    assert verdict is True and witness is None


# ---------------------------------------------------------------------------
# direct sum


def test_direct_sum_q2_k3():
    ops = ops_for(2, 3, 0)
    dec = compute_decomposition(ops)
    verdict, crosscheck = check_direct_sum(ops, dec)
    assert verdict is True and crosscheck is True


def test_direct_sum_q3_k2():
    ops = ops_for(3, 2, 1)
    dec = compute_decomposition(ops)
    assert check_direct_sum(ops, dec) == (True, True)


# ---------------------------------------------------------------------------
# slopes


def test_slopes_q3_k2():
    ops = ops_for(3, 2, 1)
    table = compute_slopes(ops, compute_decomposition(ops))
    assert table.slopes.zero_count == 0
    assert table.slopes.entries == ((Fraction(1), 1),)


def test_slopes_q2_k3():
    ops = ops_for(2, 3, 0)
    table = compute_slopes(ops, compute_decomposition(ops))
    assert table.slopes.zero_count == 1
    assert table.slopes.entries == ((Fraction(1), 1),)


def test_slopes_q3_k6():
    ops = ops_for(3, 6, 1)
    table = compute_slopes(ops, compute_decomposition(ops))
    assert table.slopes.zero_count == 1
    assert table.slopes.entries == ((Fraction(1), 1), (Fraction(3), 1))


@pytest.mark.parametrize("q,k,m", [(2, 8, 1), (3, 10, 1), (5, 12, 2), (7, 16, 2)])
def test_slope_multiplicities_cover_dimension(q, k, m):
    ops = ops_for(q, k, m)
    table = compute_slopes(ops, compute_decomposition(ops))
    assert table.slopes.total() == ops.wp.n
    assert table.slopes.zero_count >= table.old_zero_count


# ---------------------------------------------------------------------------
# identity suite


def test_identity_suite_q2_k3_all_pass():
    ops = ops_for(2, 3, 0)
    ids = run_identity_suite(ops, compute_decomposition(ops))
    assert tuple(ids.keys()) == IDENTITY_NAMES
    # k = 3 is odd: the eigenvalue check is not evaluated
    assert ids["dirsum_kernel_matches_eigenvectors"] is None
    assert all(v is True for name, v in ids.items() if v is not None)


def test_identity_suite_even_k_evaluates_eigen_check():
    ops = ops_for(3, 6, 1)
    ids = run_identity_suite(ops, compute_decomposition(ops))
    assert ids["dirsum_kernel_matches_eigenvectors"] is True


@pytest.mark.parametrize("q,k,m", sorted(set(VALID_SMALL_GRID)))
def test_identity_suite_small_grid(q, k, m):
    ops = ops_for(q, k, m)
    dec = compute_decomposition(ops)
    ids = run_identity_suite(ops, dec)
    bad = [name for name, v in ids.items() if v is False]
    assert not bad, (q, k, m, bad)


# ---------------------------------------------------------------------------
# full analysis


def test_analyze_report_fields_q2_k3():
    rep = analyze(2, 3, 0)
    assert rep.params.n == 2
    assert rep.dim_level1 == 1 and rep.dim_old == 2 and rep.dim_new == 0
    assert rep.tt_injective and rep.tt_injective_crosscheck
    assert rep.direct_sum and rep.direct_sum_crosscheck
    assert rep.dirsum_det_tvaluation == 5
    assert rep.zero_count == 1
    assert not rep.theorem_violation


def test_analyze_propagates_parameter_errors():
    with pytest.raises(InvalidWeightType):
        analyze(3, 5, 1)
    with pytest.raises(ZeroSpace):
        analyze(5, 4, 4)


def test_analyze_dim_low_rank_theorems():
    # every dim_level1 <= 1 case in a small sample satisfies both theorems
    for (q, k, m) in [(2, 3, 1), (2, 4, 1), (3, 6, 1), (3, 8, 2), (5, 10, 1), (7, 14, 1)]:
        rep = analyze(q, k, m)
        if rep.dim_level1 <= 1:
            assert rep.tt_injective and rep.direct_sum, (q, k, m)
        assert rep.direct_sum == rep.direct_sum_crosscheck
        assert not rep.theorem_violation
