"""Validity checking, column statistics, and the two array families."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sppda.arrays import (
    STAR,
    AssociationProfile,
    CodeAbsentError,
    IndexOutOfRangeError,
    InvalidPdaError,
    InvalidPermutationError,
    NonPositiveCodeError,
    NonRectangularError,
    ParameterError,
    PdaArray,
    all_star_row_count,
    binom,
    canonicalize_codes,
    construction_a_pda,
    enumerate_profiles,
    man_pda,
    normalize_grid,
    permute_columns,
    phi,
    regularity,
    verify_pda,
    xi,
)

from conftest import (
    GOLDEN_SP,
    SMALL_P2,
    WIDE_P1,
    WIDE_P1_OPT,
    WIDE_P1_PERM,
    WIDE_P2,
    WIDE_P2_OPT,
    WIDE_P2_PERM,
    random_pda,
)


def oracle_verify(grid):
    """Independent reference check of C1, C2, C3 by direct nested loops."""
    f, k = len(grid), len(grid[0])
    stars = [sum(1 for j in range(f) if grid[j][c] == STAR) for c in range(k)]
    if len(set(stars)) != 1:
        return False
    codes = sorted({e for row in grid for e in row if e != STAR})
    if codes != list(range(1, len(codes) + 1)):
        return False
    for j1 in range(f):
        for c1 in range(k):
            for j2 in range(f):
                for c2 in range(k):
                    if (j1, c1) >= (j2, c2):
                        continue
                    e = grid[j1][c1]
                    if e == STAR or grid[j2][c2] != e:
                        continue
                    if j1 == j2 or c1 == c2:
                        return False
                    if grid[j1][c2] != STAR or grid[j2][c1] != STAR:
                        return False
    return True


small_grids = st.integers(min_value=2, max_value=4).flatmap(
    lambda k: st.lists(
        st.lists(st.integers(min_value=0, max_value=3), min_size=k, max_size=k),
        min_size=2, max_size=4,
    ).map(lambda rows: tuple(tuple(r) for r in rows))
)


class TestVerify:
    def test_golden_grids_valid(self):
        for g in (GOLDEN_SP, SMALL_P2, WIDE_P1, WIDE_P2, WIDE_P1_OPT, WIDE_P2_OPT):
            assert verify_pda(g).ok

    def test_golden_parameters(self):
        assert verify_pda(GOLDEN_SP).params == (5, 6, 4, 3)
        assert verify_pda(SMALL_P2).params == (4, 2, 1, 2)
        assert verify_pda(WIDE_P1).params == (6, 4, 2, 4)
        assert verify_pda(WIDE_P2).params == (6, 3, 1, 6)

    def test_unequal_star_counts(self):
        check = verify_pda(((STAR, 1), (1, 2)))
        assert not check.ok
        assert any(v.kind == "C1" for v in check.violations)

    def test_missing_code(self):
        check = verify_pda(((STAR, 2), (2, STAR)))
        assert not check.ok
        assert any(v.kind == "C2" for v in check.violations)

    def test_code_repeated_in_row(self):
        check = verify_pda(((1, 1), (STAR, STAR)))
        assert any(v.kind == "C3a" for v in check.violations)

    def test_missing_crossing_star(self):
        check = verify_pda(((STAR, 1, STAR), (1, 2, STAR), (STAR, STAR, 2)))
        assert not check.ok
        assert any(v.kind == "C3b" for v in check.violations)

    def test_all_star_degenerate(self):
        assert verify_pda(((STAR, STAR), (STAR, STAR))).params == (2, 2, 2, 0)

    def test_violation_coordinates_are_one_based(self):
        check = verify_pda(((1, 1), (STAR, STAR)))
        v = next(v for v in check.violations if v.kind == "C3a")
        assert v.rows == (1, 1) and v.cols == (1, 2)

    def test_ragged_grid_rejected(self):
        with pytest.raises(NonRectangularError):
            verify_pda(((1, 2), (1,)))
        with pytest.raises(NonRectangularError):
            normalize_grid(())

    def test_negative_entry_rejected(self):
        with pytest.raises(NonPositiveCodeError):
            verify_pda(((-1, STAR),))

    def test_from_grid_rejects_invalid(self):
        with pytest.raises(InvalidPdaError):
            PdaArray.from_grid(((1, 1), (STAR, STAR)))

    @settings(max_examples=300, deadline=None)
    @given(small_grids)
    def test_matches_brute_force_oracle(self, grid):
        assert verify_pda(grid).ok == oracle_verify(grid)

    @settings(max_examples=60, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_accepts_random_valid_arrays(self, rng):
        pda = random_pda(rng, max_cols=6, max_rows=30)
        assert verify_pda(pda.grid).params == (pda.k, pda.f, pda.z, pda.s)


class TestColumnOps:
    def test_column_and_star_rows(self):
        pda = PdaArray.from_grid(GOLDEN_SP)
        assert pda.column(5) == (1, STAR, 3, STAR, STAR, STAR)
        assert pda.star_rows(1) == frozenset({1, 2, 3, 4})
        assert pda.column_codes(4) == frozenset({1, 2})
        with pytest.raises(IndexOutOfRangeError):
            pda.column(6)

    def test_regularity(self):
        assert regularity(man_pda(4, 1)) == 2
        assert regularity(man_pda(5, 2)) == 3
        assert regularity(PdaArray.from_grid(WIDE_P1)) == 3
        # code 1 occurs 4 times, codes 2 and 3 occur 3 times: no single g
        assert regularity(PdaArray.from_grid(GOLDEN_SP)) is None
        assert regularity(man_pda(3, 3)) is None

    def test_permute_columns_golden(self):
        p1 = permute_columns(PdaArray.from_grid(WIDE_P1), WIDE_P1_PERM)
        assert p1.grid == WIDE_P1_OPT
        p2 = permute_columns(PdaArray.from_grid(WIDE_P2), WIDE_P2_PERM)
        assert p2.grid == WIDE_P2_OPT

    def test_permute_columns_preserves_parameters(self):
        pda = PdaArray.from_grid(WIDE_P2)
        out = permute_columns(pda, (5, 4, 3, 2, 1, 0))
        assert (out.k, out.f, out.z, out.s) == (pda.k, pda.f, pda.z, pda.s)
        assert verify_pda(out.grid).ok

    def test_permute_columns_inverse_roundtrip(self):
        pda = PdaArray.from_grid(WIDE_P1)
        perm = (2, 0, 4, 1, 5, 3)
        inv = tuple(perm.index(i) for i in range(6))
        assert permute_columns(permute_columns(pda, perm), inv).grid == pda.grid

    def test_permute_columns_rejects_non_bijection(self):
        with pytest.raises(InvalidPermutationError):
            permute_columns(man_pda(3, 1), (0, 0, 1))

    def test_phi_golden(self):
        p2 = PdaArray.from_grid(WIDE_P2)
        assert [phi(p2, c) for c in range(1, 4)] == [2, 4, 6]
        p2o = PdaArray.from_grid(WIDE_P2_OPT)
        assert [phi(p2o, c) for c in range(1, 7)] == [2, 3, 4, 5, 6, 6]
        with pytest.raises(IndexOutOfRangeError):
            phi(p2, 0)

    def test_xi_golden(self):
        p1 = PdaArray.from_grid(WIDE_P1)
        assert [xi(p1, s) for s in range(1, 5)] == [1, 1, 2, 2]
        assert [xi(man_pda(3, 1), s) for s in range(1, 4)] == [1, 1, 2]
        with pytest.raises(CodeAbsentError):
            xi(p1, 5)

    def test_all_star_row_count(self):
        pda = PdaArray.from_grid(GOLDEN_SP)
        assert all_star_row_count(pda, (1, 2, 3)) == 3
        assert all_star_row_count(pda, (4, 5)) == 3
        assert all_star_row_count(pda, (1, 4)) == 2
        with pytest.raises(IndexOutOfRangeError):
            all_star_row_count(pda, ())

    def test_canonicalize_codes(self):
        assert canonicalize_codes(((STAR, 7), (7, STAR))) == ((STAR, 1), (1, STAR))
        assert canonicalize_codes(((5, 2), (2, 5))) == ((1, 2), (2, 1))


class TestManFamily:
    @pytest.mark.parametrize("k,t", [(k, t) for k in range(1, 9) for t in range(0, k + 1)])
    def test_parameters(self, k, t):
        pda = man_pda(k, t)
        assert (pda.k, pda.f, pda.z, pda.s) == (k, binom(k, t), binom(k - 1, t - 1), binom(k, t + 1))

    def test_regular(self):
        for k in range(2, 8):
            for t in range(0, k):
                assert regularity(man_pda(k, t)) == t + 1

    def test_t_zero_is_single_row(self):
        assert man_pda(4, 0).grid == ((1, 2, 3, 4),)

    def test_t_equal_k_is_all_star(self):
        pda = man_pda(3, 3)
        assert pda.s == 0 and all(e == STAR for row in pda.grid for e in row)

    def test_known_small_instance(self):
        assert man_pda(3, 1).grid == ((STAR, 1, 2), (1, STAR, 3), (2, 3, STAR))

    def test_bad_parameters(self):
        with pytest.raises(ParameterError):
            man_pda(3, 4)
        with pytest.raises(ParameterError):
            man_pda(0, 0)


class TestConstructionAFamily:
    @pytest.mark.parametrize("q,m", [(q, m) for q in (2, 3, 4) for m in (1, 2, 3)])
    def test_parameters(self, q, m):
        pda = construction_a_pda(q, m)
        assert (pda.k, pda.f, pda.z, pda.s) == (q * (m + 1), q ** m, q ** (m - 1), q ** m * (q - 1))

    @pytest.mark.parametrize("q,m", [(q, m) for q in (2, 3, 4) for m in (1, 2, 3)])
    def test_every_code_first_appears_within_q_columns(self, q, m):
        pda = construction_a_pda(q, m)
        assert all(xi(pda, s) <= q for s in range(1, pda.s + 1))

    def test_regular(self):
        for q in (2, 3):
            for m in (1, 2):
                assert regularity(construction_a_pda(q, m)) == m + 1

    def test_bad_parameters(self):
        with pytest.raises(ParameterError):
            construction_a_pda(1, 2)
        with pytest.raises(ParameterError):
            construction_a_pda(2, 0)


class TestAssociationProfile:
    def test_parse_and_accessors(self):
        p = AssociationProfile.parse("6,3,2,1,1,1")
        assert p.parts == (6, 3, 2, 1, 1, 1)
        assert (p.num_groups, p.num_users) == (6, 14)
        assert p.part(2) == 3
        assert [p.group_of_user(k) for k in (1, 6, 7, 9, 10, 14)] == [1, 1, 2, 2, 3, 6]

    def test_group_of_user_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            AssociationProfile((2, 1)).group_of_user(4)

    def test_rejects_increasing(self):
        with pytest.raises(ParameterError):
            AssociationProfile((1, 2))

    def test_rejects_empty_and_negative(self):
        with pytest.raises(ParameterError):
            AssociationProfile(())
        with pytest.raises(ParameterError):
            AssociationProfile((2, -1))

    def test_enumerate_profiles(self):
        got = {p.parts for p in enumerate_profiles(6, 3)}
        assert got == {(4, 1, 1), (3, 2, 1), (2, 2, 2)}
        for total in range(1, 9):
            for length in range(1, total + 1):
                for p in enumerate_profiles(total, length):
                    assert p.num_users == total and p.num_groups == length


def test_binom_out_of_range_is_zero():
    assert binom(3, 5) == 0
    assert binom(3, -1) == 0
    assert binom(-2, 0) == 0
    assert binom(5, 2) == 10
