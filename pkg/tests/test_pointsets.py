import pytest
from hypothesis import given, settings, strategies as st

from cisnim import DomainError, RangeError
from cisnim.analysis import (
    PointSet, b_count, build_Sn, build_U, build_Ubar, f_weight, g_value, h_value, is_hole, r_count, rb_diag, s_contains,
)
from cisnim.analysis.pointsets import count_R, g_of, u_points
from conftest import F_110
from oracles import brute_b, brute_in_s, brute_r


def test_s_membership_examples(t_empty, t110):
    assert s_contains(t_empty, 3, 2)
    assert not s_contains(t_empty, 2, 1)
    assert s_contains(t110, 2, 1)
    assert not s_contains(t110, 1, 2)
    with pytest.raises(RangeError):
        s_contains(t110, 300, 1)


def test_r_and_b_examples(t_empty, t110):
    assert r_count(t_empty, 5, 4) == 3
    assert r_count(t_empty, 8, 4) == 0
    assert r_count(t110, 3, 1) == 0
    assert b_count(t_empty, 3, 2) == 1
    assert b_count(t_empty, 3, 1) == 0
    assert b_count(t_empty, 7, 6) == 3


def test_diagonal_counts(t_empty, t110):
    assert rb_diag(t_empty, 4) == (3, 0)
    r, b = rb_diag(t_empty, 4)
    assert r + 2 * b + 1 == 4
    assert rb_diag(t110, 1) == (1, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 14).flatmap(lambda x: st.tuples(st.just(x), st.integers(0, x - 1))))
def test_counts_match_bruteforce(t110, xy):
    x, y = xy
    assert s_contains(t110, x, y) == brute_in_s(F_110, x, y)
    assert b_count(t110, x, y) == brute_b(F_110, x, y)
    assert r_count(t110, x + 1, y) == brute_r(F_110, x + 1, y)


def test_holes(t_empty, t110):
    assert not is_hole(t_empty, 3, 2)
    assert not is_hole(t_empty, 3, 1)
    assert not is_hole(t_empty, 6, 5)
    assert not any(is_hole(t_empty, x, y) for x in range(1, 64) for y in range(x))
    assert is_hole(t110, 13, 9)
    assert not s_contains(t110, 13, 9) and b_count(t110, 13, 9) > 0


def test_pointset_truncation():
    s = PointSet.from_points([(3, 1), (5, 2)], xmax=6)
    assert (3, 1) in s and (4, 1) not in s
    assert len(s) == 2 and s.xmax == 6
    with pytest.raises(RangeError):
        (7, 1) in s
    assert s.restrict(4).points == frozenset({(3, 1)})
    assert s.with_point((4, 0)).points == frozenset({(3, 1), (5, 2), (4, 0)})
    assert s.with_point((3, 1), present=False) == PointSet.from_points([(5, 2)], xmax=6)


def test_u_with_y_zero_is_the_a_region(t_empty):
    u = build_U(t_empty, 9, 0)
    a_region = {(xp, yp) for xp in range(1, 10) for yp in range(xp) if b_count(t_empty, xp, xp) >= xp - yp}
    assert {p for p in u.points if p[0] < 9} == {p for p in a_region if p[0] < 9}
    assert all(p[1] < 9 for p in u.points)


def test_u_cardinality_is_preserved_along_a_row(t110):
    assert len(build_U(t110, 9, 4)) == len(build_U(t110, 9, 5))
    sizes = {len(u_points(t110, 20, y)) for y in range(21)}
    assert len(sizes) == 1


def test_u_preconditions(t110):
    with pytest.raises(DomainError):
        build_U(t110, 7, 0)
    with pytest.raises(DomainError):
        build_U(t110, 9, 10)


def test_s8_dyadic_block_for_nim(t_empty):
    s8 = build_Sn(t_empty, 8, 40)
    block = {(x, y) for x in range(4, 8) for y in range(4, x)}
    assert {p for p in s8.points if 4 <= p[0] < 8 and 4 <= p[1] < 8} == block


def test_sn_agrees_with_u_below_n(t110):
    s = build_Sn(t110, 12, 100)
    u = build_U(t110, 12, 0)
    assert {p for p in s.points if p[1] < 12} == {p for p in u.points if p[1] < 12}


def test_band_and_mirror_rule(t110):
    n, xmax = 10, 160
    s = build_Sn(t110, n, xmax)
    for (x, y) in s.points:
        if y >= n:
            assert y < x <= 2 * y
            assert (y, x // 2) not in s
    for y in range(n, xmax // 2):
        for x in range(y + 1, min(2 * y, xmax + 1)):
            if (x, y) not in s and x // 2 > y:
                assert (y, x // 2) in s


@pytest.mark.parametrize("x", [9, 12, 20])
def test_ubar_stitching(t110, x):
    xmax = 4 * x + 8
    assert build_Ubar(t110, x, x, xmax) == build_Ubar(t110, x + 1, 0, xmax)


def test_h_examples(t_empty, t110):
    assert h_value(t_empty, 8, 8, 40) == 0
    assert h_value(t110, 9, 36, 72) == 16 * h_value(t110, 9, 9, 18)
    with pytest.raises(DomainError):
        h_value(t110, 9, 36, 50)


@pytest.mark.parametrize("m", [9, 16, 40])
def test_h_counts_crossing_p_positions(t110, m):
    expected = sum(
        1 for y in range(1, m) for z in range(y)
        if t110(y, z) >= m and y < t110(y, z)
    )
    assert h_value(t110, m, m, 2 * m) == expected


def test_f_weight():
    assert f_weight((2, 1), 1) == 4
    assert f_weight((0, 0), 0) == 2
    assert f_weight((3, 2), 4) == 6


def test_g_values(t110):
    assert g_of(PointSet.from_points([], 10), 3).value == 0
    g = g_value(t110, 9, 0, 200)
    assert g.xmax == 200
    seq = [g_value(t110, m, 8, 200).value for m in range(8, 30)]
    assert all(b <= a for a, b in zip(seq, seq[1:]))
    with pytest.raises(DomainError):
        g_value(t110, 7, 4, 200)


def test_g_growth_is_bounded_for_a_well_behaved_game(t110_large):
    c1 = 8
    ratios = [g_value(t110_large, c1, 2 ** k, 1000).value / 8 ** k for k in range(5)]
    c2 = g_value(t110_large, c1, 1, 1000).value + (2 * c1 + 2) ** 2 * (8 / 3 + 8 * (4 * c1 + 6) / 7)
    assert all(r <= c2 for r in ratios)
    assert ratios == sorted(ratios, reverse=True)
