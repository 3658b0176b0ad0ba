import pytest

from cisnim import DomainError, ForbiddenSet, ResourceError, Status, solve_box
from cisnim.oracle import box_positions, partition_violations
from conftest import F_110, F_EMPTY, F_MISERE, F_PAIR


def test_single_position_box():
    sol = solve_box(1)
    assert sol[(0, 0, 0)] is Status.P
    assert len(sol.status) == 1


def test_ordinary_nim_examples():
    sol = solve_box(4)
    assert sol[(3, 2, 1)] is Status.P
    assert sol[(2, 2, 1)] is Status.N


def test_forbidden_110_examples():
    sol = solve_box(4, F_110)
    assert sol[(1, 1, 0)] is Status.FORBIDDEN
    assert sol[(1, 1, 1)] is Status.P
    assert sol[(2, 1, 0)] is Status.P
    assert sol[(2, 2, 0)] is Status.N


def test_misere_examples():
    sol = solve_box(3, F_MISERE)
    assert sol[(0, 0, 0)] is Status.FORBIDDEN
    assert sol[(1, 0, 0)] is Status.P
    assert sol[(1, 1, 0)] is Status.N
    assert sol[(1, 1, 1)] is Status.P


def test_bouton_cross_check():
    sol = solve_box(20)
    for (a, b, c), s in sol.status.items():
        assert (s is Status.P) == (a ^ b ^ c == 0)


@pytest.mark.parametrize("f", [F_EMPTY, F_110, F_PAIR, F_MISERE], ids=["empty", "110", "pair", "misere"])
def test_partition_property(f):
    sol = solve_box(14, f)
    assert partition_violations(sol) == []
    assert all((s is Status.FORBIDDEN) == (p in f.members) for p, s in sol.status.items())


def test_order_is_child_first_and_deterministic():
    order = box_positions(6)
    totals = [p.total for p in order]
    assert totals == sorted(totals)
    assert solve_box(9, F_PAIR).status == solve_box(9, F_PAIR).status


def test_out_of_box_members_are_flagged():
    sol = solve_box(3, ForbiddenSet.of([(5, 0, 0), (1, 1, 0)]))
    assert sol.ignored_forbidden == ((5, 0, 0),)
    assert sol[(1, 1, 0)] is Status.FORBIDDEN


def test_bound_errors():
    with pytest.raises(DomainError):
        solve_box(0)
    with pytest.raises(ResourceError):
        solve_box(200)
    with pytest.raises(ResourceError):
        solve_box(20, max_bound=10)
