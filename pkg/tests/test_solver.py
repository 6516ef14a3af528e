from itertools import combinations

import pytest

from tic import SetFamily, lex_segment, total_intersection
from tic.canonical import is_isomorphic
from tic.solver import (
    all_optimal_families, completion_bound, max_total_intersection, resolve_workers,
    upper_bound_remaining,
)


def brute(n, k, M):
    sets = list(combinations(range(1, n + 1), k))
    return max(total_intersection(SetFamily(n, k, f)) for f in combinations(sets, M))


def test_empty_prefix_bound():
    assert upper_bound_remaining([0, 0, 0, 0], 2, 2, cap=2) == 8


def test_bound_with_no_slots_is_exact():
    deg = [3, 1, 2, 0]
    assert upper_bound_remaining(deg, 0, 2, cap=3) == 14


def test_completion_bound_respects_frozen_and_cap():
    # two frozen elements keep their degrees; the rest may rise to the cap
    assert completion_bound([2, 2, 0, 0], 2, 2, cap=1, slots=1) == 4 + 4 + 1 + 1


@pytest.mark.parametrize("n,k,M", [(5, 2, 4), (5, 3, 5), (6, 2, 6), (6, 3, 3), (5, 2, 7)])
def test_against_brute_force(n, k, M):
    assert max_total_intersection(n, k, M).mi_value == brute(n, k, M)


def test_anchor_optima():
    res = max_total_intersection(6, 3, 4, enumerate_all=True)
    assert res.mi_value == 36 and len(res.optima_canonical) == 2
    assert total_intersection(res.witness) == 36
    res = max_total_intersection(6, 2, 10)
    k5 = SetFamily.from_sets(6, 2, combinations(range(1, 6), 2))
    assert res.mi_value == 80 and is_isomorphic(res.witness, k5)
    assert res.mi_value > total_intersection(lex_segment(6, 2, 10))


def test_all_optimal_families_4_2_3():
    classes = all_optimal_families(4, 2, 3)
    assert len(classes) == 2


def test_node_limit_marks_inexact():
    res = max_total_intersection(7, 3, 10, node_limit=50)
    assert not res.exact and res.status == "inexact"
    assert res.mi_value <= 180
    with pytest.raises(RuntimeError):
        all_optimal_families(7, 3, 10, node_limit=50)


def test_invalid_size():
    with pytest.raises(ValueError):
        max_total_intersection(4, 2, 7)
    with pytest.raises(ValueError):
        max_total_intersection(4, 2, 0)


def test_workers_env(monkeypatch):
    monkeypatch.setenv("TIC_THREADS", "3")
    assert resolve_workers(None) == 3
    assert resolve_workers(2) == 2
    monkeypatch.delenv("TIC_THREADS")
    assert resolve_workers(None) == 1
    with pytest.raises(ValueError):
        resolve_workers(0)


def test_to_dict_without_timing_is_stable():
    a = max_total_intersection(5, 2, 5).to_dict(timing=False)
    b = max_total_intersection(5, 2, 5, threads=2).to_dict(timing=False)
    assert a == b and "wall_time" not in a
