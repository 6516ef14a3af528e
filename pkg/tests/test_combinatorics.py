from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from tic.combinatorics import (
    KSubset, all_k_subsets, binom, from_mask, hockey_stick_prefix, lex_compare,
    lex_rank, lex_unrank, to_mask,
)


def test_binom_edges():
    assert binom(5, 2) == 10
    assert binom(5, 0) == 1 and binom(5, 5) == 1
    assert binom(3, 4) == 0 and binom(3, -1) == 0
    assert binom(70, 35) == 112186277816662845432
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_ksubset_validation():
    A = KSubset.of([3, 1], 5)
    assert A.elements == (1, 3) and A.k == 2
    assert A.mask == 0b101
    with pytest.raises(ValueError):
        KSubset((1, 1), 5)
    with pytest.raises(ValueError):
        KSubset((0, 2), 5)
    with pytest.raises(ValueError):
        KSubset((2, 6), 5)


def test_lex_compare_uses_min_of_symmetric_difference():
    n = 6
    sets = list(combinations(range(1, n + 1), 3))
    for A in sets:
        for B in sets:
            if A == B:
                assert lex_compare(A, B) == 0
                continue
            m = min(set(A) ^ set(B))
            assert (lex_compare(A, B) < 0) == (m in A)


def test_lex_compare_rejects_mixed_sizes():
    with pytest.raises(ValueError):
        lex_compare((1, 2), (1, 2, 3))


@given(st.integers(1, 14).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_rank_unrank_roundtrip(nk):
    n, k = nk
    total = binom(n, k)
    for r in {0, total // 2, total - 1}:
        assert lex_rank(lex_unrank(r, n, k), n) == r


def test_rank_matches_enumeration_order():
    for i, A in enumerate(all_k_subsets(7, 3)):
        assert lex_rank(A, 7) == i
        assert lex_unrank(i, 7, 3).elements == A
    with pytest.raises(ValueError):
        lex_unrank(35, 7, 3)


def test_masks_roundtrip():
    assert to_mask((1, 4)) == 0b1001
    assert from_mask(0b1001) == (1, 4)


def test_hockey_stick_prefix():
    assert hockey_stick_prefix(6, 2, 2) == binom(5, 2) + binom(4, 2)
    assert hockey_stick_prefix(6, 2, 2, start=2) == binom(4, 2) + binom(3, 2)
    assert hockey_stick_prefix(6, 3, 0) == 0
