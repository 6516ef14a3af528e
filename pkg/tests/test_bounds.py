import random
from fractions import Fraction

import pytest

from tic import SetFamily, lex_segment
from tic.bounds import (
    BoundReport, convex_max, convex_max_vertices, coro2_bound, coro4_bound,
    hypothesis_constant, min_star_union_size, sandwich_verdict, star_formula_I,
    theorem_hypotheses_satisfied, verify_sandwich,
)
from tic.constructions import full_t_star, lex_t_segment
from tic.family import total_intersection


def test_convex_max_examples():
    res = convex_max(0, 5, 12, 3)
    assert res.value == 54 and res.witness == (5, 5, 2) and res.r0 == 2
    assert convex_max(2, 2, 6, 3).value == 12
    res = convex_max(0, 3, 3, 3)
    assert res.value == 9 and res.witness == (3, 0, 0)


def test_convex_max_rationals_and_oracle():
    rng = random.Random(2)
    for _ in range(50):
        v = rng.randint(1, 6)
        a = Fraction(rng.randint(0, 9), rng.randint(1, 4))
        b = a + Fraction(rng.randint(0, 9), rng.randint(1, 4))
        M = (v - 1) * a + b + (b - a) * (v - 1) * Fraction(rng.randint(0, 10), 10)
        res = convex_max(a, b, M, v)
        assert res.value == convex_max_vertices(a, b, M, v)
        assert sum(res.witness) == M
        assert sum(x * x for x in res.witness) == res.value


def test_convex_max_rejects_bad_input():
    with pytest.raises(ValueError):
        convex_max(0, 5, 16, 3)
    with pytest.raises(ValueError):
        convex_max(3, 2, 5, 2)
    with pytest.raises(TypeError):
        convex_max(0, 5.0, 12, 3)


def test_hypotheses_examples():
    rep = theorem_hypotheses_satisfied(10, 3, 1, 1, Fraction(1, 2))
    assert rep.required_n == 864000 and rep.hypotheses_met is False
    rep = theorem_hypotheses_satisfied(10**6, 2, 1, 0, Fraction(1, 2))
    assert rep.required_n == 24000 and rep.hypotheses_met is True
    rep = theorem_hypotheses_satisfied(10**6, 2, 1, 0, Fraction(1, 10**6))
    assert rep.hypotheses_met is False and "delta outside admissible range" in rep.notes


def test_hypothesis_constant_growth():
    c1 = hypothesis_constant(1, 3, 2, 1)
    assert c1 == 10 ** 6 * (9 * 16 * 2 ** 7)
    assert hypothesis_constant(2, 3, 2, 1) == 2 * 10 ** 14 * (9 * 16 * 2 ** 7) ** 2
    rep = theorem_hypotheses_satisfied(10**9, 3, 2, 1, 1)
    assert rep.hypotheses_met is False and rep.required_n > 10 ** 100


def test_coro2_examples():
    rep = coro2_bound(10, 3, 1, 0)
    assert rep.bound_value == 1872 and rep.reference_value == 1872 and rep.verdict == "tight"
    rep = coro2_bound(10, 3, 1, 1)
    assert (rep.bound_value, rep.reference_value) == (3104, 4392)
    assert rep.bound_holds is False and rep.verdict == "bound-violated"
    # read as the start of the next level, the same size is tight
    assert rep.alt_bound == 4392 and coro2_bound(10, 3, 1, 0).alt_bound is None


def test_coro4_examples():
    rep = coro4_bound(8, 3, 2, 0, 1)
    assert (rep.bound_value, rep.reference_value, rep.verdict) == (72, 78, "bound-violated")
    assert rep.alt_bound == 78
    rep = coro4_bound(8, 3, 2, 1, 0)
    assert rep.bound_value == 78 and rep.verdict == "tight"
    with pytest.raises(ValueError):
        coro4_bound(8, 3, 2, 1, 0, M=7)
    with pytest.raises(ValueError):
        coro4_bound(8, 3, 1, 1, 0)


def test_fractional_size_has_no_reference():
    rep = coro2_bound(10, 3, 1, Fraction(1, 3))
    assert rep.reference_value is None and rep.verdict == "no-reference"


def test_report_roundtrip():
    rep = coro2_bound(9, 3, 2, Fraction(3, 7))
    again = BoundReport.from_dict(rep.to_dict())
    assert again.to_dict() == rep.to_dict()
    row = rep.csv_row()
    assert (row["delta_num"], row["delta_den"]) == (3, 7)


def test_verify_sandwich():
    F = lex_segment(8, 3, 30)
    assert verify_sandwich(F, 1, 1)
    assert verify_sandwich(F.relabel([8, 7, 6, 5, 4, 3, 2, 1]), 1, 1)
    # same size, not between two lex levels
    G = SetFamily.from_sets(8, 3, list(lex_segment(8, 3, 21).sets)
                            + [(2, 3, x) for x in range(4, 9)] + [(4, 5, 6), (4, 5, 7),
                                                                   (4, 5, 8), (4, 6, 7)])
    assert len(G) == 30 and not verify_sandwich(G, 1, 1)
    with pytest.raises(ValueError):
        verify_sandwich(F, 1, 0)


def test_sandwich_verdict_three_valued():
    v = sandwich_verdict(lex_segment(8, 3, 30))
    assert v.verdict == "holds" and v.r == 1 and v.hypotheses.hypotheses_met is False
    v = sandwich_verdict(SetFamily.from_sets(6, 3, [(1, 2, 3), (4, 5, 6)]))
    assert v.verdict == "fails"
    v = sandwich_verdict(lex_segment(5, 2, 6), t=2)
    assert v.verdict == "not-applicable"


def test_star_union():
    res = min_star_union_size(7, 3, 1, 2)
    assert res.minimum == res.expected == len(lex_t_segment(7, 3, 1, 2))
    assert res.unique and res.matches_lex
    res = min_star_union_size(6, 2, 2, 2)
    # full 2-stars of 2-sets are single edges: a path and a matching tie
    assert res.minimum == 2 and not res.unique
    with pytest.raises(ValueError):
        min_star_union_size(4, 2, 3, 1)


def test_star_formula():
    for n in range(2, 10):
        for k in range(1, n + 1):
            assert star_formula_I(n, k) == total_intersection(full_t_star(n, k, (1,)))


def test_star_union_grid_with_k_above_t():
    for n in range(2, 9):
        for k in range(2, min(4, n) + 1):
            for t in range(1, min(2, k - 1) + 1):
                for r in range(1, 4):
                    if t + r - 1 > n:
                        continue
                    res = min_star_union_size(n, k, t, r)
                    assert res.minimum == res.expected, (n, k, t, r)
                    assert res.unique and res.matches_lex, (n, k, t, r)
