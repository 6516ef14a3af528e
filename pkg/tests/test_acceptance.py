"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary. Running this file directly prints the same lines.
"""
import random
import time
from fractions import Fraction
from itertools import combinations

from tic import (
    SetFamily, coro2_bound, convex_max, full_t_star, is_isomorphic, lex_segment,
    lex_t_segment, local_search, max_total_intersection, min_star_union_size,
    random_family, shift, star_formula_I, total_intersection, total_t_intersection,
)
from tic.bounds import convex_max_vertices
from tic.canonical import canonical_form
from tic.family import pairwise_total_intersection, total_t_intersection_pairs
from tic.hamming import popcount_total_distance, total_hamming_distance


def _corpus(seed: int, count: int = 200):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, 12)
        k = rng.randint(1, min(4, n))
        total = len(list(combinations(range(n), k)))
        M = rng.randint(1, min(30, total))
        out.append(random_family(n, k, M, rng))
    return out


def naive_mi(n, k, M):
    """Every M-subset of C([n], k), no pruning."""
    sets = list(combinations(range(1, n + 1), k))
    best, argmax = None, []
    for fam in combinations(sets, M):
        F = SetFamily(n, k, fam)
        v = total_intersection(F)
        if best is None or v > best:
            best, argmax = v, [F]
        elif v == best:
            argmax.append(F)
    return best, argmax


# -- criteria ----------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    bad = 0
    for F in _corpus(1):
        if total_intersection(F) != pairwise_total_intersection(F):
            bad += 1
        for t in (1, 2, 3):
            if t <= F.k and total_t_intersection(F, t) != total_t_intersection_pairs(F, t):
                bad += 1
    dt = time.perf_counter() - t0
    return bad == 0 and dt < 5, f"200 families, {bad} mismatches, {dt:.2f}s (< 5s)"


def criterion_2():
    t0 = time.perf_counter()
    checks = []
    checks.append(max_total_intersection(4, 2, 2).mi_value == 6)
    r = max_total_intersection(6, 2, 10)
    k5 = SetFamily.from_sets(6, 2, combinations(range(1, 6), 2))
    checks.append(r.mi_value == 80 and is_isomorphic(r.witness, k5))
    r = max_total_intersection(6, 3, 4, enumerate_all=True)
    c43 = SetFamily.from_sets(6, 3, combinations(range(1, 5), 3))
    keys = {canonical_form(G).family.sets for G in r.optima_canonical}
    checks.append(r.mi_value == 36 and len(r.optima_canonical) >= 2
                  and canonical_form(c43).family.sets in keys
                  and canonical_form(lex_segment(6, 3, 4)).family.sets in keys)
    r = max_total_intersection(4, 2, 3, enumerate_all=True)
    star = full_t_star(4, 2, (1,))
    tri = SetFamily.from_sets(4, 2, [(1, 2), (1, 3), (2, 3)])
    keys = {canonical_form(G).family.sets for G in r.optima_canonical}
    checks.append(r.mi_value == 12 and canonical_form(star).family.sets in keys
                  and canonical_form(tri).family.sets in keys)
    dt = time.perf_counter() - t0
    return all(checks) and dt < 60, f"{sum(checks)}/4 anchors, {dt:.2f}s (< 60s)"


def criterion_3():
    t0 = time.perf_counter()
    cases = bad = 0
    for n in range(1, 6):
        for k in range(1, min(3, n) + 1):
            total = len(list(combinations(range(n), k)))
            for M in range(1, min(6, total) + 1):
                cases += 1
                if max_total_intersection(n, k, M).mi_value != naive_mi(n, k, M)[0]:
                    bad += 1
    dt = time.perf_counter() - t0
    return bad == 0 and dt < 120, f"{cases} instances, {bad} mismatches, {dt:.2f}s (< 120s)"


def criterion_4():
    bad = [(n, k) for n in range(2, 15) for k in range(2, n + 1)
           if star_formula_I(n, k) != total_intersection(full_t_star(n, k, (1,)))]
    return not bad, f"2 <= k <= n <= 14, mismatches: {bad}"


def criterion_5():
    size_bad, not_unique, cases = [], [], 0
    for n in range(1, 9):
        for k in range(1, min(4, n) + 1):
            for t in range(1, min(2, k) + 1):
                for r in range(1, 4):
                    if t + r - 1 > n or r > len(list(combinations(range(n), t))):
                        continue
                    cases += 1
                    res = min_star_union_size(n, k, t, r)
                    if res.minimum != len(lex_t_segment(n, k, t, r)):
                        size_bad.append((n, k, t, r))
                    if not res.unique:
                        not_unique.append((n, k, t, r, len(res.classes)))
    ok = not size_bad and not not_unique
    return ok, (f"{cases} cases; size mismatches {size_bad}; "
                f"non-unique minimizer classes (n,k,t,r,#classes) {not_unique}")


def _random_point(rng, a, b, M, v):
    x = [a] * v
    rest = M - v * a
    order = list(range(v))
    rng.shuffle(order)
    for i in order[:-1]:
        add = min(b - a, rest) * Fraction(rng.randint(0, 1000), 1000)
        x[i] += add
        rest -= add
    last = order[-1]
    x[last] += rest
    # push any overflow of the last coordinate back into the others
    for i in order:
        if x[last] <= b:
            break
        if i != last:
            room = b - x[i]
            move = min(room, x[last] - b)
            x[i] += move
            x[last] -= move
    return x


def criterion_6():
    rng = random.Random(6)
    bad_val = bad_dom = 0
    for _ in range(100):
        v = rng.randint(1, 7)
        a = Fraction(rng.randint(0, 20), rng.randint(1, 5))
        b = a + Fraction(rng.randint(0, 20), rng.randint(1, 5))
        lo, hi = (v - 1) * a + b, v * b
        M = lo + (hi - lo) * Fraction(rng.randint(0, 100), 100)
        res = convex_max(a, b, M, v)
        if res.value != convex_max_vertices(a, b, M, v):
            bad_val += 1
        for _ in range(1000):
            x = _random_point(rng, a, b, M, v)
            assert sum(x) == M and all(a <= xi <= b for xi in x)
            if sum(xi * xi for xi in x) > res.value:
                bad_dom += 1
    return bad_val == 0 and bad_dom == 0, (
        f"100 instances, oracle mismatches {bad_val}, dominated points violated {bad_dom}")


def criterion_7():
    cases, bad = 0, []
    for n in range(2, 15):
        for k in range(2, n + 1):
            for r in range(1, 4):
                try:
                    rep = coro2_bound(n, k, r, 0)
                except ValueError:
                    continue
                cases += 1
                if rep.reference_value is None or rep.bound_value != rep.reference_value:
                    bad.append((n, k, r))
    disc = coro2_bound(10, 3, 1, 1)
    flagged = (disc.bound_value == 3104 and disc.reference_value == 4392
               and disc.bound_holds is False and disc.verdict == "bound-violated")
    return not bad and flagged, (
        f"{cases} boundary cases equal, mismatches {bad}; "
        f"delta=1 (10,3,1): {disc.bound_value} vs {disc.reference_value} -> {disc.verdict}")


def criterion_8():
    bad = sum(popcount_total_distance(F.masks) != total_hamming_distance(F)
              for F in _corpus(8))
    same = []
    for M in range(2, 6):
        sets = list(combinations(range(1, 5), 2))
        fams = [SetFamily(4, 2, f) for f in combinations(sets, M)]
        best_i = max(total_intersection(F) for F in fams)
        best_d = min(popcount_total_distance(F.masks) for F in fams)
        arg_i = {F.sets for F in fams if total_intersection(F) == best_i}
        arg_d = {F.sets for F in fams if popcount_total_distance(F.masks) == best_d}
        same.append(arg_i == arg_d and max_total_intersection(4, 2, M).mi_value == best_i)
    return bad == 0 and all(same), f"identity mismatches {bad}/200; argmax=argmin for M=2..5: {same}"


def criterion_9():
    size_bad = 0
    for F in _corpus(9, 60):
        for i in range(1, F.n + 1):
            for j in range(1, F.n + 1):
                if i != j and len(shift(F, i, j)) != len(F):
                    size_bad += 1
    rng = random.Random(9)
    hits = monotone_bad = 0
    for _ in range(50):
        F = random_family(6, 3, 4, rng)
        G, trace = local_search(F)
        cur = total_intersection(F)
        for mv in trace:
            if mv.delta <= 0:
                monotone_bad += 1
            cur += mv.delta
        if cur != total_intersection(G):
            monotone_bad += 1
        hits += total_intersection(G) == 36
    ok = size_bad == 0 and monotone_bad == 0 and hits >= 45
    return ok, f"shift size changes {size_bad}; non-increasing moves {monotone_bad}; reached 36 in {hits}/50"


def criterion_10():
    same = []
    for n, k, M in ((4, 2, 3), (6, 3, 4), (6, 2, 10)):
        a = max_total_intersection(n, k, M, enumerate_all=True, threads=1).to_dict(timing=False)
        b = max_total_intersection(n, k, M, enumerate_all=True, threads=8).to_dict(timing=False)
        same.append(a == b)
    rng = random.Random(10)
    for _ in range(5):
        F = random_family(7, 3, 12, rng)
        a = local_search(F, workers=1)
        b = local_search(F, workers=8)
        same.append(a == b)
    return all(same), f"{sum(same)}/{len(same)} runs identical across 1 and 8 workers"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _run(record, number):
    ok, detail = CRITERIA[number - 1]()
    record(number, ok, detail)
    assert ok, detail


def test_identity_suite(record):
    _run(record, 1)


def test_solver_anchors(record):
    _run(record, 2)


def test_solver_matches_naive_enumeration(record):
    _run(record, 3)


def test_star_formula(record):
    _run(record, 4)


def test_star_union_minimum_and_uniqueness(record):
    _run(record, 5)


def test_convex_max_against_vertices(record):
    _run(record, 6)


def test_bound_evaluators(record):
    _run(record, 7)


def test_hamming_bridge(record):
    _run(record, 8)


def test_shifting_and_local_search(record):
    _run(record, 9)


def test_determinism_across_workers(record):
    _run(record, 10)


if __name__ == "__main__":
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(f"criterion {i:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
