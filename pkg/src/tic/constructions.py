"""Named families: lex segments, generalized lex segments, stars and unions."""
from __future__ import annotations

import random
from itertools import combinations, islice
from typing import Iterable, Sequence

from .combinatorics import binom, lex_unrank
from .family import SetFamily, level_prefix


def lex_segment(n: int, k: int, M: int) -> SetFamily:
    """The first M k-subsets of [n] in lex order."""
    total = binom(n, k)
    if not 0 <= M <= total:
        raise ValueError(f"M={M} outside [0, {total}] for n={n}, k={k}")
    # itertools.combinations emits k-subsets in lex order already
    return SetFamily(n, k, tuple(islice(combinations(range(1, n + 1), k), M)))


def lex_t_segment(n: int, k: int, t: int, r: int) -> SetFamily:
    """L_{n,k,t}^{(r)}: lex segment of size sum_{i=t}^{t+r-1} C(n-i, k-t).

    For r >= 1 this is the union of the full t-stars with cores
    [t-1] + {i}, i = t .. t+r-1.
    """
    _check_level(n, k, t, r)
    return lex_segment(n, k, level_prefix(n, k, t, r))


def _check_level(n: int, k: int, t: int, r: int) -> None:
    if t < 1 or t > k:
        raise ValueError(f"need 1 <= t <= k, got t={t}, k={k}")
    if r < 0:
        raise ValueError(f"need r >= 0, got r={r}")
    if t + r - 1 > n:
        raise ValueError(f"need t + r - 1 <= n, got t={t}, r={r}, n={n}")


def full_t_star(n: int, k: int, core: Iterable[int]) -> SetFamily:
    core = tuple(sorted(set(core)))
    t = len(core)
    if t > k or k > n:
        raise ValueError(f"need |core| <= k <= n, got |core|={t}, k={k}, n={n}")
    if core and (core[0] < 1 or core[-1] > n):
        raise ValueError(f"core {core} not inside [1, {n}]")
    rest = [x for x in range(1, n + 1) if x not in core]
    sets = (tuple(sorted(core + extra)) for extra in combinations(rest, k - t))
    return SetFamily.from_sets(n, k, sets)


def star_union(n: int, k: int, cores: Sequence[Iterable[int]]) -> SetFamily:
    cores = [tuple(sorted(set(c))) for c in cores]
    if len({len(c) for c in cores}) > 1:
        raise ValueError(f"cores must all have the same size: {cores}")
    members: set = set()
    for c in cores:
        members.update(full_t_star(n, k, c).sets)
    return SetFamily(n, k, tuple(sorted(members)))


def sandwich_family(n: int, k: int, t: int, r: int, M: int) -> SetFamily:
    """L^{(r)} plus the lex-first M - |L^{(r)}| sets of L^{(r+1)} - L^{(r)}.

    Both segments are lex prefixes, so this is exactly lex_segment(n, k, M).
    """
    _check_level(n, k, t, r + 1)
    lo, hi = level_prefix(n, k, t, r), level_prefix(n, k, t, r + 1)
    if not lo <= M <= hi:
        raise ValueError(f"M={M} outside sandwich range [{lo}, {hi}] "
                         f"for n={n}, k={k}, t={t}, r={r}")
    return lex_segment(n, k, M)


def complete_family(n: int, k: int) -> SetFamily:
    return lex_segment(n, k, binom(n, k))


def random_family(n: int, k: int, M: int, rng: random.Random | int | None = None) -> SetFamily:
    """M distinct k-subsets of [n] drawn uniformly without replacement."""
    total = binom(n, k)
    if not 0 <= M <= total:
        raise ValueError(f"M={M} outside [0, {total}] for n={n}, k={k}")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    ranks = rng.sample(range(total), M)
    return SetFamily.from_sets(n, k, (lex_unrank(r, n, k) for r in ranks))


__all__ = ["random_family", "lex_segment", "lex_t_segment", "full_t_star", "star_union",
           "sandwich_family", "complete_family"]
