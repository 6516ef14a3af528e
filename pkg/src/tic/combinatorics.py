"""Exact binomials and lexicographic rank/unrank for k-subsets of [n].

Sets are 1-based throughout. Lex order: A precedes B when the smallest
element of the symmetric difference lies in A. For equal-size sets this
coincides with comparing the sorted element tuples.
"""
from __future__ import annotations

import math
from itertools import combinations
from dataclasses import dataclass
from typing import Iterable

N_MAX = 64

# Pascal triangle up to N_MAX; larger arguments fall through to math.comb.
_TRIANGLE: list[list[int]] = [[1]]
for _row in range(1, N_MAX + 1):
    _prev = _TRIANGLE[-1]
    _TRIANGLE.append([1] + [_prev[j - 1] + _prev[j] for j in range(1, _row)] + [1])
del _row, _prev


def binom(n: int, k: int) -> int:
    """C(n, k), with 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binom needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    if n <= N_MAX:
        return _TRIANGLE[n][k]
    return math.comb(n, k)


@dataclass(frozen=True, order=False)
class KSubset:
    """A k-subset of [n] stored as a strictly increasing tuple."""

    elements: tuple[int, ...]
    n: int

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError(f"elements must be strictly increasing: {els}")
        if els and (els[0] < 1 or els[-1] > self.n):
            raise ValueError(f"elements must lie in [1, {self.n}]: {els}")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "KSubset":
        return cls(tuple(sorted(elements)), n)

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def mask(self) -> int:
        return to_mask(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __lt__(self, other: "KSubset") -> bool:
        return lex_compare(self, other) < 0

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << (x - 1)
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def _elements(A) -> tuple[int, ...]:
    return A.elements if isinstance(A, KSubset) else tuple(A)


def lex_compare(A, B) -> int:
    """-1 if A precedes B, 0 if equal, 1 if B precedes A.

    Accepts KSubset or plain sorted sequences; KSubsets must share (n, k).
    """
    if isinstance(A, KSubset) and isinstance(B, KSubset):
        if A.n != B.n or A.k != B.k:
            raise ValueError(f"cannot compare subsets of different (n,k): "
                             f"({A.n},{A.k}) vs ({B.n},{B.k})")
    a, b = set(_elements(A)), set(_elements(B))
    if len(a) != len(b):
        raise ValueError("lex_compare needs equal-size sets")
    diff = a ^ b
    if not diff:
        return 0
    return -1 if min(diff) in a else 1


def lex_rank(A, n: int | None = None) -> int:
    """0-based position of A among the k-subsets of [n] in lex order."""
    els = _elements(A)
    if n is None:
        if not isinstance(A, KSubset):
            raise TypeError("n is required when A is not a KSubset")
        n = A.n
    k = len(els)
    rank = 0
    prev = 0
    for i, a in enumerate(els, start=1):
        for x in range(prev + 1, a):
            rank += binom(n - x, k - i)
        prev = a
    return rank


def lex_unrank(rank: int, n: int, k: int) -> KSubset:
    total = binom(n, k)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total}) for n={n}, k={k}")
    out = []
    x = 1
    for i in range(1, k + 1):
        while rank >= binom(n - x, k - i):
            rank -= binom(n - x, k - i)
            x += 1
        out.append(x)
        x += 1
    return KSubset(tuple(out), n)


def all_k_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of [n] in lex order (itertools order coincides)."""
    return list(combinations(range(1, n + 1), k))


def hockey_stick_prefix(n: int, k: int, r: int, start: int = 1) -> int:
    """sum_{i=start}^{start+r-1} C(n-i, k)."""
    return sum(binom(n - i, k) for i in range(start, start + r) if n - i >= 0)


__all__ = [
    "N_MAX", "binom", "KSubset", "to_mask", "from_mask", "lex_compare",
    "lex_rank", "lex_unrank", "all_k_subsets", "hockey_stick_prefix",
]
