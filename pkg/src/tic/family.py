"""k-uniform set families and their total-intersection functionals."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .combinatorics import KSubset, binom, to_mask


@dataclass(frozen=True)
class SetFamily:
    """A family of distinct k-subsets of [n], members kept in lex order.

    Build with :meth:`from_sets`, which validates and sorts; duplicates are
    an error rather than being silently merged.
    """

    n: int
    k: int
    sets: tuple[tuple[int, ...], ...]

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        if n < 0 or k < 0:
            raise ValueError(f"n and k must be non-negative, got n={n}, k={k}")
        members = []
        for s in sets:
            t = tuple(int(x) for x in (s.elements if isinstance(s, KSubset) else s))
            if len(t) != k:
                raise ValueError(f"member {t} has size {len(t)}, expected k={k}")
            if any(b <= a for a, b in zip(t, t[1:])):
                t2 = tuple(sorted(t))
                if len(set(t2)) != k:
                    raise ValueError(f"member {t} has repeated elements")
                t = t2
            if t and (t[0] < 1 or t[-1] > n):
                raise ValueError(f"member {t} not inside [1, {n}]")
            members.append(t)
        uniq = set(members)
        if len(uniq) != len(members):
            dup = [m for m, c in Counter(members).items() if c > 1]
            raise ValueError(f"duplicate members: {dup[:5]}")
        return cls(n, k, tuple(sorted(uniq)))

    @classmethod
    def empty(cls, n: int, k: int) -> "SetFamily":
        return cls(n, k, ())

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, A) -> bool:
        t = A.elements if isinstance(A, KSubset) else tuple(sorted(A))
        return t in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.sets)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(s) for s in self.sets)

    def subsets(self) -> list[KSubset]:
        return [KSubset(s, self.n) for s in self.sets]

    def with_sets(self, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return SetFamily.from_sets(self.n, self.k, sets)

    def relabel(self, perm: Sequence[int]) -> "SetFamily":
        """Image under x -> perm[x-1]; perm is a permutation of [n]."""
        return SetFamily.from_sets(self.n, self.k,
                                   (tuple(sorted(perm[x - 1] for x in s)) for s in self.sets))

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "sets": [list(s) for s in self.sets]}

    @classmethod
    def from_dict(cls, d: dict) -> "SetFamily":
        try:
            n, k, sets = d["n"], d["k"], d["sets"]
        except (KeyError, TypeError) as e:
            raise ValueError(f"family JSON needs keys n, k, sets: {e}") from None
        for s in sets:
            if any(b <= a for a, b in zip(s, s[1:])):
                raise ValueError(f"inner arrays must be strictly increasing: {s}")
        return cls.from_sets(int(n), int(k), sets)

    def __str__(self):
        body = ", ".join("".join(map(str, s)) if self.n < 10 else str(set(s)) for s in self.sets)
        return f"SetFamily(n={self.n}, k={self.k}, {{{body}}})"


def load_family(path) -> SetFamily:
    return SetFamily.from_dict(json.loads(Path(path).read_text()))


def dump_family(F: SetFamily, path=None) -> str:
    text = json.dumps(F.to_dict())
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


# -- degrees and total intersection ---------------------------------------

def degree_vector(F: SetFamily) -> list[int]:
    """deg[x-1] = number of members containing x."""
    deg = [0] * F.n
    for s in F.sets:
        for x in s:
            deg[x - 1] += 1
    return deg


def t_degree(F: SetFamily, A: Iterable[int]) -> int:
    a = set(A)
    return sum(1 for s in F.sets if a.issubset(s))


def total_intersection(F: SetFamily, check: bool = False) -> int:
    """Sum over ordered member pairs of |A & B|, via sum of squared degrees.

    With ``check=True`` the O(M^2 k) pairwise sum is computed too and the two
    must agree.
    """
    value = sum(d * d for d in degree_vector(F))
    if check:
        pairwise = pairwise_total_intersection(F)
        if pairwise != value:
            raise AssertionError(f"degree identity failed: {value} != {pairwise}")
    return value


def pairwise_total_intersection(F: SetFamily) -> int:
    masks = F.masks
    return sum((a & b).bit_count() for a in masks for b in masks)


def pairwise_with_set(F: SetFamily, A: Iterable[int]) -> int:
    deg = degree_vector(F)
    return sum(deg[x - 1] for x in A)


def cross_total_intersection(F1: SetFamily, F2: SetFamily) -> int:
    if (F1.n, F1.k) != (F2.n, F2.k):
        raise ValueError("families must share (n, k)")
    d1, d2 = degree_vector(F1), degree_vector(F2)
    return sum(a * b for a, b in zip(d1, d2))


def total_t_intersection(F: SetFamily, t: int) -> int:
    """sum over t-sets A of |F(A)|^2."""
    if not 1 <= t <= max(F.k, 1):
        raise ValueError(f"t must satisfy 1 <= t <= k, got t={t}, k={F.k}")
    counts: Counter = Counter()
    for s in F.sets:
        counts.update(combinations(s, t))
    return sum(c * c for c in counts.values())


def total_t_intersection_pairs(F: SetFamily, t: int) -> int:
    """Pair side of the same quantity: sum over ordered pairs of C(|A & B|, t)."""
    masks = F.masks
    return sum(binom((a & b).bit_count(), t) for a in masks for b in masks)


def is_t_intersecting(F: SetFamily, t: int) -> bool:
    masks = F.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if (a & b).bit_count() < t:
                return False
    return True


def find_full_t_stars(F: SetFamily, t: int) -> list[tuple[int, ...]]:
    """Cores T (|T| = t) whose full star lies inside F."""
    if not 1 <= t <= F.k:
        raise ValueError(f"t must satisfy 1 <= t <= k, got t={t}, k={F.k}")
    full = binom(F.n - t, F.k - t)
    counts: Counter = Counter()
    for s in F.sets:
        counts.update(combinations(s, t))
    return sorted(T for T, c in counts.items() if c == full)


def min_s_cover(F: SetFamily, s: int, max_size: int) -> tuple[int, ...] | None:
    """Smallest U with |A & U| >= s for every member A, lex-least among ties."""
    if s < 1:
        raise ValueError("s must be >= 1")
    masks = F.masks
    for size in range(0, min(max_size, F.n) + 1):
        for U in combinations(range(1, F.n + 1), size):
            um = to_mask(U)
            if all((m & um).bit_count() >= s for m in masks):
                return U
    return None


def link(F: SetFamily, x: int) -> SetFamily:
    """Delete x from every member and relabel [n] minus {x} onto [n-1].

    Every member must contain x. The result has total intersection
    I(F) - |F|^2, since x contributed deg(x)^2 = |F|^2.
    """
    if not 1 <= x <= F.n:
        raise ValueError(f"x={x} outside [1, {F.n}]")
    out = []
    for s in F.sets:
        if x not in s:
            raise ValueError(f"member {s} does not contain {x}")
        out.append(tuple(y if y < x else y - 1 for y in s if y != x))
    return SetFamily.from_sets(F.n - 1, F.k - 1, out)


# -- size decomposition ---------------------------------------------------

@dataclass(frozen=True)
class SizeDecomposition:
    """M = sum_{i=t}^{t+r-1} C(n-i, k-t) + delta * C(n-t-r, k-t), delta in (0, 1]."""

    n: int
    k: int
    t: int
    r: int
    delta: Fraction
    M: int

    @property
    def prefix(self) -> int:
        return level_prefix(self.n, self.k, self.t, self.r)

    @property
    def level(self) -> int:
        return binom(self.n - self.t - self.r, self.k - self.t)

    def reconstruct(self) -> Fraction:
        return self.prefix + self.delta * self.level


def level_prefix(n: int, k: int, t: int, r: int) -> int:
    """|L_{n,k,t}^{(r)}| = sum_{i=t}^{t+r-1} C(n-i, k-t)."""
    return sum(binom(n - i, k - t) for i in range(t, t + r) if n - i >= 0)


def decompose_size(n: int, k: int, t: int, M: int) -> SizeDecomposition:
    """Canonical (r, delta) for size M; a full level is reported as delta = 1."""
    if not 1 <= t <= k:
        raise ValueError(f"need 1 <= t <= k, got t={t}, k={k}")
    cap = binom(n - t + 1, k - t + 1)
    if not 1 <= M <= cap:
        raise ValueError(f"M={M} outside [1, {cap}] for n={n}, k={k}, t={t}")
    r, prefix = 0, 0
    while True:
        level = binom(n - t - r, k - t)
        if prefix + level >= M:
            return SizeDecomposition(n, k, t, r, Fraction(M - prefix, level), M)
        prefix += level
        r += 1


__all__ = [
    "SetFamily", "load_family", "dump_family", "degree_vector", "t_degree",
    "total_intersection", "pairwise_total_intersection", "pairwise_with_set",
    "cross_total_intersection", "total_t_intersection", "total_t_intersection_pairs",
    "is_t_intersecting", "find_full_t_stars", "min_s_cover", "link",
    "SizeDecomposition", "level_prefix", "decompose_size",
]
