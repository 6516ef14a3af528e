"""Constant-weight codes and the distance / intersection correspondence.

For k-sets |A ^ B| = 2k - 2|A & B|, so over ordered pairs of an M-member
family the total Hamming distance is 2kM^2 - 2 I(F). Maximizing total
intersection and minimizing average distance are the same problem.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .bounds import coro2_bound
from .family import SetFamily, total_intersection
from .solver import DEFAULT_NODE_LIMIT, max_total_intersection

CONVENTIONS = ("ordered-distinct", "unordered")


@dataclass(frozen=True)
class ConstantWeightCode:
    n: int
    k: int
    words: tuple[str, ...]  # position 1 is the leftmost character

    def __post_init__(self):
        for w in self.words:
            if len(w) != self.n or set(w) - {"0", "1"}:
                raise ValueError(f"bad codeword {w!r} for length {self.n}")
            if w.count("1") != self.k:
                raise ValueError(f"codeword {w} has weight {w.count('1')}, expected {self.k}")
        if len(set(self.words)) != len(self.words):
            raise ValueError("duplicate codewords")

    @classmethod
    def from_family(cls, F: SetFamily) -> "ConstantWeightCode":
        words = []
        for s in F.sets:
            bits = ["0"] * F.n
            for x in s:
                bits[x - 1] = "1"
            words.append("".join(bits))
        return cls(F.n, F.k, tuple(words))

    def to_family(self) -> SetFamily:
        return SetFamily.from_sets(self.n, self.k,
                                   (tuple(i + 1 for i, c in enumerate(w) if c == "1")
                                    for w in self.words))

    def to_text(self) -> str:
        return "".join(w + "\n" for w in self.words)

    @classmethod
    def from_text(cls, text: str, k: int | None = None) -> "ConstantWeightCode":
        words = tuple(line.strip() for line in text.splitlines() if line.strip())
        if not words:
            raise ValueError("empty code")
        n = len(words[0])
        if k is None:
            k = words[0].count("1")
        return cls(n, k, words)


def total_hamming_distance(F: SetFamily, check: bool = False) -> int:
    """Sum over ordered pairs of |A ^ B|, equal to 2k|F|^2 - 2 I(F)."""
    M = len(F)
    value = 2 * F.k * M * M - 2 * total_intersection(F)
    if check:
        direct = popcount_total_distance(F.masks)
        if direct != value:
            raise AssertionError(f"distance identity failed: {value} != {direct}")
    return value


def popcount_total_distance(masks: Iterable[int]) -> int:
    masks = list(masks)
    return sum((a ^ b).bit_count() for a in masks for b in masks)


def average_distance(F: SetFamily, convention: str = "ordered-distinct") -> Fraction:
    """Mean distance over pairs of distinct members.

    Both conventions give the same number; they differ only in whether
    pairs are counted once or twice.
    """
    M = len(F)
    if M < 2:
        raise ValueError("average distance needs at least two members")
    total = total_hamming_distance(F)
    if convention == "ordered-distinct":
        return Fraction(total, M * (M - 1))
    if convention == "unordered":
        return Fraction(total // 2, M * (M - 1) // 2)
    raise ValueError(f"unknown convention {convention!r}; use one of {CONVENTIONS}")


@dataclass(frozen=True)
class DistanceResult:
    n: int
    k: int
    M: int
    total_distance: int
    average: Fraction
    convention: str
    code: ConstantWeightCode
    exact: bool

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "M": self.M,
                "total_distance": self.total_distance,
                "average": str(self.average), "convention": self.convention,
                "status": "exact" if self.exact else "inexact",
                "codewords": list(self.code.words)}


def min_avg_distance(n: int, k: int, M: int, node_limit: int = DEFAULT_NODE_LIMIT,
                     threads: int | None = None) -> DistanceResult:
    """Minimum average distance (ordered-distinct) of an (n, k) code of size M."""
    if M < 2:
        raise ValueError("average distance needs M >= 2")
    res = max_total_intersection(n, k, M, node_limit=node_limit, threads=threads)
    total = 2 * k * M * M - 2 * res.mi_value
    return DistanceResult(n, k, M, total, Fraction(total, M * (M - 1)), "ordered-distinct",
                          ConstantWeightCode.from_family(res.witness), res.exact)


def distance_lower_bound_coro2(n: int, k: int, r: int, delta) -> dict:
    """Total-distance lower bound 2kM^2 - 2B from the literal coro2 bound B."""
    rep = coro2_bound(n, k, r, delta)
    M = rep.M
    lower = 2 * k * M * M - 2 * rep.bound_value
    exact = None
    if rep.reference_value is not None:
        exact = 2 * k * M * M - 2 * rep.reference_value
    return {"M": str(M), "lower_bound": str(lower),
            "lex_family_distance": None if exact is None else str(exact),
            "flagged": rep.bound_holds is False}


__all__ = ["ConstantWeightCode", "total_hamming_distance", "popcount_total_distance",
           "average_distance", "DistanceResult", "min_avg_distance",
           "distance_lower_bound_coro2", "CONVENTIONS"]
