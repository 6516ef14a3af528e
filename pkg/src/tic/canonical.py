"""Canonical labeling of k-uniform families under permutations of [n].

The canonical form of F is the image pi(F) whose sorted list of member
lex-ranks is lexicographically smallest over all permutations pi.

Search assigns labels 1, 2, ... in turn. Give each member the key
sum(2**(n - label)) over its labels: lex-earlier sets have larger keys, so
minimizing the sorted rank list is the same as maximizing the descending
key list. Given a partial assignment, a member's key is at most its
assigned part plus the next ``remaining`` unassigned labels. Sorting those
optimistic keys bounds every completion from above, and the bound is used
for pruning. Elements that a transposition automorphism swaps (twins) are
branched on only once per level.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .combinatorics import lex_rank
from .family import SetFamily, degree_vector

MAX_N = 16
EXHAUSTIVE_MAX_N = 9


@dataclass(frozen=True)
class CanonicalForm:
    family: SetFamily
    certificate: tuple[int, ...]  # certificate[x-1] is the new label of x


def _twin_classes(F: SetFamily) -> list[int]:
    """rep[x] = smallest y with the transposition (x y) an automorphism of F."""
    n = F.n
    members = set(F.masks)
    rep = list(range(n))
    for x in range(n):
        if rep[x] != x:
            continue
        for y in range(x + 1, n):
            if rep[y] != y:
                continue
            bx, by = 1 << x, 1 << y
            ok = True
            for m in members:
                if bool(m & bx) != bool(m & by):
                    m2 = m ^ bx ^ by
                    if m2 not in members:
                        ok = False
                        break
            if ok:
                rep[y] = x
    return rep


def _search(F: SetFamily) -> tuple[int, ...]:
    n, k = F.n, F.k
    members = [tuple(x - 1 for x in s) for s in F.sets]
    contains = [[i for i, s in enumerate(members) if x in s] for x in range(n)]
    rep = _twin_classes(F)
    val = [0] * len(members)
    cnt = [0] * len(members)
    label = [-1] * n
    best_key: list = [None]
    best_perm: list = [None]

    def optimistic(depth: int) -> tuple[int, ...]:
        free = n - depth
        out = []
        for v, c in zip(val, cnt):
            rem = k - c
            # next `rem` labels after `depth`: bits n-depth-1 .. n-depth-rem
            out.append(v + ((1 << free) - (1 << (free - rem))))
        out.sort(reverse=True)
        return tuple(out)

    def assign(x: int, depth: int, sign: int) -> None:
        bit = 1 << (n - 1 - depth)
        for i in contains[x]:
            val[i] += sign * bit
            cnt[i] += sign

    def dfs(depth: int) -> None:
        if depth == n:
            key = tuple(sorted(val, reverse=True))
            if best_key[0] is None or key > best_key[0]:
                best_key[0] = key
                best_perm[0] = tuple(label)
            return
        tried = set()
        options = []
        for x in range(n):
            if label[x] != -1:
                continue
            cls = rep[x]
            if cls in tried:
                continue
            tried.add(cls)
            assign(x, depth, 1)
            options.append((optimistic(depth + 1), x))
            assign(x, depth, -1)
        options.sort(key=lambda o: o[0], reverse=True)
        for bound, x in options:
            if best_key[0] is not None and bound <= best_key[0]:
                break
            label[x] = depth
            assign(x, depth, 1)
            dfs(depth + 1)
            assign(x, depth, -1)
            label[x] = -1

    dfs(0)
    return tuple(l + 1 for l in best_perm[0])


def canonical_form_exhaustive(F: SetFamily) -> CanonicalForm:
    """Minimize the sorted rank list over all n! permutations (oracle)."""
    if F.n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive canonicalization limited to n <= {EXHAUSTIVE_MAX_N}")
    best = None
    for perm in permutations(range(1, F.n + 1)):
        ranks = sorted(lex_rank(sorted(perm[x - 1] for x in s), F.n) for s in F.sets)
        if best is None or ranks < best[0]:
            best = (ranks, perm)
    perm = best[1] if best else tuple(range(1, F.n + 1))
    return CanonicalForm(F.relabel(perm), tuple(perm))


def canonical_form(F: SetFamily, strategy: str = "search", max_n: int = MAX_N) -> CanonicalForm:
    if strategy == "exhaustive":
        return canonical_form_exhaustive(F)
    if strategy != "search":
        raise ValueError(f"unknown strategy {strategy!r}")
    if F.n > max_n:
        raise ValueError(f"n={F.n} exceeds the canonicalization limit {max_n}")
    if not F.sets:
        perm = tuple(range(1, F.n + 1))
        return CanonicalForm(F, perm)
    perm = _search(F)
    return CanonicalForm(F.relabel(perm), perm)


def is_isomorphic(F: SetFamily, G: SetFamily) -> bool:
    if (F.n, F.k) != (G.n, G.k):
        raise ValueError("families must share (n, k)")
    if len(F) != len(G):
        return False
    if sorted(degree_vector(F)) != sorted(degree_vector(G)):
        return False
    return canonical_form(F).family.sets == canonical_form(G).family.sets


def canonical_classes(families) -> list[SetFamily]:
    """One canonical representative per isomorphism class, sorted."""
    seen = {}
    for F in families:
        c = canonical_form(F).family
        seen.setdefault(c.sets, c)
    return [seen[key] for key in sorted(seen)]


__all__ = ["CanonicalForm", "canonical_form", "canonical_form_exhaustive",
           "is_isomorphic", "canonical_classes", "MAX_N"]
