"""Shifting operator and single-set replacement local search.

The replacement move swaps one member G for one non-member F'. With
d the degree vector of F and S(X) = sum of d over X,

    I(F - G + F') - I(F) = 2 * (S(F') - |F' & G| - S(G) + k)

which is what :func:`improve_once` evaluates for every (G, F') pair.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .combinatorics import binom, to_mask
from .family import SetFamily, decompose_size, degree_vector, level_prefix


def shift(F: SetFamily, i: int, j: int) -> SetFamily:
    """S_{i,j}: replace i by j in each member where the result is new."""
    if i == j:
        raise ValueError("shift needs i != j")
    if not (1 <= i <= F.n and 1 <= j <= F.n):
        raise ValueError(f"i, j must lie in [1, {F.n}]")
    present = set(F.sets)
    out = []
    for A in F.sets:
        if i in A and j not in A:
            B = tuple(sorted([x for x in A if x != i] + [j]))
            if B not in present:
                out.append(B)
                continue
        out.append(A)
    return SetFamily(F.n, F.k, tuple(sorted(out)))


def compress(F: SetFamily) -> SetFamily:
    """Apply S_{i,j} (j < i) until nothing moves.

    Sweep order is ascending j, then ascending i; the fixpoint reached is
    documented by that order, not claimed to be unique.
    """
    changed = True
    while changed:
        changed = False
        for j in range(1, F.n + 1):
            for i in range(j + 1, F.n + 1):
                G = shift(F, i, j)
                if G.sets != F.sets:
                    F, changed = G, True
    return F


def is_shifted(F: SetFamily) -> bool:
    return all(shift(F, i, j).sets == F.sets
               for j in range(1, F.n + 1) for i in range(j + 1, F.n + 1))


@dataclass(frozen=True)
class Move:
    removed: tuple[int, ...]
    inserted: tuple[int, ...]
    delta: int

    def to_dict(self) -> dict:
        return {"removed": list(self.removed), "inserted": list(self.inserted),
                "delta_I": self.delta}


def replay(F: SetFamily, trace: Iterable[Move]) -> SetFamily:
    members = set(F.sets)
    for mv in trace:
        if mv.removed not in members or mv.inserted in members:
            raise ValueError(f"trace step {mv} does not apply")
        members.remove(mv.removed)
        members.add(mv.inserted)
    return SetFamily(F.n, F.k, tuple(sorted(members)))


def trace_to_jsonl(trace: Iterable[Move]) -> str:
    return "".join(json.dumps(mv.to_dict()) + "\n" for mv in trace)


def candidate_pool(F: SetFamily, pool: str = "all") -> list[tuple[int, ...]]:
    """Non-members eligible for insertion, in lex order.

    ``"lex"`` restricts to L_{n,k,1}^{(r+1)} where r comes from the size
    decomposition of |F|.
    """
    n, k = F.n, F.k
    present = set(F.sets)
    if pool == "all":
        limit = binom(n, k)
    elif pool == "lex":
        if not F.sets:
            limit = binom(n, k)
        else:
            d = decompose_size(n, k, 1, len(F))
            limit = level_prefix(n, k, 1, d.r + 1)
    else:
        raise ValueError(f"unknown pool {pool!r}; use 'all' or 'lex'")
    out = []
    for idx, A in enumerate(combinations(range(1, n + 1), k)):
        if idx >= limit:
            break
        if A not in present:
            out.append(A)
    return out


def _best_in_chunk(chunk, members, member_masks, member_sums, deg, k):
    best = None
    for Fp in chunk:
        fm = to_mask(Fp)
        sf = sum(deg[x - 1] for x in Fp)
        for G, gm, sg in zip(members, member_masks, member_sums):
            delta = 2 * (sf - (fm & gm).bit_count() - sg + k)
            key = (-delta, Fp, G)
            if best is None or key < best:
                best = key
    return best


def improve_once(F: SetFamily, pool: str = "all", workers: int = 1):
    """Best strictly improving single swap, or None.

    Ties on the gain go to the lex-least inserted set, then the lex-least
    removed set. ``workers > 1`` splits the insertion candidates over a
    thread pool; the reduction uses the same ordering key, so the answer
    never depends on the worker count.
    Returns ``(new_family, Move)``.
    """
    if not F.sets:
        return None
    cands = candidate_pool(F, pool)
    if not cands:
        return None
    deg = degree_vector(F)
    members = F.sets
    masks = F.masks
    sums = [sum(deg[x - 1] for x in G) for G in members]
    k = F.k
    if workers <= 1 or len(cands) < 2 * workers:
        best = _best_in_chunk(cands, members, masks, sums, deg, k)
    else:
        size = -(-len(cands) // workers)
        chunks = [cands[i:i + size] for i in range(0, len(cands), size)]
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(lambda c: _best_in_chunk(c, members, masks, sums, deg, k), chunks))
        best = min(r for r in results if r is not None)
    neg_delta, Fp, G = best
    if -neg_delta <= 0:
        return None
    move = Move(G, Fp, -neg_delta)
    return replay(F, [move]), move


def local_search(F: SetFamily, max_moves: int = 10_000, pool: str = "all",
                 workers: int = 1) -> tuple[SetFamily, list[Move]]:
    """Iterate :func:`improve_once` until stuck or out of budget."""
    if max_moves < 0:
        raise ValueError("max_moves must be >= 0")
    trace: list[Move] = []
    while len(trace) < max_moves:
        step = improve_once(F, pool=pool, workers=workers)
        if step is None:
            break
        F, move = step
        trace.append(move)
    return F, trace


__all__ = ["shift", "compress", "is_shifted", "Move", "replay", "trace_to_jsonl",
           "candidate_pool", "improve_once", "local_search"]
