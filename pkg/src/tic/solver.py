"""Exact maximum total intersection by branch and bound.

Families are enumerated as strictly increasing sequences of lex ranks, so
each M-subset of C([n], k) is visited once. A node is pruned when the
convexity bound on the completed sum of squared degrees cannot beat the
incumbent.

Top-level branches (the choice of the first rank) are solved independently,
each seeded with the same lower bound I(L_{n,k}(M)). That makes the
result, including the node count, identical for any number of workers.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .canonical import canonical_classes
from .combinatorics import binom
from .family import SetFamily, total_intersection

DEFAULT_NODE_LIMIT = 10**8


@dataclass
class SolveResult:
    n: int
    k: int
    M: int
    mi_value: int
    witness: SetFamily
    optima_canonical: list[SetFamily] | None
    nodes_explored: int
    wall_time: float = field(compare=False)
    exact: bool = True

    @property
    def status(self) -> str:
        return "exact" if self.exact else "inexact"

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "n": self.n, "k": self.k, "M": self.M,
            "mi_value": self.mi_value,
            "status": self.status,
            "witness": self.witness.to_dict(),
            "optima_canonical": (None if self.optima_canonical is None
                                 else [F.to_dict() for F in self.optima_canonical]),
            "nodes_explored": self.nodes_explored,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d


class NodeLimitExceeded(Exception):
    pass


@lru_cache(maxsize=64)
def _space(n: int, k: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """0-based member tuples in lex order plus each set's first element."""
    sets = tuple(tuple(x - 1 for x in s) for s in combinations(range(1, n + 1), k))
    firsts = tuple(s[0] if s else n for s in sets)
    return sets, firsts


def completion_bound(deg, frozen_below: int, extra: int, cap: int, slots: int | None = None) -> int:
    """Max of sum f_x^2 with deg[x] <= f_x <= u_x and sum(f - deg) = extra.

    Elements x < frozen_below cannot grow (u_x = deg[x]); otherwise
    u_x = min(cap, deg[x] + slots), as each added set raises a degree by at
    most one. u_x is nondecreasing in deg[x], so some optimum of this
    relaxation gives mass to larger degrees first: if f_i < f_j with
    deg[i] >= deg[j], swapping the two values stays feasible, and then
    moving mass from j to i cannot lower the sum of squares. The greedy
    fill below is therefore exact for the relaxation.
    """
    if slots is None:
        slots = extra
    fixed = 0
    free = []
    for x, d in enumerate(deg):
        if x < frozen_below:
            fixed += d * d
        else:
            free.append(d)
    free.sort(reverse=True)
    total = fixed
    for d in free:
        add = min(cap - d, slots, extra) if extra > 0 else 0
        total += (d + add) ** 2
        extra -= add
    return total


def upper_bound_remaining(deg, slots_left: int, k: int, cap: int, frozen_below: int = 0) -> int:
    """Admissible bound on the final sum of squared degrees.

    ``deg`` is the degree vector of the chosen prefix; ``slots_left`` more
    k-sets will be added, each raising k degrees by one, none above ``cap``.
    With no slots left this is the exact current value.
    """
    return completion_bound(list(deg), frozen_below, k * slots_left, cap, slots_left)


def _branch(args):
    n, k, M, first, floor, enumerate_all, node_limit = args
    sets, firsts = _space(n, k)
    N = len(sets)
    cap = min(M, binom(n - 1, k - 1))
    deg = [0] * n
    chosen = [first]
    for x in sets[first]:
        deg[x] += 1
    state = {"best": floor, "witness": None, "optima": [], "nodes": 1}

    def dfs(cur: int, start: int, slots: int) -> None:
        state["nodes"] += 1
        if state["nodes"] > node_limit:
            raise NodeLimitExceeded
        if slots == 0:
            if cur > state["best"]:
                state["best"] = cur
                state["witness"] = tuple(chosen)
                state["optima"] = [tuple(chosen)] if enumerate_all else []
            elif enumerate_all and cur == state["best"]:
                state["optima"].append(tuple(chosen))
            return
        frozen = firsts[start] if start < N else n
        bound = completion_bound(deg, frozen, k * slots, cap, slots)
        if bound < state["best"] or (bound == state["best"] and not enumerate_all):
            return
        for r in range(start, N - slots + 1):
            s = sets[r]
            gain = k
            for x in s:
                gain += 2 * deg[x]
                deg[x] += 1
            chosen.append(r)
            dfs(cur + gain, r + 1, slots - 1)
            chosen.pop()
            for x in s:
                deg[x] -= 1

    aborted = False
    try:
        # the root of this branch already holds one set
        state["nodes"] -= 1
        dfs(k, first + 1, M - 1)
    except NodeLimitExceeded:
        aborted = True
    return state["best"], state["witness"], state["optima"], state["nodes"], aborted


def resolve_workers(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("TIC_THREADS")
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


def max_total_intersection(n: int, k: int, M: int, enumerate_all: bool = False,
                           node_limit: int = DEFAULT_NODE_LIMIT,
                           threads: int | None = None) -> SolveResult:
    """Exact MI(n, k, M) with the lex-first optimal family as witness.

    With ``enumerate_all`` every optimum is collected and reduced to one
    canonical representative per isomorphism class. ``node_limit`` caps the
    nodes of each top-level branch; hitting it yields ``exact=False`` and the
    best value found, never a silently wrong answer.
    """
    N = binom(n, k)
    if not 1 <= M <= N:
        raise ValueError(f"M={M} outside [1, {N}] for n={n}, k={k}")
    workers = resolve_workers(threads)
    t0 = time.perf_counter()
    sets, _ = _space(n, k)
    seed_value = total_intersection(SetFamily(n, k, tuple(
        tuple(x + 1 for x in s) for s in sets[:M])))
    floor = seed_value - 1
    jobs = [(n, k, M, first, floor, enumerate_all, node_limit)
            for first in range(0, N - M + 1)]
    if workers == 1 or len(jobs) == 1:
        results = [_branch(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_branch, jobs))

    best, witness, optima, nodes, exact = floor, None, [], 1, True
    for value, wit, opt, cnt, aborted in results:
        nodes += cnt
        exact = exact and not aborted
        if wit is None:
            continue
        if value > best:
            best, witness, optima = value, wit, list(opt)
        elif value == best:
            optima.extend(opt)
    if witness is None:  # every branch aborted before matching the seed
        witness = tuple(range(M))
        best = seed_value

    def fam(ranks):
        return SetFamily(n, k, tuple(tuple(x + 1 for x in sets[r]) for r in ranks))

    classes = canonical_classes(fam(o) for o in optima) if enumerate_all else None
    return SolveResult(n, k, M, best, fam(witness), classes, nodes,
                       time.perf_counter() - t0, exact)


def all_optimal_families(n: int, k: int, M: int, node_limit: int = DEFAULT_NODE_LIMIT,
                         threads: int | None = None) -> list[SetFamily]:
    res = max_total_intersection(n, k, M, enumerate_all=True, node_limit=node_limit,
                                 threads=threads)
    if not res.exact:
        raise RuntimeError(f"node limit hit for (n={n}, k={k}, M={M}); optima incomplete")
    return res.optima_canonical


__all__ = ["SolveResult", "max_total_intersection", "all_optimal_families",
           "upper_bound_remaining", "completion_bound", "DEFAULT_NODE_LIMIT"]
