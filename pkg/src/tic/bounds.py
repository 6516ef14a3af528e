"""Closed-form bounds, hypothesis ranges and structural checks.

Every bound is evaluated literally, in exact rationals, next to the exact
total intersection of the matching lex family. A bound that falls below
that reference is reported as violated; nothing is patched up.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor

from .canonical import canonical_form, is_isomorphic
from .combinatorics import binom, to_mask
from .constructions import lex_t_segment, sandwich_family, star_union
from .family import SetFamily, decompose_size, level_prefix, total_intersection

C0_MIN = 3000


def _frac(x) -> Fraction:
    # floats would smuggle binary rounding into exact comparisons
    if isinstance(x, float):
        raise TypeError(f"pass {x!r} as an int, Fraction or string like '1/3', not a float")
    return x if isinstance(x, Fraction) else Fraction(x)


def _fmt(x):
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x)
    return x


def _parse(x):
    if x is None:
        return None
    if isinstance(x, str):
        return Fraction(x)
    return x


# -- box-constrained sum of squares -----------------------------------------

@dataclass(frozen=True)
class ConvexMaxResult:
    value: Fraction
    witness: tuple[Fraction, ...]
    r0: int


def convex_max(a, b, M, num_vars: int) -> ConvexMaxResult:
    """Maximum of sum x_i^2 over a <= x_i <= b, sum x_i = M.

    ``r0`` is the largest integer with M - r0*b >= (num_vars - r0)*a (capped
    at num_vars when a == b); the maximizer puts r0 coordinates at b, one at
    the remainder and the rest at a.
    """
    a, b, M = _frac(a), _frac(b), _frac(M)
    if num_vars < 1:
        raise ValueError("num_vars must be >= 1")
    r = num_vars - 1
    if not 0 <= a <= b:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    if not r * a + b <= M <= num_vars * b:
        raise ValueError(f"need {r}*a + b <= M <= {num_vars}*b, got M={M}")
    if a == b:
        r0 = num_vars
    else:
        r0 = min(floor((M - num_vars * a) / (b - a)), num_vars)
    value = r0 * b * b + (r - r0) * a * a + (M - r0 * b - (r - r0) * a) ** 2
    rw = min(r0, r)
    mid = M - rw * b - (r - rw) * a
    witness = (b,) * rw + (mid,) + (a,) * (r - rw)
    return ConvexMaxResult(value, witness, r0)


def convex_max_vertices(a, b, M, num_vars: int) -> Fraction:
    """Oracle: best vertex of the polytope, found by enumerating patterns.

    A vertex has at most one coordinate strictly inside (a, b); try every
    count p at b and q at a.
    """
    a, b, M = _frac(a), _frac(b), _frac(M)
    best = None
    for p in range(num_vars + 1):
        for q in range(num_vars + 1 - p):
            free = num_vars - p - q
            if free > 1:
                continue
            rest = M - p * b - q * a
            if free == 0 and rest != 0:
                continue
            if free == 1 and not a <= rest <= b:
                continue
            val = p * b * b + q * a * a + (rest * rest if free else 0)
            if best is None or val > best:
                best = val
    if best is None:
        raise ValueError("infeasible instance")
    return best


# -- hypotheses ----------------------------------------------------------

def hypothesis_constant(s: int, k: int, t: int, r: int) -> int:
    """C_s = 2^(2^(s-1)-1) * 10^(2^(s+2)-2) * (k^2 t^4 (r+1)^7)^(2^(s-1))."""
    if s < 1:
        raise ValueError("s must be >= 1")
    e = 2 ** (s - 1)
    return 2 ** (e - 1) * 10 ** (2 ** (s + 2) - 2) * (k * k * t ** 4 * (r + 1) ** 7) ** e


@dataclass
class BoundReport:
    kind: str
    n: int
    k: int
    t: int
    r: int
    delta: Fraction
    M: Fraction | None = None
    bound_value: Fraction | None = None
    reference_value: int | None = None
    hypotheses_met: bool | None = None
    required_n: int | None = None
    delta_range: tuple[Fraction, Fraction] | None = None
    notes: list[str] = field(default_factory=list)
    # delta = 1 at level r is the same size as delta = 0 at level r + 1
    alt_bound: Fraction | None = None

    @property
    def bound_holds(self) -> bool | None:
        if self.bound_value is None or self.reference_value is None:
            return None
        return self.bound_value >= self.reference_value

    @property
    def verdict(self) -> str:
        if self.kind == "hypotheses":
            return "hypotheses-met" if self.hypotheses_met else "hypotheses-not-met"
        holds = self.bound_holds
        if holds is None:
            return "no-reference"
        if self.bound_value == self.reference_value:
            return "tight"
        return "bound-holds" if holds else "bound-violated"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind, "n": self.n, "k": self.k, "t": self.t, "r": self.r,
            "delta": _fmt(self.delta), "M": _fmt(self.M),
            "bound_value": _fmt(self.bound_value),
            "reference_value": self.reference_value,
            "bound_holds": self.bound_holds,
            "verdict": self.verdict,
            "hypotheses_met": self.hypotheses_met,
            "required_n": self.required_n,
            "delta_range": None if self.delta_range is None else [_fmt(x) for x in self.delta_range],
            "notes": list(self.notes),
            "alt_bound": _fmt(self.alt_bound),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        rng = d.get("delta_range")
        return cls(
            kind=d["kind"], n=d["n"], k=d["k"], t=d["t"], r=d["r"],
            delta=_parse(d["delta"]), M=_parse(d.get("M")),
            bound_value=_parse(d.get("bound_value")),
            reference_value=d.get("reference_value"),
            hypotheses_met=d.get("hypotheses_met"),
            required_n=d.get("required_n"),
            delta_range=None if rng is None else (Fraction(rng[0]), Fraction(rng[1])),
            notes=list(d.get("notes", [])),
            alt_bound=_parse(d.get("alt_bound")),
        )

    def csv_row(self) -> dict:
        delta = _frac(self.delta)
        return {
            "n": self.n, "k": self.k, "t": self.t, "r": self.r,
            "delta_num": delta.numerator, "delta_den": delta.denominator,
            "M": _fmt(self.M) if self.M is not None else "",
            "value": _fmt(self.bound_value) if self.bound_value is not None
            else (self.required_n if self.required_n is not None else ""),
            "reference": "" if self.reference_value is None else self.reference_value,
            "verdict": self.verdict,
        }


def theorem_hypotheses_satisfied(n: int, k: int, t: int, r: int, delta) -> BoundReport:
    """Check n against the required size and delta against R_1 / R_t.

    t = 1: n >= C_0 (r+1)^3 (k+r) k^2 with C_0 = 3000, and
    delta in [150k^3(r+1)^2/n, 1 - 150k^3(r+1)^3/n] or delta = 1.
    t >= 2: n >= C_1 (3 t C_t)^(2t), and
    delta in [60k^2(r+1)^6 t^4 / C_1, 1 - same] or delta = 1.
    Both also need k >= 2.
    """
    delta = _frac(delta)
    if t < 1 or r < 0:
        raise ValueError("need t >= 1 and r >= 0")
    rep = BoundReport("hypotheses", n, k, t, r, delta)
    if t == 1:
        required = C0_MIN * (r + 1) ** 3 * (k + r) * k * k
        lo = Fraction(150 * k ** 3 * (r + 1) ** 2, n)
        hi = 1 - Fraction(150 * k ** 3 * (r + 1) ** 3, n)
    else:
        c1 = hypothesis_constant(1, k, t, r)
        ct = hypothesis_constant(t, k, t, r)
        required = c1 * (3 * t * ct) ** (2 * t)
        lo = Fraction(60 * k * k * (r + 1) ** 6 * t ** 4, c1)
        hi = 1 - lo
    in_range = delta == 1 or lo <= delta <= hi
    rep.required_n = required
    rep.delta_range = (lo, hi)
    rep.hypotheses_met = k >= 2 and n >= required and in_range
    if k < 2:
        rep.notes.append("k < 2")
    if n < required:
        rep.notes.append("n below required size")
    if not in_range:
        rep.notes.append("delta outside admissible range")
    return rep


# -- closed-form upper bounds ---------------------------------------------

def _reference(n, k, t, r, M) -> int | None:
    if M.denominator != 1:
        return None
    m = int(M)
    if m == 0:
        return 0
    try:
        return total_intersection(sandwich_family(n, k, t, r, m))
    except ValueError:
        return None


def coro2_bound(n: int, k: int, r: int, delta) -> BoundReport:
    """(r + d^2) C(n-1,k-1)^2 + (n - r - floor(d)) (sum_{i=2}^{r+1} C(n-i,k-2))^2."""
    delta = _frac(delta)
    if not 0 <= delta <= 1:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    fl = floor(delta)
    tail = sum(binom(n - i, k - 2) for i in range(2, r + 2))
    bound = (r + delta ** 2) * binom(n - 1, k - 1) ** 2 + (n - r - fl) * tail ** 2
    M = level_prefix(n, k, 1, r) + delta * binom(n - r - 1, k - 1)
    rep = theorem_hypotheses_satisfied(n, k, 1, r, delta)
    rep.kind = "coro2"
    rep.M = M
    rep.bound_value = Fraction(bound)
    rep.reference_value = _reference(n, k, 1, r, M)
    if delta == 1:
        rep.alt_bound = coro2_bound(n, k, r + 1, 0).bound_value
    if rep.reference_value is None:
        rep.notes.append("size is not an integer; no reference family")
    elif rep.bound_holds is False:
        rep.notes.append("literal bound is below the exact lex-family value")
    return rep


def coro4_bound(n: int, k: int, t: int, r: int, delta, M=None) -> BoundReport:
    """(t-1)M^2 + (r + d^2) C(n-t,k-t)^2
    + (n - (t + r + floor(d) - 1)) (sum_{i=t+1}^{t+r} C(n-i, k-t-1))^2."""
    delta = _frac(delta)
    if t < 2:
        raise ValueError("coro4 needs t >= 2")
    if not 0 <= delta <= 1:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    size = level_prefix(n, k, t, r) + delta * binom(n - t - r, k - t)
    if M is not None and _frac(M) != size:
        raise ValueError(f"M={M} inconsistent with (r={r}, delta={delta}): expected {size}")
    fl = floor(delta)
    tail = sum(binom(n - i, k - t - 1) for i in range(t + 1, t + r + 1))
    bound = ((t - 1) * size ** 2 + (r + delta ** 2) * binom(n - t, k - t) ** 2
             + (n - (t + r + fl - 1)) * tail ** 2)
    rep = theorem_hypotheses_satisfied(n, k, t, r, delta)
    rep.kind = "coro4"
    rep.M = size
    rep.bound_value = Fraction(bound)
    rep.reference_value = _reference(n, k, t, r, size)
    if delta == 1:
        rep.alt_bound = coro4_bound(n, k, t, r + 1, 0).bound_value
    if rep.reference_value is None:
        rep.notes.append("size is not an integer; no reference family")
    elif rep.bound_holds is False:
        rep.notes.append("literal bound is below the exact lex-family value")
    return rep


# -- structure checks ------------------------------------------------------

def verify_sandwich(F: SetFamily, t: int, r: int) -> bool:
    """Is some relabeling of F squeezed between L^{(r)} and L^{(r+1)}?

    Equivalently: a (t-1)-set T in every member, r elements c whose stars
    T + {c} lie fully in F, and one more element e, such that every member
    meets those r + 1 elements.
    """
    n, k = F.n, F.k
    lo, hi = level_prefix(n, k, t, r), level_prefix(n, k, t, r + 1)
    if not lo <= len(F) <= hi:
        raise ValueError(f"|F|={len(F)} outside [{lo}, {hi}] for t={t}, r={r}")
    if t + r > n:
        return False
    masks = F.masks
    common = (1 << n) - 1
    for m in masks:
        common &= m
    full = binom(n - t, k - t)
    common_elems = [x for x in range(1, n + 1) if common >> (x - 1) & 1]
    for T in combinations(common_elems, t - 1):
        tm = to_mask(T)
        rest = [x for x in range(1, n + 1) if x not in T]
        starred = [c for c in rest
                   if sum(1 for m in masks if m & (1 << (c - 1))) == full]
        for C in combinations(starred, r):
            cm = to_mask(C)
            uncovered = [m for m in masks if not m & cm]
            pool = (1 << n) - 1
            for m in uncovered:
                pool &= m
            pool &= ~(tm | cm)
            if pool:
                return True
    return False


@dataclass(frozen=True)
class SandwichVerdict:
    verdict: str  # "holds" | "fails" | "not-applicable"
    t: int
    r: int | None
    delta: Fraction | None
    hypotheses: BoundReport | None
    reason: str = ""

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "t": self.t, "r": self.r,
                "delta": _fmt(self.delta), "reason": self.reason,
                "hypotheses": None if self.hypotheses is None else self.hypotheses.to_dict()}


def sandwich_verdict(F: SetFamily, t: int = 1) -> SandwichVerdict:
    """Three-valued sandwich check at the level given by |F|'s decomposition."""
    try:
        d = decompose_size(F.n, F.k, t, len(F))
    except ValueError as e:
        return SandwichVerdict("not-applicable", t, None, None, None, str(e))
    hyp = theorem_hypotheses_satisfied(F.n, F.k, t, d.r, d.delta)
    try:
        ok = verify_sandwich(F, t, d.r)
    except ValueError as e:
        return SandwichVerdict("not-applicable", t, d.r, d.delta, hyp, str(e))
    return SandwichVerdict("holds" if ok else "fails", t, d.r, d.delta, hyp)


@dataclass
class StarUnionResult:
    minimum: int
    expected: int
    configurations: list[tuple[tuple[int, ...], ...]]  # one per isomorphism class
    classes: list[SetFamily]
    unique: bool
    matches_lex: bool

    def to_dict(self) -> dict:
        return {"minimum": self.minimum, "expected": self.expected,
                "configurations": [[list(c) for c in conf] for conf in self.configurations],
                "unique": self.unique, "matches_lex": self.matches_lex}


def min_star_union_size(n: int, k: int, t: int, r: int,
                        max_configs: int = 2_000_000) -> StarUnionResult:
    """Minimum size of a union of r distinct full t-stars, by enumeration."""
    if not 1 <= t <= k <= n:
        raise ValueError(f"need 1 <= t <= k <= n, got n={n}, k={k}, t={t}")
    cores = list(combinations(range(1, n + 1), t))
    if not 1 <= r <= len(cores):
        raise ValueError(f"need 1 <= r <= C(n,t)={len(cores)}, got r={r}")
    if binom(len(cores), r) > max_configs:
        raise RuntimeError(f"C({len(cores)},{r}) core configurations exceed {max_configs}")
    stars = {c: frozenset(full_t_star_masks(n, k, c)) for c in cores}
    best, minimizers = None, {}
    for conf in combinations(cores, r):
        union = frozenset().union(*(stars[c] for c in conf))
        size = len(union)
        if best is None or size < best:
            best, minimizers = size, {union: conf}
        elif size == best:
            minimizers.setdefault(union, conf)
    fams = {}
    for union, conf in minimizers.items():
        fam = star_union(n, k, conf)
        fams.setdefault(fam.sets, (fam, conf))
    classes, confs = [], []
    seen = set()
    for fam, conf in fams.values():
        key = canonical_form(fam).family.sets
        if key not in seen:
            seen.add(key)
            classes.append(fam)
            confs.append(conf)
    expected = level_prefix(n, k, t, r)
    lex = lex_t_segment(n, k, t, r) if t + r - 1 <= n else None
    unique = len(classes) == 1
    matches = (best == expected and unique and lex is not None
               and is_isomorphic(classes[0], lex))
    return StarUnionResult(best, expected, confs, classes, unique, matches)


def full_t_star_masks(n: int, k: int, core) -> list[int]:
    core = tuple(core)
    rest = [x for x in range(1, n + 1) if x not in core]
    base = to_mask(core)
    return [base | to_mask(extra) for extra in combinations(rest, k - len(core))]


def star_formula_I(n: int, k: int) -> int:
    """Total intersection of a full 1-star: C(n-1,k-1)^2 + (n-1) C(n-2,k-2)^2."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    tail = binom(n - 2, k - 2) if n >= 2 else 0
    return binom(n - 1, k - 1) ** 2 + (n - 1) * tail ** 2


__all__ = [
    "ConvexMaxResult", "convex_max", "convex_max_vertices", "hypothesis_constant",
    "BoundReport", "theorem_hypotheses_satisfied", "coro2_bound", "coro4_bound",
    "verify_sandwich", "SandwichVerdict", "sandwich_verdict", "StarUnionResult",
    "min_star_union_size", "star_formula_I",
]
