"""Closed-form bounds evaluated exactly, next to the families they describe.

Run: python demos/03_bounds.py
"""
from fractions import Fraction

from tic import (
    convex_max, coro2_bound, coro4_bound, lex_segment, sandwich_verdict,
    theorem_hypotheses_satisfied,
)

# Maximizing a sum of squares in a box puts mass at the ends.
res = convex_max(0, 5, 12, 3)
print("convex max (a=0, b=5, M=12, 3 vars):", res.value, [str(x) for x in res.witness])

# The quadratic bound at level boundaries matches the lex family exactly.
for r in (1, 2, 3):
    rep = coro2_bound(10, 3, r, 0)
    print(f"r={r} delta=0  M={rep.M}  bound={rep.bound_value}  lex I={rep.reference_value}  {rep.verdict}")

# At delta = 1 the literal formula undercounts; it is reported, not trusted.
rep = coro2_bound(10, 3, 1, 1)
print(f"r=1 delta=1  bound={rep.bound_value}  lex I={rep.reference_value}  {rep.verdict}")
rep = coro4_bound(8, 3, 2, 0, 1)
print(f"t=2 r=0 delta=1  bound={rep.bound_value}  lex I={rep.reference_value}  {rep.verdict}")

# The structural statements need very large n.
for n, k, r in [(10, 3, 1), (10**6, 2, 0)]:
    h = theorem_hypotheses_satisfied(n, k, 1, r, Fraction(1, 2))
    print(f"n={n} k={k} r={r}: required n >= {h.required_n}, met: {h.hypotheses_met}")
h = theorem_hypotheses_satisfied(10**9, 3, 2, 1, 1)
print(f"t=2 needs n >= a number with {len(str(h.required_n))} digits")

# The sandwich shape itself can still be checked on any family.
v = sandwich_verdict(lex_segment(8, 3, 30))
print("lex_segment(8,3,30):", v.verdict, "at r =", v.r, "delta =", v.delta)
