"""Total intersection, two ways, and why stars win for small families.

Run: python demos/01_total_intersection.py
"""
from tic import (
    SetFamily, degree_vector, full_t_star, lex_segment, random_family, star_formula_I,
    total_intersection,
)
from tic.family import pairwise_total_intersection, total_t_intersection, total_t_intersection_pairs

# A family of 3-subsets of [6]. I(F) can be read off the degrees or
# summed over ordered member pairs; the two always agree.
F = random_family(6, 3, 8, 7)
print(F)
print("degrees         ", degree_vector(F))
print("sum of deg^2    ", total_intersection(F))
print("pairwise sum    ", pairwise_total_intersection(F))

# The same holds one level up: t-set degrees against C(|A & B|, t).
for t in (1, 2, 3):
    print(f"t={t}: degree side {total_t_intersection(F, t)}, pair side {total_t_intersection_pairs(F, t)}")

# A full star has a closed form.
S = full_t_star(7, 3, (1,))
print("\nfull star on [7], k=3:", total_intersection(S), "formula:", star_formula_I(7, 3))

# Lex segments pack sets around small elements, which pushes I up.
print("\nM   random   lex")
for M in (4, 8, 12, 16):
    print(f"{M:<3} {total_intersection(random_family(6, 3, M, M)):<8} {total_intersection(lex_segment(6, 3, M))}")

# Not always optimal: the triangle ties the star at (4, 2, 3).
tri = SetFamily.from_sets(4, 2, [(1, 2), (1, 3), (2, 3)])
print("\ntriangle", total_intersection(tri), "vs star", total_intersection(lex_segment(4, 2, 3)))
