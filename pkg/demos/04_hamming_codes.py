"""Constant-weight codes: small average distance is large total intersection.

Run: python demos/04_hamming_codes.py
"""
from tic import ConstantWeightCode, lex_segment, min_avg_distance, total_hamming_distance
from tic.hamming import popcount_total_distance

F = lex_segment(6, 2, 5)
code = ConstantWeightCode.from_family(F)
print(code.to_text(), end="")
print("popcount total distance:", popcount_total_distance(F.masks))
print("2kM^2 - 2I:             ", total_hamming_distance(F))

# The tightest codes come straight from the exact maximizer.
for n, k, M in [(4, 2, 2), (5, 2, 4), (6, 2, 10), (6, 3, 4)]:
    res = min_avg_distance(n, k, M)
    print(f"\n(n={n}, k={k}, M={M}) min average distance {res.average} (total {res.total_distance})")
    print("  " + " ".join(res.code.words))
