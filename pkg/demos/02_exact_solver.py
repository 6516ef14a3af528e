"""Exact maxima by branch and bound, and how close local search gets.

Run: python demos/02_exact_solver.py
"""
from tic import (
    lex_segment, local_search, max_total_intersection, random_family, total_intersection,
)

for n, k, M in [(4, 2, 3), (6, 3, 4), (6, 2, 10), (7, 3, 7)]:
    res = max_total_intersection(n, k, M, enumerate_all=True)
    lex = total_intersection(lex_segment(n, k, M))
    print(f"MI({n},{k},{M}) = {res.mi_value}  lex = {lex}  "
          f"classes = {len(res.optima_canonical)}  nodes = {res.nodes_explored}")
    for G in res.optima_canonical:
        print("   ", G)

# At (6,2,10) the complete graph K5 beats the lex segment (a star plus a
# bit), so lex order is not optimal at this scale.

# A node budget turns an exact search into a labelled partial answer.
res = max_total_intersection(7, 3, 10, node_limit=500)
print("\nwith a 500-node budget:", res.mi_value, res.status)

# Replacement moves climb from random starts.
hits = 0
for seed in range(20):
    G, trace = local_search(random_family(6, 3, 4, seed))
    hits += total_intersection(G) == 36
print(f"local search reached 36 at (6,3,4) from {hits}/20 random starts")
