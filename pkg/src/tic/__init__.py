"""Total intersection of k-uniform set families.

Exact tools for I(F) = sum over member pairs of |A & B|: lex and star
constructions, shifting and replacement moves, an exact branch-and-bound
maximizer, canonical labeling, closed-form bound evaluators, and the
constant-weight code view of the same quantity.
"""
from .bounds import (
    BoundReport, ConvexMaxResult, convex_max, coro2_bound, coro4_bound,
    min_star_union_size, sandwich_verdict, star_formula_I,
    theorem_hypotheses_satisfied, verify_sandwich,
)
from .canonical import CanonicalForm, canonical_form, is_isomorphic
from .combinatorics import KSubset, binom, lex_compare, lex_rank, lex_unrank
from .constructions import (
    full_t_star, lex_segment, lex_t_segment, random_family, sandwich_family, star_union,
)
from .family import (
    SetFamily, SizeDecomposition, cross_total_intersection, decompose_size,
    degree_vector, find_full_t_stars, is_t_intersecting, link, min_s_cover,
    pairwise_with_set, t_degree, total_intersection, total_t_intersection,
)
from .hamming import (
    ConstantWeightCode, average_distance, min_avg_distance, total_hamming_distance,
)
from .shifting import compress, improve_once, local_search, shift
from .solver import SolveResult, all_optimal_families, max_total_intersection

__version__ = "0.1.0"
