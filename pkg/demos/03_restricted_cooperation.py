"""Restricted cooperation: remove infeasible coalitions from the cube.

When a player refuses to join the coalition first, the corresponding
singleton vertex (and its edges) disappears.  The decomposition on the
remaining subgraph still splits the game exactly, but the allocation can
move -- and it generally differs from the feasible-permutation average
used by precedence-constrained Shapley variants.
"""

from hodgeshapley import (compare_allocations, decompose, degree_product_weighting,
                          feasible_permutations, from_members, full_hypercube,
                          make_glove_game, render_table, restrict)

v = make_glove_game()

print("=== player 0 (the left glove) never joins first ===")
# removing {0} deletes the only edges where players 1 and 2 add value,
# so they become null players and player 0 collects everything
g = restrict(full_hypercube(3), [from_members([0])])
print(render_table(decompose(g, v), v))

print("=== player 1 never joins first ===")
g = restrict(full_hypercube(3), [from_members([1])])
print(render_table(decompose(g, v), v))
print("feasible joining orders:", feasible_permutations(g))
print(compare_allocations(g, v))

print()
print("=== same subgraph, but edges weighted by endpoint-degree products ===")
g_deg = degree_product_weighting(g)
print(render_table(decompose(g_deg, v), v))
print("here the allocation happens to match the precedence average:")
print(compare_allocations(g_deg, v))
