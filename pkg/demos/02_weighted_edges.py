"""Edge weights change the decomposition -- and sometimes the allocation.

Weights express how strongly each coalition transition counts in the
least-squares fit.  Any weighting that is invariant under relabeling the
players (constant, or a function of coalition size) still reproduces the
Shapley values at the grand coalition; an asymmetric weighting shifts
payoff toward the player whose entry edge was discounted.
"""

from fractions import Fraction

from hodgeshapley import (Edge, EdgeWeighting, decompose, full_hypercube,
                          make_glove_game, render_table)

v = make_glove_game()

print("=== weight w(S, S+{i}) = |S|+1: symmetric, so the allocation is unchanged ===")
g_sym = full_hypercube(3, EdgeWeighting.size_plus_one(3))
dec = decompose(g_sym, v)
print(render_table(dec, v))

print("=== weight 1/2 on the edge where player 0 joins first ===")
# player 0 is reluctant to start the coalition; discounting that edge
# weakens the penalty for contributing nothing there, raising player 0's
# payoff from 2/3 to 13/17 at the expense of the others
g_skew = full_hypercube(3, EdgeWeighting.explicit({Edge(0, 0): Fraction(1, 2)}))
dec = decompose(g_skew, v)
print(render_table(dec, v))
