"""Solver backends: exact rationals, sparse direct floats, matrix-free CG.

The exact backend reproduces reference fractions bit-for-bit and scales
to about a dozen players (p-adic lifting keeps it fast well past where
naive fraction elimination bogs down).  The conjugate-gradient backend
never forms a matrix and handles 2**16 coalitions in seconds; on the
unweighted cube its iteration count tracks the number of distinct
Laplacian eigenvalues, which is just n.
"""

import time

import numpy as np

from hodgeshapley import (CG_FLOAT, DENSE_FLOAT, DENSE_RATIONAL, SolverConfig,
                          decompose, full_hypercube, game_from_values, make_glove_game)

print("=== three backends, one answer ===")
v = make_glove_game()
g = full_hypercube(3)
exact = decompose(g, v, SolverConfig(backend=DENSE_RATIONAL))
print("exact:", [str(x) for x in exact.allocation()])
for backend in (DENSE_FLOAT, CG_FLOAT):
    dec = decompose(g, v.as_float(), SolverConfig(backend=backend))
    drift = max(abs(float(a) - b) for a, b in zip(exact.allocation(), dec.allocation()))
    print(f"{backend}: max drift {drift:.2e}")

print()
print("=== matrix-free CG at scale ===")
for n in (12, 14, 16):
    rng = np.random.default_rng(n)
    vals = rng.standard_normal(1 << n)
    vals[0] = 0.0
    game = game_from_values(n, vals, "float")
    t0 = time.time()
    graph = full_hypercube(n)
    dec = decompose(graph, game, SolverConfig(backend=CG_FLOAT))
    iters = max(s.iterations for s in dec.diagnostics)
    print(f"n={n}: {graph.num_vertices} vertices, {graph.num_edges} edges, "
          f"{time.time() - t0:5.2f}s, max {iters} CG iterations, "
          f"efficiency gap {dec.efficiency_gap:.2e}")
