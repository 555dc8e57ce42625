"""Acceptance suite: one test (or test group) per shipping criterion.

Each criterion pins its stated tolerance -- exact equality for rational
paths, the quoted float bounds elsewhere -- and the stated wall-clock
budget.  The conftest hook prints a one-line PASS/FAIL verdict per
criterion at the end of the run.
"""

import itertools
import random
import time
from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from hodgeshapley import closed_form as cf
from hodgeshapley import coalition as co
from hodgeshapley import game as gm
from hodgeshapley import graph as gr
from hodgeshapley import operators as ops
from hodgeshapley import solve as sv
from hodgeshapley.reference_tables import (ALL_REFERENCES, GLOVE_HOLDOUT_1_HODGE,
                                           GLOVE_HOLDOUT_1_PRECEDENCE)
from oracles import random_dyadic_values, random_rational_values


def bits(*players):
    return co.from_members(players)


def rational_game(rng, n):
    return gm.game_from_values(n, random_rational_values(rng, n))


def weight_kind_samples(rng, n):
    yield gr.EdgeWeighting.constant(1)
    yield gr.EdgeWeighting.constant(Fraction(rng.randint(1, 6), rng.randint(1, 4)))
    yield gr.EdgeWeighting.by_cardinality(
        [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(n)])
    g0 = gr.full_hypercube(n)
    entries = {e: Fraction(rng.randint(1, 6), rng.randint(1, 4))
               for e in g0.edges() if rng.random() < 0.5}
    yield gr.EdgeWeighting.explicit(entries)


def graph_samples(rng, n, weighting):
    full = gr.full_hypercube(n, weighting)
    yield full
    candidates = [S for S in co.enumerate_coalitions(n) if S not in (0, (1 << n) - 1)]
    rng.shuffle(candidates)
    g = full
    for S in candidates[: max(1, len(candidates) // 4)]:
        try:
            g = gr.restrict(g, [S])
        except gr.InfeasibilityError:
            pass
    yield g


def test_criterion_01_table_reproduction():
    start = time.time()
    matched = []
    for ref in ALL_REFERENCES:
        g = ref.graph()
        v = ref.game()
        dec = sv.decompose(g, v, sv.SolverConfig(backend=sv.DENSE_RATIONAL))
        count = 0
        for S, row in ref.expected().items():
            assert v.value(S) == row[0]
            for i in range(3):
                assert dec.components[i].value(S) == row[i + 1], (ref.key, S, i)
                count += 1
        matched.append(count)
    assert matched == [24, 24, 24, 21, 21, 21]
    assert time.time() - start < 1.0


def test_criterion_02_shapley_identity_unweighted():
    start = time.time()
    rng = random.Random(1002)
    for n in range(2, 7):
        g = gr.full_hypercube(n)
        for _ in range(40):
            v = rational_game(rng, n)
            dec = sv.decompose(g, v)
            for i in range(n):
                assert dec.components[i].grand_value() == cf.shapley_direct(v, i)
    assert time.time() - start < 30.0


def test_criterion_03_shapley_identity_symmetric_weights():
    start = time.time()
    rng = random.Random(1003)
    for n in range(2, 7):
        g = gr.full_hypercube(n, gr.EdgeWeighting.size_plus_one(n))
        for _ in range(40):
            v = rational_game(rng, n)
            dec = sv.decompose(g, v)
            for i in range(n):
                assert dec.components[i].grand_value() == cf.shapley_direct(v, i)
    assert time.time() - start < 30.0


def test_criterion_04_oracle_equivalence():
    rng = random.Random(1004)
    for _ in range(30):
        n = rng.randint(1, 6)
        v = rational_game(rng, n)
        for i in range(n):
            assert cf.shapley_direct(v, i) == cf.shapley_permutation_oracle(v, i)


def test_criterion_05_efficiency():
    rng = random.Random(1005)
    for n in (2, 3, 4, 5):
        for weighting in weight_kind_samples(rng, n):
            for g in graph_samples(rng, n, weighting):
                v = rational_game(rng, n)
                dec = sv.decompose(g, v)
                for S in g.vertices.tolist():
                    assert sum(c.value(S) for c in dec.components) == v.value(S)


def test_criterion_05_null_player():
    rng = random.Random(1055)
    for n in (2, 3, 4, 5):
        for weighting in weight_kind_samples(rng, n):
            for g in graph_samples(rng, n, weighting):
                i = rng.randrange(n)
                base = random_rational_values(rng, n)
                vals = [base[S & ~(1 << i)] for S in co.enumerate_coalitions(n)]
                v = gm.game_from_values(n, vals)
                dec = sv.decompose(g, v)
                assert all(x == 0 for x in dec.components[i].values)


def test_criterion_05_linearity():
    rng = random.Random(1505)
    for n in (2, 3, 4, 5):
        weighting = next(itertools.islice(weight_kind_samples(rng, n), 2, 3))
        for g in graph_samples(rng, n, weighting):
            v1, v2 = rational_game(rng, n), rational_game(rng, n)
            a1 = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
            a2 = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
            dec1, dec2 = sv.decompose(g, v1), sv.decompose(g, v2)
            dec = sv.decompose(g, gm.linear_combine(a1, v1, a2, v2))
            for i in range(n):
                expected = gm.linear_combine(a1, dec1.components[i],
                                             a2, dec2.components[i])
                assert dec.components[i].values == expected.values


def test_criterion_05_equivariance():
    from test_solve import _permuted_setup
    rng = random.Random(1555)
    n = 3
    g0 = gr.full_hypercube(n)
    entries = {e: Fraction(rng.randint(1, 5), rng.randint(1, 3)) for e in g0.edges()}
    graphs = [g0,
              gr.full_hypercube(n, gr.EdgeWeighting.explicit(entries)),
              gr.full_hypercube(n, gr.EdgeWeighting.size_plus_one(n)),
              gr.restrict(gr.full_hypercube(n), [bits(1)])]
    for g in graphs:
        v = rational_game(rng, n)
        dec = sv.decompose(g, v)
        for sigma in itertools.permutations(range(n)):
            g2, v2 = _permuted_setup(g, v, sigma)
            dec2 = sv.decompose(g2, v2)
            for i in range(n):
                expected = gm.pullback(sigma, dec.components[sigma[i]])
                for S in g2.vertices.tolist():
                    assert dec2.components[i].value(S) == expected.value(S)


def test_criterion_06_inessential_characterization():
    rng = random.Random(1006)
    # additive games: the per-player edge residual vanishes identically
    for n in (2, 3, 4):
        for weighting in weight_kind_samples(rng, n):
            for g in graph_samples(rng, n, weighting):
                xs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
                v = gm.make_inessential_game(xs)
                dec = sv.decompose(g, v)
                for i in range(n):
                    assert sv.edge_residual(g, v, dec, i).is_zero()
    # the glove game: some residual is nonzero, yet its weighted adjoint is zero
    v = gm.make_glove_game()
    for weighting in (gr.EdgeWeighting.constant(1), gr.EdgeWeighting.size_plus_one(3)):
        g = gr.full_hypercube(3, weighting)
        dec = sv.decompose(g, v)
        assert any(not sv.edge_residual(g, v, dec, i).is_zero() for i in range(3))
        for i in range(3):
            r = sv.edge_residual(g, v, dec, i)
            assert all(x == 0 for x in ops.d_star(r).values)


def test_criterion_07_greens_function_route():
    rng = random.Random(1007)
    g3 = gr.full_hypercube(3)
    # n = 3 exhaustively: equality on a spanning basis of games extends to
    # every game by linearity of both routes
    basis = [gm.game_from_map(3, {T: Fraction(1)}) for T in range(1, 8)]
    for v in basis + [gm.make_glove_game()]:
        for i in range(3):
            assert cf.component_explicit(v, i).values == \
                sv.solve_component(g3, v, i).values
    for n in (4, 5):
        g = gr.full_hypercube(n)
        for _ in range(25):
            v = rational_game(rng, n)
            for i in range(n):
                assert cf.component_explicit(v, i).values == \
                    sv.solve_component(g, v, i).values
    for n in range(2, 7):
        for s in range(n):
            expected = Fraction(factorial(s) * factorial(n - 1 - s), factorial(n))
            for i in (0, n - 1):
                assert cf.verify_shapley_coefficient(n, s, i) == expected


def test_criterion_08_pure_bargaining_closed_form():
    for n in (3, 4):
        total = Fraction(7, 2)
        v = gm.make_pure_bargaining_game(n, total)
        g = gr.full_hypercube(n)
        dec = sv.decompose(g, v)
        for i in range(n):
            for S in co.enumerate_coalitions(n):
                assert cf.pure_bargaining_component(n, total, i, S) == \
                    dec.components[i].value(S)
            assert dec.components[i].grand_value() == total / n


def test_criterion_09_restricted_cooperation_comparison():
    g = gr.restrict(gr.full_hypercube(3), [bits(1)])
    v = gm.make_glove_game()
    dec = sv.decompose(g, v)
    assert dec.allocation() == GLOVE_HOLDOUT_1_HODGE
    prec = tuple(cf.precedence_shapley_oracle(g, v, i) for i in range(3))
    assert prec == GLOVE_HOLDOUT_1_PRECEDENCE


def test_criterion_10_float_cg_consistency():
    start = time.time()
    rng = random.Random(1010)
    for n in range(2, 11):
        vals = random_dyadic_values(rng, n)
        v_rat = gm.game_from_values(n, vals)
        v_float = v_rat.as_float()
        g = gr.full_hypercube(n)
        exact = sv.decompose(g, v_rat, sv.SolverConfig(backend=sv.DENSE_RATIONAL))
        cg = sv.decompose(g, v_float,
                          sv.SolverConfig(backend=sv.CG_FLOAT, cg_tolerance=1e-12))
        for i in range(n):
            ref = np.array([float(x) for x in exact.components[i].values])
            got = np.asarray(cg.components[i].values)
            assert np.max(np.abs(got - ref)) <= 1e-8
        assert max(s.iterations for s in cg.diagnostics) <= 10 * n
    assert time.time() - start < 60.0


def test_criterion_11_scale_smoke():
    start = time.time()
    n = 16
    rng = np.random.default_rng(1011)
    vals = rng.standard_normal(1 << n)
    vals[0] = 0.0
    v = gm.game_from_values(n, vals, gm.FLOAT)
    g = gr.full_hypercube(n)
    assert g.num_vertices == 65536 and g.num_edges == 524288
    dec = sv.decompose(g, v, sv.SolverConfig(backend=sv.CG_FLOAT))
    elapsed = time.time() - start
    scale = max(1.0, float(np.max(np.abs(vals))))
    assert dec.efficiency_gap <= 1e-6 * scale
    assert elapsed < 120.0
