"""Matrix-free discrete calculus on a coalition graph.

The discrete gradient ``d`` sends vertex functions to edge functions,
``(d u)(S, S|{i}) = u(S|{i}) - u(S)``; its per-player splitting keeps
only the edges a single player joins on.  The weighted adjoint reverses
direction: incoming edges contribute ``+w f``, outgoing edges ``-w f``.
Composing the two gives the (weighted) graph Laplacian without ever
materializing a matrix; each apply is one pass over the feasible edges.

Edge values are stored in canonical orientation only (base to base|{i});
the sign convention for the reverse orientation lives entirely inside
``d_star``.  Float-mode reductions accumulate in fixed edge-index order,
so repeated runs are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import coalition as co
from .errors import DomainError
from .game import RATIONAL, Game
from .graph import GameGraph


@dataclass(frozen=True, eq=False)
class VertexFunction:
    """A scalar per feasible vertex, ordered like graph.vertices."""

    graph: GameGraph
    mode: str
    values: list | np.ndarray

    def value_at(self, S: co.Coalition):
        pos = self.graph.vertex_pos[S]
        if pos < 0:
            raise DomainError(f"coalition {co.coalition_key(S)} is not a feasible vertex")
        return self.values[pos]

    def norm_inf(self):
        if self.mode == RATIONAL:
            return max((abs(x) for x in self.values), default=Fraction(0))
        return float(np.max(np.abs(self.values))) if len(self.values) else 0.0

    def total(self):
        if self.mode == RATIONAL:
            return sum(self.values, Fraction(0))
        return float(np.sum(self.values))


@dataclass(frozen=True, eq=False)
class EdgeFunction:
    """A scalar per feasible edge, in canonical orientation, ordered like graph edges."""

    graph: GameGraph
    mode: str
    values: list | np.ndarray

    def value_at(self, edge) -> object:
        k = self.graph.edge_index.get(tuple(edge))
        if k is None:
            raise DomainError(f"edge {edge} is not a feasible edge")
        return self.values[k]

    def is_zero(self) -> bool:
        if self.mode == RATIONAL:
            return all(x == 0 for x in self.values)
        return not np.any(self.values)


def vertex_function_from_game(g: GameGraph, v: Game) -> VertexFunction:
    """Restrict a game's value table to the feasible vertices of g."""
    if v.n != g.n:
        raise DomainError("game and graph have different player counts")
    if v.is_rational:
        vals = [v.values[S] for S in g.vertices.tolist()]
    else:
        vals = np.asarray(v.values)[g.vertices]
    return VertexFunction(g, v.mode, vals)


def game_from_vertex_function(u: VertexFunction, names=None) -> Game:
    """Game whose values agree with u on feasible vertices (0 elsewhere).

    On a restricted graph the infeasible entries are padding only; every
    consumer in this package reads feasible coalitions exclusively.
    """
    g = u.graph
    if u.mode == RATIONAL:
        vals = [Fraction(0)] * (1 << g.n)
        for S, x in zip(g.vertices.tolist(), u.values):
            vals[S] = x
    else:
        vals = np.zeros(1 << g.n)
        vals[g.vertices] = u.values
    return Game(g.n, u.mode, tuple(vals) if u.mode == RATIONAL else vals, names)


def _check_same_graph(a, b):
    if a.graph is not b.graph:
        raise DomainError("functions live on different graphs")
    if a.mode != b.mode:
        raise TypeError(f"scalar mode mismatch: {a.mode} vs {b.mode}")


def d(u: VertexFunction) -> EdgeFunction:
    """Discrete gradient: marginal value along each feasible edge."""
    g = u.graph
    if u.mode == RATIONAL:
        vals = [u.values[dp] - u.values[sp]
                for sp, dp in zip(g.edge_src_pos.tolist(), g.edge_dst_pos.tolist())]
    else:
        arr = np.asarray(u.values)
        vals = arr[g.edge_dst_pos] - arr[g.edge_src_pos]
    return EdgeFunction(g, u.mode, vals)


def d_i(i: int, u: VertexFunction) -> EdgeFunction:
    """Partial gradient: equals d(u) on player i's edges, zero elsewhere."""
    g = u.graph
    if not 0 <= i < g.n:
        raise DomainError(f"player index {i} outside [0, {g.n})")
    if u.mode == RATIONAL:
        vals = [u.values[dp] - u.values[sp] if p == i else Fraction(0)
                for sp, dp, p in zip(g.edge_src_pos.tolist(), g.edge_dst_pos.tolist(),
                                     g.edge_player.tolist())]
    else:
        arr = np.asarray(u.values)
        vals = np.where(g.edge_player == i, arr[g.edge_dst_pos] - arr[g.edge_src_pos], 0.0)
    return EdgeFunction(g, u.mode, vals)


def d_star(f: EdgeFunction) -> VertexFunction:
    """Weighted adjoint of d: signed, weighted edge sums at each vertex."""
    g = f.graph
    if f.mode == RATIONAL:
        out = [Fraction(0)] * g.num_vertices
        for k, w in enumerate(g.weight_fractions):
            wf = w * f.values[k]
            out[g.edge_dst_pos[k]] += wf
            out[g.edge_src_pos[k]] -= wf
    else:
        wf = g.weight_floats * np.asarray(f.values)
        out = (np.bincount(g.edge_dst_pos, weights=wf, minlength=g.num_vertices)
               - np.bincount(g.edge_src_pos, weights=wf, minlength=g.num_vertices))
    return VertexFunction(g, f.mode, out)


def laplacian_apply(u: VertexFunction) -> VertexFunction:
    """Weighted graph Laplacian L = d* d applied matrix-free."""
    return d_star(d(u))


def laplacian_i_apply(i: int, u: VertexFunction) -> VertexFunction:
    """Per-player Laplacian d* d_i; equals the Laplacian weighted by w on
    player i's edges and 0 elsewhere."""
    return d_star(d_i(i, u))


def edge_inner_product(f: EdgeFunction, g2: EdgeFunction):
    """Weighted l2 inner product over feasible edges."""
    _check_same_graph(f, g2)
    g = f.graph
    if f.mode == RATIONAL:
        return sum((w * x * y for w, x, y in zip(g.weight_fractions, f.values, g2.values)),
                   Fraction(0))
    return float(np.dot(g.weight_floats * np.asarray(f.values), np.asarray(g2.values)))


def edge_difference(f: EdgeFunction, g2: EdgeFunction) -> EdgeFunction:
    """Pointwise f - g2 on the shared graph."""
    _check_same_graph(f, g2)
    if f.mode == RATIONAL:
        vals = [x - y for x, y in zip(f.values, g2.values)]
    else:
        vals = np.asarray(f.values) - np.asarray(g2.values)
    return EdgeFunction(f.graph, f.mode, vals)
