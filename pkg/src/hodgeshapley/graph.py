"""The coalition hypercube graph, edge weightings, and restricted subgraphs.

Vertices are coalitions (bitset ints); the oriented edge ``(S, S|{i})``
is stored as its base coalition plus the joining player and always kept
in that canonical orientation.  Restricted cooperation removes vertices
and edges; the remaining graph must stay connected, keep the empty and
grand coalitions, and keep every vertex reachable from the empty
coalition by adding one player at a time.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import coalition as co
from .errors import DomainError, InfeasibilityError, SpecFileError
from .game import parse_scalar, RATIONAL


class Edge(NamedTuple):
    """Oriented edge (base, base | {player}); the player is not in base."""

    base: co.Coalition
    player: int


CONSTANT = "constant"
BY_CARDINALITY = "by_cardinality"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class EdgeWeighting:
    """Strictly positive weight per hypercube edge.

    Kinds: a single constant; a per-cardinality table indexed by |base|
    (length n); or an explicit per-edge map with default 1.  A weight of
    zero is never allowed -- absent cooperation is modeled by removing
    the edge, which keeps the Laplacian kernel one-dimensional.
    """

    kind: str
    constant_value: Fraction = Fraction(1)
    table: tuple[Fraction, ...] = ()
    entries: tuple[tuple[Edge, Fraction], ...] = ()
    default: Fraction = Fraction(1)

    @staticmethod
    def constant(c=1) -> "EdgeWeighting":
        c = Fraction(c)
        if c <= 0:
            raise ValueError("edge weights must be strictly positive")
        return EdgeWeighting(CONSTANT, constant_value=c)

    @staticmethod
    def by_cardinality(values: Sequence) -> "EdgeWeighting":
        table = tuple(Fraction(x) for x in values)
        if any(w <= 0 for w in table):
            raise ValueError("edge weights must be strictly positive")
        return EdgeWeighting(BY_CARDINALITY, table=table)

    @staticmethod
    def size_plus_one(n: int) -> "EdgeWeighting":
        """The per-cardinality weighting w(S, S|{i}) = |S| + 1."""
        return EdgeWeighting.by_cardinality([s + 1 for s in range(n)])

    @staticmethod
    def explicit(entries: Mapping[Edge, object], default=1) -> "EdgeWeighting":
        default = Fraction(default)
        items = tuple(sorted((Edge(*e), Fraction(w)) for e, w in entries.items()))
        if default <= 0 or any(w <= 0 for _, w in items):
            raise ValueError("edge weights must be strictly positive")
        return EdgeWeighting(EXPLICIT, entries=items, default=default)

    @cached_property
    def _entry_map(self) -> dict:
        return dict(self.entries)

    def weight(self, edge: Edge) -> Fraction:
        if self.kind == CONSTANT:
            return self.constant_value
        if self.kind == BY_CARDINALITY:
            s = co.size(edge.base)
            if s >= len(self.table):
                raise ValueError(f"cardinality table too short for edge base size {s}")
            return self.table[s]
        return self._entry_map.get(Edge(*edge), self.default)

    @property
    def permutation_invariant(self) -> bool:
        """True when the weighting is symmetric under every player relabeling."""
        return self.kind in (CONSTANT, BY_CARDINALITY)


@dataclass(frozen=True, eq=False)
class GameGraph:
    """A connected subgraph of the coalition hypercube with positive edge weights.

    Immutable after construction; the heavyweight index structures used by
    the solvers are built lazily and cached on the instance.
    """

    n: int
    vertices: np.ndarray        # feasible coalition bitsets, ascending
    edge_base: np.ndarray       # base coalition per feasible edge
    edge_player: np.ndarray     # joining player per feasible edge
    weighting: EdgeWeighting

    def __post_init__(self):
        object.__setattr__(self, "vertices", np.asarray(self.vertices, dtype=np.int64))
        object.__setattr__(self, "edge_base", np.asarray(self.edge_base, dtype=np.int64))
        object.__setattr__(self, "edge_player", np.asarray(self.edge_player, dtype=np.int64))
        if self.weighting.kind == BY_CARDINALITY and len(self.weighting.table) != self.n:
            raise ValueError(f"cardinality weight table needs {self.n} entries, "
                             f"got {len(self.weighting.table)}")

    # -- basic shape ------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edge_base)

    @cached_property
    def edge_dst(self) -> np.ndarray:
        return self.edge_base | (np.int64(1) << self.edge_player)

    @cached_property
    def is_full_cube(self) -> bool:
        return self.num_vertices == (1 << self.n) and self.num_edges == self.n << max(self.n - 1, 0)

    @cached_property
    def vertex_pos(self) -> np.ndarray:
        """Dense position of each coalition among feasible vertices; -1 if infeasible."""
        pos = np.full(1 << self.n, -1, dtype=np.int64)
        pos[self.vertices] = np.arange(self.num_vertices)
        return pos

    @cached_property
    def edge_src_pos(self) -> np.ndarray:
        return self.vertex_pos[self.edge_base]

    @cached_property
    def edge_dst_pos(self) -> np.ndarray:
        return self.vertex_pos[self.edge_dst]

    def contains_vertex(self, S: co.Coalition) -> bool:
        return 0 <= S < (1 << self.n) and self.vertex_pos[S] >= 0

    def contains_edge(self, edge: Edge) -> bool:
        base, player = edge
        if not self.contains_vertex(base) or (base >> player) & 1:
            return False
        return self.edge_index.get(Edge(base, player)) is not None

    def edges(self) -> Iterable[Edge]:
        for b, p in zip(self.edge_base.tolist(), self.edge_player.tolist()):
            yield Edge(b, p)

    @cached_property
    def edge_index(self) -> dict:
        return {Edge(b, p): k
                for k, (b, p) in enumerate(zip(self.edge_base.tolist(), self.edge_player.tolist()))}

    # -- weights and degrees ----------------------------------------------

    @cached_property
    def weight_fractions(self) -> tuple[Fraction, ...]:
        w = self.weighting
        return tuple(w.weight(e) for e in self.edges())

    @cached_property
    def weight_floats(self) -> np.ndarray:
        return np.array([float(w) for w in self.weight_fractions], dtype=np.float64)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Orientation-blind incident-edge count per feasible vertex."""
        deg = np.zeros(self.num_vertices, dtype=np.int64)
        np.add.at(deg, self.edge_src_pos, 1)
        np.add.at(deg, self.edge_dst_pos, 1)
        return deg

    def degree(self, S: co.Coalition) -> int:
        if not self.contains_vertex(S):
            raise DomainError(f"coalition {co.coalition_key(S)} is not a feasible vertex")
        return int(self.degrees[self.vertex_pos[S]])


def _neighbors(g_vertices: set, n: int, S: int):
    for i in range(n):
        yield S ^ (1 << i)


def _validate(n: int, vertices: np.ndarray, edge_base: np.ndarray,
              edge_player: np.ndarray) -> None:
    vset = set(vertices.tolist())
    full = (1 << n) - 1
    if 0 not in vset:
        raise InfeasibilityError("the empty coalition must be feasible", coalition=0)
    if full not in vset:
        raise InfeasibilityError("the grand coalition must be feasible", coalition=full)
    dst = edge_base | (np.int64(1) << edge_player)
    for b, d in zip(edge_base.tolist(), dst.tolist()):
        if b not in vset or d not in vset:
            raise InfeasibilityError(
                f"edge endpoint {co.coalition_key(d if b in vset else b)} is infeasible",
                coalition=d if b in vset else b)
    # adjacency over feasible edges only
    adj: dict[int, list[int]] = {v: [] for v in vset}
    up: dict[int, list[int]] = {v: [] for v in vset}
    for b, d in zip(edge_base.tolist(), dst.tolist()):
        adj[b].append(d)
        adj[d].append(b)
        up[b].append(d)
    # undirected connectivity: BFS from {} must reach every feasible vertex
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if seen != vset:
        missing = min(vset - seen)
        raise InfeasibilityError(
            f"graph is disconnected: {co.coalition_key(missing)} cannot be reached "
            f"from the empty coalition", coalition=missing)
    # feasibility: every coalition must be formable by adding players one at
    # a time starting from the empty coalition (upward reachability)
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in up[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if seen != vset:
        missing = min(vset - seen)
        raise InfeasibilityError(
            f"coalition {co.coalition_key(missing)} cannot be formed starting from "
            f"the empty coalition", coalition=missing)


def full_hypercube(n: int, weighting: EdgeWeighting | None = None) -> GameGraph:
    """The complete n-dimensional coalition hypercube."""
    if n < 1:
        raise ValueError("the hypercube graph needs at least one player")
    co.check_player_count(n)
    if weighting is None:
        weighting = EdgeWeighting.constant(1)
    verts = np.arange(1 << n, dtype=np.int64)
    bases = []
    players = []
    for i in range(n):
        free = verts[(verts >> i) & 1 == 0]
        bases.append(free)
        players.append(np.full(len(free), i, dtype=np.int64))
    edge_base = np.concatenate(bases)
    edge_player = np.concatenate(players)
    order = np.lexsort((edge_player, edge_base))
    # full cube is trivially connected; skip validation
    return GameGraph(n, verts, edge_base[order], edge_player[order], weighting)


def restrict(g: GameGraph, removed_vertices: Iterable[co.Coalition] = (),
             removed_edges: Iterable[Edge] = ()) -> GameGraph:
    """Subgraph with the given vertices (plus incident edges) and edges removed."""
    rv = set(int(S) for S in removed_vertices)
    full = (1 << g.n) - 1
    if 0 in rv:
        raise InfeasibilityError("cannot remove the empty coalition", coalition=0)
    if full in rv:
        raise InfeasibilityError("cannot remove the grand coalition", coalition=full)
    for S in rv:
        if not g.contains_vertex(S):
            raise DomainError(f"removed coalition {co.coalition_key(S)} is not in the graph")
    re = set(Edge(int(b), int(p)) for b, p in removed_edges)
    for e in re:
        if (e.base >> e.player) & 1:
            raise DomainError(f"edge base {co.coalition_key(e.base)} already contains "
                              f"player {e.player}")
    keep_v = np.array([S for S in g.vertices.tolist() if S not in rv], dtype=np.int64)
    keep = []
    for k, (b, p) in enumerate(zip(g.edge_base.tolist(), g.edge_player.tolist())):
        d = b | (1 << p)
        if b in rv or d in rv or Edge(b, p) in re:
            continue
        keep.append(k)
    keep = np.array(keep, dtype=np.int64)
    edge_base = g.edge_base[keep]
    edge_player = g.edge_player[keep]
    _validate(g.n, keep_v, edge_base, edge_player)
    return GameGraph(g.n, keep_v, edge_base, edge_player, g.weighting)


def degree(g: GameGraph, S: co.Coalition) -> int:
    """Feasible incident-edge count of S (orientation-blind)."""
    return g.degree(S)


def degree_product_weighting(g: GameGraph) -> GameGraph:
    """Reweight every edge by the product of its endpoint degrees."""
    deg = g.degrees
    entries = {}
    for k, e in enumerate(g.edges()):
        entries[e] = Fraction(int(deg[g.edge_src_pos[k]]) * int(deg[g.edge_dst_pos[k]]))
    weighting = EdgeWeighting.explicit(entries)
    return GameGraph(g.n, g.vertices, g.edge_base, g.edge_player, weighting)


# ---------------------------------------------------------------------------
# Constraint spec files (JSON)
# ---------------------------------------------------------------------------

def weighting_from_spec(spec: Mapping, n: int) -> EdgeWeighting:
    kind = spec.get("kind")
    if kind == CONSTANT:
        return EdgeWeighting.constant(parse_scalar(spec.get("value", "1"), RATIONAL))
    if kind == BY_CARDINALITY:
        values = spec.get("values", [])
        if len(values) != n:
            raise SpecFileError(f"by_cardinality table needs {n} entries, got {len(values)}",
                                location="weights.values")
        return EdgeWeighting.by_cardinality([parse_scalar(x, RATIONAL) for x in values])
    if kind == EXPLICIT:
        entries = {}
        for item in spec.get("entries", []):
            S = co.parse_coalition(item["base"], n)
            p = int(item["player"])
            if (S >> p) & 1:
                raise SpecFileError(f"edge base {item['base']} already contains player {p}",
                                    location="weights.entries")
            entries[Edge(S, p)] = parse_scalar(item["w"], RATIONAL)
        return EdgeWeighting.explicit(entries)
    raise SpecFileError(f"unknown weighting kind {kind!r}", location="weights.kind")


def constraints_from_spec(spec: Mapping, n: int):
    """Parse a constraint spec dict.

    Layout: {"removed_coalitions": ["[1]"], "removed_edges":
    [{"base": "[]", "player": 1}], "weights": {...}}.  Every field is
    optional; returns (removed_vertices, removed_edges, weighting_or_None).
    """
    removed_vertices = [co.parse_coalition(t, n) for t in spec.get("removed_coalitions", [])]
    removed_edges = []
    for item in spec.get("removed_edges", []):
        try:
            removed_edges.append(Edge(co.parse_coalition(item["base"], n), int(item["player"])))
        except (KeyError, TypeError):
            raise SpecFileError("removed edge needs 'base' and 'player'",
                                location="removed_edges") from None
    weighting = None
    if "weights" in spec:
        weighting = weighting_from_spec(spec["weights"], n)
    return removed_vertices, removed_edges, weighting


def load_constraints(path, n: int):
    with open(path) as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecFileError(f"invalid JSON: {exc}", location=str(path)) from None
    return constraints_from_spec(spec, n)
