"""Solver backends and the per-player decomposition driver.

Each component game solves the singular system ``L_w v_i = L_{w_i} v``
normalized by ``v_i({}) = 0``.  Dense backends pin the empty coalition
(delete its row and column and solve the reduced nonsingular system);
the conjugate-gradient backend works matrix-free on the full vertex
space with the constant nullspace handled by deflation (iterates are
projected back to mean zero each step) and shifts the solution
afterwards.  Both routes land on the same answer, which is unique up to
constants on a connected graph.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import operators as ops
from ._exact import DixonSolver, FractionLU
from .errors import ConfigError, ConvergenceError
from .game import FLOAT, RATIONAL, Game
from .graph import GameGraph

DENSE_RATIONAL = "dense_rational"
DENSE_FLOAT = "dense_float"
CG_FLOAT = "cg_float"
_BACKENDS = (DENSE_RATIONAL, DENSE_FLOAT, CG_FLOAT)

# Beyond this many pinned unknowns, exact solves switch from fraction LU
# to p-adic lifting.
_LU_LIMIT = 160


@dataclass(frozen=True)
class SolverConfig:
    """Backend choice plus iterative-solver knobs.

    ``cg_max_iters`` defaults to ``10 * 2**n`` at solve time; the
    unweighted cube Laplacian has condition number n on the mean-zero
    subspace, so CG actually converges in a few dozen iterations.
    """

    backend: str = DENSE_RATIONAL
    cg_tolerance: float = 1e-12
    cg_max_iters: int | None = None

    def __post_init__(self):
        if self.backend not in _BACKENDS:
            raise ConfigError(f"unknown backend {self.backend!r}; expected one of {_BACKENDS}")
        if not self.cg_tolerance > 0:
            raise ConfigError("cg_tolerance must be positive")
        if self.cg_max_iters is not None and self.cg_max_iters < 1:
            raise ConfigError("cg_max_iters must be at least 1")

    def max_iters_for(self, n: int) -> int:
        return self.cg_max_iters if self.cg_max_iters is not None else 10 << n


@dataclass(frozen=True)
class PlayerSolveStats:
    player: int
    backend: str
    iterations: int
    residual: float


@dataclass(frozen=True, eq=False)
class Decomposition:
    """The family of component games plus solver diagnostics.

    ``components[i]`` is player i's component game; on a restricted graph
    its values are meaningful on feasible coalitions only (infeasible
    entries are zero padding).  The components sum back to the original
    game on feasible coalitions: exactly in rational mode, within
    ``efficiency_gap`` (checked against solver tolerance) in float mode.
    """

    graph: GameGraph
    source: Game
    components: tuple[Game, ...]
    diagnostics: tuple[PlayerSolveStats, ...]
    efficiency_gap: float | Fraction

    def allocation(self) -> tuple:
        """Grand-coalition value of each component game."""
        return tuple(c.grand_value() for c in self.components)


# ---------------------------------------------------------------------------
# cached per-graph factorizations
# ---------------------------------------------------------------------------

_rational_solvers: "weakref.WeakKeyDictionary[GameGraph, _RationalPinnedSolver]" = \
    weakref.WeakKeyDictionary()
_float_factors: "weakref.WeakKeyDictionary[GameGraph, object]" = weakref.WeakKeyDictionary()


class _RationalPinnedSolver:
    """Exact solver for the reduced (empty-coalition-pinned) weighted Laplacian."""

    def __init__(self, g: GameGraph):
        m = g.num_vertices - 1
        rows = [[Fraction(0)] * m for _ in range(m)]
        for k in range(g.num_edges):
            s = int(g.edge_src_pos[k]) - 1
            t = int(g.edge_dst_pos[k]) - 1
            w = g.weight_fractions[k]
            if s >= 0:
                rows[s][s] += w
            if t >= 0:
                rows[t][t] += w
            if s >= 0 and t >= 0:
                rows[s][t] -= w
                rows[t][s] -= w
        if m <= _LU_LIMIT:
            self._kind = "lu"
            self._lu = FractionLU(rows)
            return
        try:
            scales = []
            int_rows = np.zeros((m, m), dtype=np.int64)
            for r, row in enumerate(rows):
                scale = math.lcm(*(x.denominator for x in row)) if row else 1
                scales.append(scale)
                for c, x in enumerate(row):
                    if x:
                        y = x.numerator * (scale // x.denominator)
                        if abs(y) >= (1 << 62):
                            raise OverflowError("scaled weights exceed the lifting range")
                        int_rows[r, c] = y
            self._scales = scales
            self._dixon = DixonSolver(int_rows)
            self._kind = "dixon"
        except (OverflowError, ValueError):
            # out of the lifting solver's range: fall back to plain LU,
            # slow but unbounded
            self._kind = "lu"
            self._lu = FractionLU(rows)

    def solve(self, b: list[Fraction]) -> list[Fraction]:
        if self._kind == "lu":
            return self._lu.solve(b)
        scaled = [x * s for x, s in zip(b, self._scales)]
        denom = math.lcm(*(x.denominator for x in scaled)) if scaled else 1
        b_int = [int(x * denom) for x in scaled]
        y = self._dixon.solve(b_int)
        return [x / denom for x in y]


def _rational_solver(g: GameGraph) -> _RationalPinnedSolver:
    solver = _rational_solvers.get(g)
    if solver is None:
        solver = _RationalPinnedSolver(g)
        _rational_solvers[g] = solver
    return solver


def _float_factor(g: GameGraph):
    factor = _float_factors.get(g)
    if factor is None:
        from scipy.sparse import csc_matrix
        from scipy.sparse.linalg import splu
        m = g.num_vertices
        w = g.weight_floats
        s = g.edge_src_pos
        t = g.edge_dst_pos
        rows = np.concatenate([s, t, s, t])
        cols = np.concatenate([s, t, t, s])
        vals = np.concatenate([w, w, -w, -w])
        keep = (rows > 0) & (cols > 0)
        L = csc_matrix((vals[keep], (rows[keep] - 1, cols[keep] - 1)), shape=(m - 1, m - 1))
        factor = splu(L.tocsc())
        _float_factors[g] = factor
    return factor


# ---------------------------------------------------------------------------
# right-hand sides and the conjugate-gradient kernel
# ---------------------------------------------------------------------------

def _player_rhs_rational(g: GameGraph, u_vals: list) -> list[list[Fraction]]:
    """All right-hand sides L_{w_i} v in one pass over the edges."""
    out = [[Fraction(0)] * g.num_vertices for _ in range(g.n)]
    src = g.edge_src_pos.tolist()
    dst = g.edge_dst_pos.tolist()
    players = g.edge_player.tolist()
    for k, w in enumerate(g.weight_fractions):
        s, t = src[k], dst[k]
        wdu = w * (u_vals[t] - u_vals[s])
        if wdu:
            b = out[players[k]]
            b[t] += wdu
            b[s] -= wdu
    return out


def _player_rhs_float(g: GameGraph, u_vals: np.ndarray) -> list[np.ndarray]:
    m = g.num_vertices
    wdu = g.weight_floats * (u_vals[g.edge_dst_pos] - u_vals[g.edge_src_pos])
    out = []
    for i in range(g.n):
        mask = g.edge_player == i
        f = wdu[mask]
        b = (np.bincount(g.edge_dst_pos[mask], weights=f, minlength=m)
             - np.bincount(g.edge_src_pos[mask], weights=f, minlength=m))
        out.append(b)
    return out


def _cg_deflated(g: GameGraph, b: np.ndarray, tol: float, max_iters: int):
    """CG for L_w x = b on the mean-zero subspace; returns (x, iters, relres, history)."""
    m = g.num_vertices
    w = g.weight_floats
    src = g.edge_src_pos
    dst = g.edge_dst_pos

    def apply(x):
        f = w * (x[dst] - x[src])
        return (np.bincount(dst, weights=f, minlength=m)
                - np.bincount(src, weights=f, minlength=m))

    b = b - b.mean()
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return np.zeros(m), 0, 0.0, []
    x = np.zeros(m)
    r = b.copy()
    p = r.copy()
    rr = float(r @ r)
    history = []
    for k in range(1, max_iters + 1):
        Ap = apply(p)
        alpha = rr / float(p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        # deflation: keep iterates orthogonal to the constant kernel
        x -= x.mean()
        r -= r.mean()
        rr_new = float(r @ r)
        rel = math.sqrt(rr_new) / b_norm
        history.append(rel)
        if rel <= tol:
            return x, k, rel, history
        p = r + (rr_new / rr) * p
        rr = rr_new
    raise ConvergenceError(
        f"CG did not reach tolerance {tol} in {max_iters} iterations "
        f"(relative residual {history[-1]:.3e})", residual_history=history)


# ---------------------------------------------------------------------------
# public driver
# ---------------------------------------------------------------------------

def _check_modes(g: GameGraph, v: Game, cfg: SolverConfig) -> None:
    if v.n != g.n:
        raise ConfigError("game and graph have different player counts")
    if cfg.backend == DENSE_RATIONAL and v.mode != RATIONAL:
        raise ConfigError("dense_rational backend needs a rational-mode game "
                          "(use Game.as_rational())")
    if cfg.backend in (DENSE_FLOAT, CG_FLOAT) and v.mode != FLOAT:
        raise ConfigError(f"{cfg.backend} backend needs a float-mode game "
                          "(use Game.as_float())")


def _verify_mean_zero(g: GameGraph, b, rational: bool) -> None:
    # L_{w_i} v lies in the range of d*, hence is orthogonal to constants.
    if rational:
        total = sum(b, Fraction(0))
        if total != 0:
            raise ArithmeticError("right-hand side is not mean-zero; this is a bug")
    else:
        scale = float(np.max(np.abs(b))) if len(b) else 0.0
        if abs(float(np.sum(b))) > 1e-8 * max(1.0, scale) * g.num_vertices:
            raise ArithmeticError("right-hand side is not mean-zero; this is a bug")


def _solve_one_rational(g: GameGraph, b: list) -> list:
    _verify_mean_zero(g, b, rational=True)
    x = _rational_solver(g).solve(b[1:])
    return [Fraction(0)] + x


def _solve_one_float(g: GameGraph, b: np.ndarray, cfg: SolverConfig):
    _verify_mean_zero(g, b, rational=False)
    if cfg.backend == DENSE_FLOAT:
        x = np.zeros(g.num_vertices)
        x[1:] = _float_factor(g).solve(b[1:])
        return x, 0, _relative_residual(g, x, b)
    x, iters, rel, _ = _cg_deflated(g, b, cfg.cg_tolerance, cfg.max_iters_for(g.n))
    x = x - x[0]  # normalize v_i({}) = 0
    return x, iters, rel


def _relative_residual(g: GameGraph, x: np.ndarray, b: np.ndarray) -> float:
    u = ops.VertexFunction(g, FLOAT, x)
    r = np.asarray(ops.laplacian_apply(u).values) - b
    b_norm = float(np.linalg.norm(b))
    return float(np.linalg.norm(r)) / b_norm if b_norm else 0.0


def solve_component(g: GameGraph, v: Game, i: int, cfg: SolverConfig | None = None) -> Game:
    """Player i's component game of v on the graph g."""
    cfg = cfg or SolverConfig()
    _check_modes(g, v, cfg)
    if not 0 <= i < g.n:
        raise ConfigError(f"player index {i} outside [0, {g.n})")
    u = ops.vertex_function_from_game(g, v)
    b = ops.laplacian_i_apply(i, u)
    if v.is_rational:
        x = _solve_one_rational(g, list(b.values))
        return ops.game_from_vertex_function(ops.VertexFunction(g, RATIONAL, x), v.names)
    x, _, _ = _solve_one_float(g, np.asarray(b.values), cfg)
    return ops.game_from_vertex_function(ops.VertexFunction(g, FLOAT, x), v.names)


def decompose(g: GameGraph, v: Game, cfg: SolverConfig | None = None) -> Decomposition:
    """All component games of v on g, with per-player solve diagnostics."""
    cfg = cfg or SolverConfig()
    _check_modes(g, v, cfg)
    u = ops.vertex_function_from_game(g, v)
    components = []
    stats = []
    if v.is_rational:
        rhs = _player_rhs_rational(g, list(u.values))
        for i in range(g.n):
            x = _solve_one_rational(g, rhs[i])
            components.append(ops.game_from_vertex_function(
                ops.VertexFunction(g, RATIONAL, x), v.names))
            stats.append(PlayerSolveStats(i, cfg.backend, 0, 0.0))
        gap = Fraction(0)
        u_vals = list(u.values)
        for pos, S in enumerate(g.vertices.tolist()):
            total = sum((c.values[S] for c in components), Fraction(0))
            gap = max(gap, abs(total - u_vals[pos]))
        if gap != 0:
            raise ArithmeticError("exact decomposition failed the efficiency identity; "
                                  "this is a bug")
    else:
        rhs = _player_rhs_float(g, np.asarray(u.values))
        total = np.zeros(g.num_vertices)
        for i in range(g.n):
            x, iters, rel = _solve_one_float(g, rhs[i], cfg)
            total += x
            components.append(ops.game_from_vertex_function(
                ops.VertexFunction(g, FLOAT, x), v.names))
            stats.append(PlayerSolveStats(i, cfg.backend, iters, rel))
        gap = float(np.max(np.abs(total - np.asarray(u.values))))
    return Decomposition(g, v, tuple(components), tuple(stats), gap)


def residual_orthogonality(g: GameGraph, v: Game, dec: Decomposition) -> list:
    """Max-norm of d*_w (d v_i - d_i v) per player; zero certifies the split."""
    u = ops.vertex_function_from_game(g, v)
    out = []
    for i, comp in enumerate(dec.components):
        ui = ops.vertex_function_from_game(g, comp)
        r = ops.edge_difference(ops.d(ui), ops.d_i(i, u))
        out.append(ops.d_star(r).norm_inf())
    return out


def edge_residual(g: GameGraph, v: Game, dec: Decomposition, i: int) -> ops.EdgeFunction:
    """The edge function d v_i - d_i v (zero exactly when the split is exact)."""
    u = ops.vertex_function_from_game(g, v)
    ui = ops.vertex_function_from_game(g, dec.components[i])
    return ops.edge_difference(ops.d(ui), ops.d_i(i, u))


def solve_poisson_rational(g: GameGraph, rhs: Sequence[Fraction]) -> list[Fraction]:
    """Exact solve of L_w u = rhs with u({}) = 0; rhs indexed like graph.vertices."""
    return _solve_one_rational(g, list(rhs))
