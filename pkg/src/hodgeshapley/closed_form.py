"""Closed-form and combinatorial references for the decomposition.

These routes never touch the linear solver (except where a Laplacian
solve is the very thing being exercised), which makes them independent
oracles: the classical marginal-contribution formula, the brute-force
average over permutations, its restricted-graph variant that averages
over feasible permutations only, the discrete Green's function of the
hypercube Laplacian, and the explicit binomial-sum expression for the
component games on the full unweighted cube.

All binomial-sum formulas are evaluated in exact rational arithmetic
even for float-mode games (inputs are promoted); the coefficients
cancel catastrophically in floating point once n grows past a dozen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial

from . import coalition as co
from . import operators as ops
from .errors import CapacityError, DomainError, InfeasibilityError
from .game import RATIONAL, Game, game_from_values
from .graph import CONSTANT, GameGraph, full_hypercube
from .solve import solve_poisson_rational

_PERMUTATION_CAP = 10  # factorial enumeration guard


@lru_cache(maxsize=None)
def _binomial_tails(n: int) -> tuple:
    """tails[k] = C(n,k+1) + ... + C(n,n) for k = 0..n."""
    tails = [0] * (n + 1)
    acc = 0
    for k in range(n, 0, -1):
        acc += comb(n, k)
        tails[k - 1] = acc
    return tuple(tails)


@lru_cache(maxsize=None)
def _binomial_prefixes(n: int) -> tuple:
    """prefixes[j] = C(n,0) + ... + C(n,j) for j = 0..n."""
    out = []
    acc = 0
    for j in range(n + 1):
        acc += comb(n, j)
        out.append(acc)
    return tuple(out)


@lru_cache(maxsize=8)
def _unweighted_cube(n: int) -> GameGraph:
    return full_hypercube(n)


# ---------------------------------------------------------------------------
# classical allocation formulas
# ---------------------------------------------------------------------------

def shapley_direct(v: Game, i: int) -> Fraction | float:
    """Coefficient-weighted sum of player i's marginal contributions."""
    n = v.n
    if not 0 <= i < n:
        raise DomainError(f"player index {i} outside [0, {n})")
    bit = 1 << i
    total = Fraction(0) if v.is_rational else 0.0
    for S in co.enumerate_coalitions(n):
        if S & bit:
            continue
        s = co.size(S)
        coeff = Fraction(factorial(s) * factorial(n - 1 - s), factorial(n))
        marginal = v.values[S | bit] - v.values[S]
        total += coeff * marginal if v.is_rational else float(coeff) * marginal
    return total


def shapley_values(v: Game) -> tuple:
    return tuple(shapley_direct(v, i) for i in range(v.n))


def shapley_permutation_oracle(v: Game, i: int) -> Fraction | float:
    """Average marginal contribution of i over all n! joining orders."""
    n = v.n
    if n > _PERMUTATION_CAP:
        raise CapacityError(f"permutation enumeration capped at n <= {_PERMUTATION_CAP}")
    if not 0 <= i < n:
        raise DomainError(f"player index {i} outside [0, {n})")
    bit = 1 << i
    total = Fraction(0) if v.is_rational else 0.0
    for order in permutations(range(n)):
        S = 0
        for j in order:
            if j == i:
                total += v.values[S | bit] - v.values[S]
                break
            S |= 1 << j
    return total / factorial(n)


def feasible_permutations(g: GameGraph) -> list[tuple[int, ...]]:
    """Joining orders whose every prefix is a feasible vertex reached by a
    feasible edge."""
    if g.n > _PERMUTATION_CAP:
        raise CapacityError(f"permutation enumeration capped at n <= {_PERMUTATION_CAP}")
    out = []
    for order in permutations(range(g.n)):
        S = 0
        for j in order:
            if g.edge_index.get((S, j)) is None:
                break
            S |= 1 << j
        else:
            out.append(order)
    return out


def precedence_shapley_oracle(g: GameGraph, v: Game, i: int) -> Fraction | float:
    """Average marginal contribution of i over the feasible joining orders of g."""
    if v.n != g.n:
        raise DomainError("game and graph have different player counts")
    if not 0 <= i < g.n:
        raise DomainError(f"player index {i} outside [0, {g.n})")
    orders = feasible_permutations(g)
    if not orders:
        raise InfeasibilityError("no feasible permutation path from the empty coalition "
                                 "to the grand coalition")
    bit = 1 << i
    total = Fraction(0) if v.is_rational else 0.0
    for order in orders:
        S = 0
        for j in order:
            if j == i:
                total += v.values[S | bit] - v.values[S]
                break
            S |= 1 << j
    return total / len(orders)


# ---------------------------------------------------------------------------
# discrete Green's function of the unweighted cube Laplacian
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GreensKernel:
    """Inverse of the cube Laplacian on mean-zero functions.

    The kernel value depends only on the Hamming distance between the
    two coalitions, so it is tabulated per distance.
    """

    n: int
    by_distance: tuple[Fraction, ...]

    def value(self, S: co.Coalition, T: co.Coalition) -> Fraction:
        return self.by_distance[co.distance(S, T)]

    def apply(self, y: list[Fraction]) -> list[Fraction]:
        """Dense kernel-vector product over all coalitions."""
        size = 1 << self.n
        return [sum((self.by_distance[co.distance(S, T)] * y[T] for T in range(size)),
                    Fraction(0)) for S in range(size)]


def greens_kernel(n: int) -> GreensKernel:
    """Distance-indexed kernel entries for the n-cube."""
    if n < 1:
        raise DomainError("kernel requires at least one player")
    co.check_player_count(n)
    prefixes = _binomial_prefixes(n)
    tails = _binomial_tails(n)
    scale = Fraction(1, n * (1 << (2 * n)))
    values = []
    for k in range(n + 1):
        total = Fraction(0)
        for j in range(n):
            if j < k:
                total -= Fraction(prefixes[j] * tails[j], comb(n - 1, j))
            else:
                total += Fraction(tails[j] * tails[j], comb(n - 1, j))
        values.append(scale * total)
    return GreensKernel(n, tuple(values))


def kernel_difference(n: int, k: int) -> Fraction:
    """K(S, T|{i}) - K(S, T) for S, T in the i-free face at distance k."""
    tails = _binomial_tails(n)
    return -Fraction(tails[k], n * (1 << n) * comb(n - 1, k))


# ---------------------------------------------------------------------------
# explicit component formula on the full unweighted cube
# ---------------------------------------------------------------------------

def component_explicit(v: Game, i: int, graph: GameGraph | None = None) -> Game:
    """Player i's component game via the binomial-sum formula.

    Valid on the full unweighted hypercube only; pass the graph to have
    that checked.  Works in exact rational arithmetic; a float-mode input
    is promoted exactly and the result converted back.
    """
    if graph is not None:
        if not graph.is_full_cube or graph.weighting.kind != CONSTANT:
            raise DomainError("the explicit component formula applies to the full "
                              "hypercube with constant weights only")
        if graph.n != v.n:
            raise DomainError("game and graph have different player counts")
    n = v.n
    if not 0 <= i < n:
        raise DomainError(f"player index {i} outside [0, {n})")
    vals = v.values if v.is_rational else [Fraction(float(x)) for x in v.values]
    bit = 1 << i
    tails = _binomial_tails(n)
    ratio = [Fraction(tails[k], comb(n - 1, k)) for k in range(n)]
    scale = Fraction(1, n * (1 << n))
    free = [S for S in co.enumerate_coalitions(n) if not S & bit]
    marginal = {T: vals[T | bit] - vals[T] for T in free}
    upper = {}
    for S in free:
        acc = Fraction(0)
        for T in free:
            m = marginal[T]
            if m:
                acc += ratio[co.distance(S, T)] * m
        upper[S] = scale * acc
    shift = upper[0]  # -u_i({}) since u_i({}) = -u_i({i})
    out = [Fraction(0)] * (1 << n)
    for S in free:
        out[S | bit] = upper[S] + shift
        out[S] = -upper[S] + shift
    if v.is_rational:
        return game_from_values(n, out, RATIONAL, v.names)
    return game_from_values(n, [float(x) for x in out], v.mode, v.names)


def pure_bargaining_component(n: int, total, i: int, S: co.Coalition):
    """Component value v_i(S) when only the grand coalition has worth ``total``."""
    if n < 1:
        raise DomainError("need at least one player")
    if not 0 <= i < n:
        raise DomainError(f"player index {i} outside [0, {n})")
    if not 0 <= S < (1 << n):
        raise DomainError("coalition out of range")
    as_float = isinstance(total, float)
    worth = Fraction(total)
    prefixes = _binomial_prefixes(n)
    base_size = co.size(S & ~(1 << i))
    ratio = Fraction(prefixes[base_size], comb(n - 1, base_size))
    scale = Fraction(1, n * (1 << n))
    if (S >> i) & 1:
        result = scale * (1 + ratio) * worth
    else:
        result = scale * (1 - ratio) * worth
    return float(result) if as_float else result


def verify_shapley_coefficient(n: int, s: int, i: int) -> Fraction:
    """Grand-coalition value of the Hodge solution for a single-edge indicator.

    Places a unit edge function on one edge whose base has cardinality s,
    projects it through the Laplacian route (solve L u = d* chi with
    u({}) = 0), and returns u(N).  The contract is the classical joining
    coefficient s! (n-1-s)! / n!, independent of which edge is chosen.
    """
    if not 0 <= s <= n - 1:
        raise DomainError(f"cardinality {s} outside [0, {n - 1}]")
    if not 0 <= i < n:
        raise DomainError(f"player index {i} outside [0, {n})")
    g = _unweighted_cube(n)
    base = co.from_members([j for j in range(n) if j != i][:s], n)
    return _indicator_grand_value(g, base, i)


def _indicator_grand_value(g: GameGraph, base: co.Coalition, i: int) -> Fraction:
    edge_idx = g.edge_index[(base, i)]
    chi = [Fraction(0)] * g.num_edges
    chi[edge_idx] = Fraction(1)
    y = ops.d_star(ops.EdgeFunction(g, RATIONAL, chi))
    u = solve_poisson_rational(g, y.values)
    return u[-1]  # vertices ascend, so the grand coalition sits last
