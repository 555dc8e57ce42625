"""Cooperative games: a value per coalition, in exact-rational or float mode.

A game stores one scalar per coalition (dense, length ``2**n``) with
``v({}) = 0`` enforced at construction.  The whole game is either in
rational mode (``fractions.Fraction`` values, so reference fractions
reproduce bit-exactly) or float mode (``numpy.float64``, scales to larger
player counts).  Mode is fixed at construction and propagates through
every downstream computation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

import numpy as np

from . import coalition as co
from .errors import SpecFileError

RATIONAL = "rational"
FLOAT = "float"

# Float-mode inessential classification: |v(S) - sum v({i})| within
# 1e-9 * max(1, ||v||_inf).  Looser than solver tolerances on purpose, so
# the classification is stable under solver round-off.
INESSENTIAL_RTOL = 1e-9


def parse_scalar(value, mode: str):
    """Parse a scalar literal: 'p/q' or integer string (rational), number (float)."""
    if mode == RATIONAL:
        if isinstance(value, float):
            raise SpecFileError(f"float literal {value!r} in a rational-mode game")
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError, TypeError):
            raise SpecFileError(f"bad rational literal {value!r}") from None
    if mode == FLOAT:
        if isinstance(value, str):
            try:
                return float(Fraction(value))
            except (ValueError, ZeroDivisionError):
                raise SpecFileError(f"bad numeric literal {value!r}") from None
        return float(value)
    raise SpecFileError(f"unknown scalar mode {mode!r}")


def format_scalar(x) -> str:
    """Canonical text for a scalar: lowest-terms fraction, or 12 significant digits."""
    if isinstance(x, Rational):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return format(float(x), ".12g")


@dataclass(frozen=True, eq=False)
class Game:
    """A TU game over n players.  Values are indexed by coalition bitset."""

    n: int
    mode: str
    values: tuple | np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        co.check_player_count(self.n)
        size = 1 << self.n
        if len(self.values) != size:
            raise ValueError(f"value table has length {len(self.values)}, expected {size}")
        if self.mode == RATIONAL:
            vals = tuple(Fraction(x) for x in self.values)
            if vals[0] != 0:
                raise ValueError("v({}) must be 0")
        elif self.mode == FLOAT:
            vals = np.asarray(self.values, dtype=np.float64).copy()
            if not np.all(np.isfinite(vals)):
                raise ValueError("float-mode game values must be finite")
            if vals[0] != 0.0:
                raise ValueError("v({}) must be 0")
            vals.setflags(write=False)
        else:
            raise ValueError(f"unknown scalar mode {self.mode!r}")
        object.__setattr__(self, "values", vals)
        if self.names is not None and len(self.names) != self.n:
            raise ValueError("name table length must equal player count")

    def value(self, S: co.Coalition):
        return self.values[S]

    def grand_value(self):
        return self.values[(1 << self.n) - 1]

    @property
    def is_rational(self) -> bool:
        return self.mode == RATIONAL

    def as_float(self) -> "Game":
        """Float-mode copy (exact values rounded to nearest float64)."""
        if self.mode == FLOAT:
            return self
        return Game(self.n, FLOAT, [float(x) for x in self.values], self.names)

    def as_rational(self) -> "Game":
        """Rational-mode copy; float values convert exactly (dyadic fractions)."""
        if self.mode == RATIONAL:
            return self
        return Game(self.n, RATIONAL, [Fraction(float(x)) for x in self.values], self.names)

    def values_list(self) -> list:
        return list(self.values)


def game_from_values(n: int, values: Sequence, mode: str = RATIONAL,
                     names: Sequence[str] | None = None) -> Game:
    return Game(n, mode, tuple(values), None if names is None else tuple(names))


def game_from_map(n: int, table: Mapping[co.Coalition, object], mode: str = RATIONAL,
                  names: Sequence[str] | None = None) -> Game:
    """Game from a sparse {coalition: value} mapping; unlisted coalitions are 0."""
    zero = Fraction(0) if mode == RATIONAL else 0.0
    vals = [zero] * (1 << n)
    for S, x in table.items():
        vals[S] = x
    return game_from_values(n, vals, mode, names)


def make_glove_game(mode: str = RATIONAL) -> Game:
    """Three players; player 0 holds the left glove, players 1 and 2 right gloves.

    A coalition is worth 1 exactly when it can assemble a pair.
    """
    one = Fraction(1) if mode == RATIONAL else 1.0
    table = {S: one for S in range(8) if (S & 1) and (S & 0b110)}
    return game_from_map(3, table, mode)


def make_pure_bargaining_game(n: int, total, mode: str = RATIONAL) -> Game:
    """Only the grand coalition produces value: v(N) = total, v(S) = 0 otherwise."""
    if n < 1:
        raise ValueError("pure bargaining game needs at least one player")
    return game_from_map(n, {co.grand_coalition(n): parse_scalar(total, mode)}, mode)


def make_inessential_game(singleton_values: Sequence, mode: str = RATIONAL) -> Game:
    """Additive game: v(S) is the sum of its members' singleton values."""
    n = len(singleton_values)
    xs = [parse_scalar(x, mode) for x in singleton_values]
    zero = Fraction(0) if mode == RATIONAL else 0.0
    vals = []
    for S in co.enumerate_coalitions(n):
        vals.append(sum((xs[i] for i in co.members(S)), zero))
    return game_from_values(n, vals, mode)


def is_inessential(v: Game) -> bool:
    """True when every coalition is worth the sum of its members' singleton values."""
    singles = [v.value(1 << i) for i in range(v.n)]
    if v.is_rational:
        return all(v.value(S) == sum((singles[i] for i in co.members(S)), Fraction(0))
                   for S in co.enumerate_coalitions(v.n))
    scale = max(1.0, float(np.max(np.abs(v.values)))) if v.n else 1.0
    tol = INESSENTIAL_RTOL * scale
    return all(abs(v.value(S) - math.fsum(singles[i] for i in co.members(S))) <= tol
               for S in co.enumerate_coalitions(v.n))


def pullback(sigma: Sequence[int], v: Game) -> Game:
    """Relabeled game (sigma* v)(S) = v(sigma(S))."""
    co.check_permutation(sigma)
    if len(sigma) != v.n:
        raise ValueError("permutation length must equal player count")
    vals = [v.value(co.apply_permutation(sigma, S)) for S in co.enumerate_coalitions(v.n)]
    return game_from_values(v.n, vals, v.mode, v.names)


def linear_combine(alpha, v: Game, alpha2, v2: Game) -> Game:
    """Pointwise alpha*v + alpha2*v2; both games must share n and mode."""
    if v.n != v2.n:
        raise ValueError("games have different player counts")
    if v.mode != v2.mode:
        raise TypeError(f"scalar mode mismatch: {v.mode} vs {v2.mode}")
    a = parse_scalar(alpha, v.mode)
    a2 = parse_scalar(alpha2, v.mode)
    if v.is_rational:
        vals = [a * x + a2 * y for x, y in zip(v.values, v2.values)]
    else:
        vals = a * v.values + a2 * v2.values
    return game_from_values(v.n, vals, v.mode)


# ---------------------------------------------------------------------------
# Game spec files (JSON)
# ---------------------------------------------------------------------------

def game_from_spec(spec: Mapping) -> Game:
    """Build a game from its JSON spec dict.

    Layout: {"players": [...names...], "mode": "rational"|"float",
    "values": {"[0,1]": "1", ...}}.  Unlisted coalitions default to 0; the
    empty coalition may be listed only with value 0.
    """
    try:
        players = list(spec["players"])
    except (KeyError, TypeError):
        raise SpecFileError("game spec needs a 'players' name list", location="players") from None
    n = len(players)
    co.check_player_count(n)
    mode = spec.get("mode", RATIONAL)
    if mode not in (RATIONAL, FLOAT):
        raise SpecFileError(f"unknown mode {mode!r}", location="mode")
    zero = Fraction(0) if mode == RATIONAL else 0.0
    vals = [zero] * (1 << n)
    for key, literal in dict(spec.get("values", {})).items():
        try:
            S = co.parse_coalition(key, n)
        except ValueError as exc:
            raise SpecFileError(str(exc), location=f"values.{key}") from None
        x = parse_scalar(literal, mode)
        if S == 0 and x != 0:
            raise SpecFileError("the empty coalition may only be listed with value 0",
                                location=f"values.{key}")
        vals[S] = x
    return game_from_values(n, vals, mode, names=[str(p) for p in players])


def load_game(path) -> Game:
    """Load a game spec from a JSON file."""
    with open(path) as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecFileError(f"invalid JSON: {exc}", location=str(path)) from None
    return game_from_spec(spec)


def game_to_spec(v: Game) -> dict:
    """Inverse of game_from_spec (zero values omitted)."""
    names = list(v.names) if v.names is not None else [str(i) for i in range(v.n)]
    values = {}
    for S in co.enumerate_coalitions(v.n):
        x = v.value(S)
        if x != 0:
            values[co.coalition_key(S)] = format_scalar(x) if v.is_rational else float(x)
    return {"players": names, "mode": v.mode, "values": values}
