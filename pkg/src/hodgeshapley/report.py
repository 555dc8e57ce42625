"""Render decompositions as tables and compare allocation rules."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import coalition as co
from . import closed_form as cf
from .game import Game, format_scalar
from .graph import GameGraph
from .solve import Decomposition, SolverConfig, decompose

_FORMATS = ("text", "csv", "json")


@dataclass(frozen=True)
class DecompositionTable:
    """One row per feasible coalition (sorted by size, then bitset value);
    the final row is the grand coalition, whose component values are the
    allocation."""

    n: int
    mode: str
    names: tuple[str, ...] | None
    coalitions: tuple[co.Coalition, ...]
    game_column: tuple
    component_columns: tuple  # component_columns[i][row]

    @property
    def allocation(self) -> tuple:
        return tuple(col[-1] for col in self.component_columns)


def build_table(d: Decomposition, v: Game) -> DecompositionTable:
    """Tabulate a decomposition against its source game, re-verifying that
    component columns sum to the game column in every row."""
    g = d.graph
    if v.n != g.n or v.mode != d.source.mode:
        raise ValueError("decomposition was not produced from this game")
    order = sorted(g.vertices.tolist(), key=lambda S: (co.size(S), S))
    game_col = tuple(v.values[S] for S in order)
    comp_cols = tuple(tuple(c.values[S] for S in order) for c in d.components)
    for r, S in enumerate(order):
        total = sum(col[r] for col in comp_cols)
        if v.is_rational:
            if total != game_col[r]:
                raise ValueError(f"component columns do not sum to v at "
                                 f"{co.coalition_key(S)}")
        else:
            scale = max(1.0, float(np.max(np.abs(np.asarray(v.values)))))
            if abs(total - game_col[r]) > 1e-6 * scale:
                raise ValueError(f"component columns do not sum to v at "
                                 f"{co.coalition_key(S)}")
    return DecompositionTable(g.n, v.mode, v.names, tuple(order), game_col, comp_cols)


def render_table(d: Decomposition, v: Game, format: str = "text") -> str:
    """Serialize the decomposition table as text, CSV, or JSON."""
    table = build_table(d, v)
    if format == "text":
        return _render_text(table)
    if format == "csv":
        return _render_csv(table)
    if format == "json":
        return _render_json(table)
    raise ValueError(f"unknown format {format!r}; expected one of {_FORMATS}")


def _render_text(t: DecompositionTable) -> str:
    headers = ["S", "v"] + [f"v_{i + 1}" for i in range(t.n)]
    rows = []
    for r, S in enumerate(t.coalitions):
        rows.append([co.coalition_label(S, t.names), format_scalar(t.game_column[r])]
                    + [format_scalar(col[r]) for col in t.component_columns])
    widths = [max(len(h), *(len(row[c]) for row in rows)) for c, h in enumerate(headers)]
    lines = ["  ".join(h.rjust(widths[c]) for c, h in enumerate(headers)),
             "  ".join("-" * w for w in widths)]
    for r, row in enumerate(rows):
        if r == len(rows) - 1:
            lines.append("  ".join("-" * w for w in widths))
        lines.append("  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)))
    alloc = ", ".join(format_scalar(x) for x in t.allocation)
    lines.append(f"allocation: ({alloc})")
    return "\n".join(lines) + "\n"


def _render_csv(t: DecompositionTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["coalition", "v"] + [f"v_{i + 1}" for i in range(t.n)])
    for r, S in enumerate(t.coalitions):
        writer.writerow([co.coalition_key(S), format_scalar(t.game_column[r])]
                        + [format_scalar(col[r]) for col in t.component_columns])
    return buf.getvalue()


def _scalar_json(x, mode):
    return format_scalar(x) if mode == "rational" else float(x)


def _render_json(t: DecompositionTable) -> str:
    rows = []
    for r, S in enumerate(t.coalitions):
        rows.append({
            "coalition": list(co.members(S)),
            "v": _scalar_json(t.game_column[r], t.mode),
            "components": [_scalar_json(col[r], t.mode) for col in t.component_columns],
        })
    doc = {"rows": rows,
           "allocation": [_scalar_json(x, t.mode) for x in t.allocation]}
    return json.dumps(doc, indent=2) + "\n"


def parse_rendered_json(text: str) -> dict:
    """Parse render_table JSON output back into Fractions/floats."""
    doc = json.loads(text)

    def back(x):
        return Fraction(x) if isinstance(x, str) else float(x)

    return {
        "rows": [{"coalition": tuple(row["coalition"]),
                  "v": back(row["v"]),
                  "components": [back(x) for x in row["components"]]}
                 for row in doc["rows"]],
        "allocation": [back(x) for x in doc["allocation"]],
    }


# ---------------------------------------------------------------------------
# side-by-side allocation comparison
# ---------------------------------------------------------------------------

def compare_allocations(g: GameGraph, v: Game, cfg: SolverConfig | None = None,
                        format: str = "text") -> str:
    """One row per player: the component-game allocation next to the
    classical formula (full cube) or the feasible-permutation average
    (restricted graph), with absolute differences."""
    dec = decompose(g, v, cfg)
    hodge = dec.allocation()
    columns = {"component": hodge}
    if g.is_full_cube:
        columns["classical"] = cf.shapley_values(v)
    else:
        columns["precedence"] = tuple(cf.precedence_shapley_oracle(g, v, i)
                                      for i in range(g.n))
    other_name = "classical" if g.is_full_cube else "precedence"
    other = columns[other_name]
    diffs = [abs(h - o) for h, o in zip(hodge, other)]

    if format == "json":
        doc = {"players": [_player_name(v, i) for i in range(g.n)],
               "component": [_scalar_json(x, v.mode) for x in hodge],
               other_name: [_scalar_json(x, v.mode) for x in other],
               "abs_difference": [_scalar_json(x, v.mode) for x in diffs]}
        return json.dumps(doc, indent=2) + "\n"

    headers = ["player", "component", other_name, "abs diff"]
    rows = [[_player_name(v, i), format_scalar(hodge[i]), format_scalar(other[i]),
             format_scalar(diffs[i])] for i in range(g.n)]
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        return buf.getvalue()
    if format == "text":
        widths = [max(len(h), *(len(row[c]) for row in rows)) for c, h in enumerate(headers)]
        lines = ["  ".join(h.rjust(widths[c]) for c, h in enumerate(headers)),
                 "  ".join("-" * w for w in widths)]
        lines += ["  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row))
                  for row in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}; expected one of {_FORMATS}")


def _player_name(v: Game, i: int) -> str:
    return v.names[i] if v.names is not None else str(i + 1)
