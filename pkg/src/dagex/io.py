"""Graph and report serialization: JSON round-trip, one-way DOT export."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .dag import Dag
from .errors import ParseError


def graph_to_obj(g: Dag) -> dict[str, Any]:
    return {"n": g.vertex_count, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_obj(obj: Any) -> Dag:
    try:
        n = obj["n"]
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (TypeError, KeyError, ValueError) as exc:
        raise ParseError(f"bad graph object: {exc}") from exc
    if not isinstance(n, int):
        raise ParseError("graph field 'n' must be an integer")
    return Dag.of(n, edges)


def save_graph(g: Dag, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph_to_obj(g), sort_keys=True) + "\n")


def load_graph(path: str | Path) -> Dag:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return graph_from_obj(obj)


def graph_to_dot(g: Dag, name: str = "g") -> str:
    lines = [f"digraph {name} {{"]
    lines.extend(f"  {v};" for v in range(g.vertex_count))
    lines.extend(f"  {u} -> {v};" for u, v in g.sorted_edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def write_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n")
