"""JSON reading and writing with reproducible float formatting.

Floats are emitted with 17 significant digits, enough to round-trip IEEE
doubles exactly, so identical runs produce byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from .graphs import OrientedGraph, build_graph

__all__ = [
    "format_float",
    "dumps",
    "save",
    "graph_to_dict",
    "load_graph",
    "field_to_dict",
    "load_field",
]


def format_float(x: float) -> str:
    """17-significant-digit decimal that parses back to the same double."""
    x = float(x)
    if not np.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    text = format(x, ".17g")
    if not any(c in text for c in ".eE"):
        text += ".0"
    return text


def _emit(obj, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            out.append(f"{inner}{json.dumps(key)}: ")
            _emit(value, indent + 1, out)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)) or (
        isinstance(obj, np.ndarray) and obj.ndim == 1
    ):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(items):
            out.append(inner)
            _emit(value, indent + 1, out)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "]")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        out.append("true" if obj else "false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    out: list[str] = []
    _emit(obj, 0, out)
    return "".join(out)


def save(path: str, obj) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def graph_to_dict(g: OrientedGraph) -> dict:
    return {
        "vertex_count": g.vertex_count,
        "edges": [[t, h] for t, h in g.edges],
    }


def load_graph(path: str) -> OrientedGraph:
    """Read a graph file: {"vertex_count": n, "edges": [[tail, head], ...]}.

    Raises ValueError on schema problems; construction errors propagate.
    """
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object at top level")
    missing = {"vertex_count", "edges"} - data.keys()
    if missing:
        raise ValueError(f"{path}: missing key(s) {sorted(missing)}")
    n = data["vertex_count"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"{path}: vertex_count must be an integer")
    raw = data["edges"]
    if not isinstance(raw, list):
        raise ValueError(f"{path}: edges must be a list of [tail, head] pairs")
    edges = []
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise ValueError(f"{path}: edge {k} is not an integer pair")
        edges.append((pair[0], pair[1]))
    return build_graph(n, edges)


def field_to_dict(values) -> dict:
    return {"values": [float(v) for v in np.asarray(values, dtype=float)]}


def load_field(path: str, expected_len: int | None = None) -> np.ndarray:
    """Read a field file: {"values": [x0, x1, ...]}."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "values" not in data:
        raise ValueError(f'{path}: expected an object with a "values" list')
    raw = data["values"]
    if not isinstance(raw, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw
    ):
        raise ValueError(f"{path}: values must be a list of numbers")
    values = np.asarray(raw, dtype=float)
    if expected_len is not None and values.shape != (expected_len,):
        raise ValueError(
            f"{path}: expected {expected_len} values, got {values.shape[0]}"
        )
    return values
