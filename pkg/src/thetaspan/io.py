"""File formats: point-set / graph / metadata JSON and the CSV reports.

Floats are written with ``repr`` (shortest round-trip decimal), so reading a
file back reproduces every coordinate bit for bit.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError
from .graph import ThetaGraph

SPANNING_COLUMNS = ("u", "w", "euclid", "delta", "ratio", "alpha", "bound", "ok")
ROUTING_COLUMNS = ("s", "t", "route_len", "delta", "euclid", "ratio_vs_delta",
                   "ratio_vs_euclid", "status")
BOUNDS_COLUMNS = ("m", "family", "k", "theta", "ub_span", "lb_span", "ub_route", "legacy_rs")


def loads(text: str | bytes):
    """``json.loads`` with errors reported as ParseError carrying the byte offset."""
    raw = text if isinstance(text, bytes) else text.encode("utf-8")
    try:
        s = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"invalid UTF-8: {exc.reason}", exc.start) from exc
    try:
        return json.loads(s)
    except json.JSONDecodeError as exc:
        offset = len(s[: exc.pos].encode("utf-8"))
        raise ParseError(f"malformed JSON: {exc.msg}", offset) from exc


def dumps(obj) -> str:
    return json.dumps(obj, allow_nan=False) + "\n"


def read_json(path) -> object:
    return loads(Path(path).read_bytes())


def _coords(rows, what: str) -> np.ndarray:
    if not isinstance(rows, list):
        raise ParseError(f"{what}: expected a list of [x, y] pairs")
    out = np.empty((len(rows), 2))
    for i, r in enumerate(rows):
        if (not isinstance(r, list) or len(r) != 2
                or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in r)):
            raise ParseError(f"{what}[{i}]: expected [x, y] numbers, got {r!r}")
        out[i] = r
    if not np.isfinite(out).all():
        raise ParseError(f"{what}: non-finite coordinate")
    return out


def points_to_json(points) -> str:
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    return dumps({"points": [[float(x), float(y)] for x, y in P]})


def points_from_json(text) -> np.ndarray:
    doc = loads(text)
    if not isinstance(doc, dict) or "points" not in doc:
        raise ParseError('expected an object with a "points" member')
    return _coords(doc["points"], "points")


def graph_to_json(g: ThetaGraph) -> str:
    return dumps({
        "m": g.m,
        "points": [[float(x), float(y)] for x, y in g.points],
        "edges": [list(e) for e in g.edges()],
    })


def graph_from_json(text) -> ThetaGraph:
    doc = loads(text)
    if not isinstance(doc, dict) or not {"m", "points", "edges"} <= doc.keys():
        raise ParseError('graph JSON needs "m", "points" and "edges"')
    P = _coords(doc["points"], "points")
    edges = doc["edges"]
    if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 3 and all(isinstance(x, int) for x in e)
            for e in edges):
        raise ParseError("edges: expected a list of [u, cone, v] integer triples")
    if not isinstance(doc["m"], int):
        raise ParseError("m: expected an integer")
    for u, i, v in edges:
        if not (0 <= u < len(P) and 0 <= v < len(P) and 0 <= i < doc["m"]):
            raise ParseError(f"edge {[u, i, v]} out of range")
    return ThetaGraph.from_edges(P, doc["m"], edges)


def load_points_or_graph(path):
    """Points array and, when the file holds a graph, its ``m`` and the graph."""
    doc = read_json(path)
    if isinstance(doc, dict) and "edges" in doc:
        g = graph_from_json(json.dumps(doc))
        return g.points, g
    return points_from_json(json.dumps(doc)), None


def metadata_path(points_path) -> Path:
    p = Path(points_path)
    return p.with_name(p.stem + ".meta.json")


# ---------------------------------------------------------------------------
# CSV


def _cell(v) -> str:
    if isinstance(v, bool) or isinstance(v, np.bool_):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _parse_cell(s: str):
    if s in ("true", "false"):
        return s == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def to_csv(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


def from_csv(text: str) -> tuple[list[str], list[dict]]:
    """Parse a report back into ``(columns, rows)`` with typed cells."""
    reader = csv.reader(io.StringIO(text))
    try:
        columns = next(reader)
    except StopIteration:
        raise ParseError("empty CSV") from None
    rows = []
    for n, rec in enumerate(reader, start=2):
        if len(rec) != len(columns):
            raise ParseError(f"line {n}: expected {len(columns)} fields, got {len(rec)}")
        rows.append({c: _parse_cell(v) for c, v in zip(columns, rec)})
    return columns, rows


def write_text(path, text: str) -> None:
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def finite_or_none(x: float):
    """JSON has no infinities; emit null instead."""
    return None if x is None or not math.isfinite(x) else float(x)
