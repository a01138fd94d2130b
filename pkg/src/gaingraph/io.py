"""Text formats for gain graphs and digraphs, and JSON reports.

Gain-graph files::

    gaingraph <n>
    e <u> <v> <theta>

with 1-based vertices and theta the angle (radians) of the gain of u -> v.
Digraph files use ``digraph <n>`` and ``a <u> <v>``. Blank lines and lines
starting with ``#`` are ignored. Canonical files list each edge once with
u < v in sorted order and angles written with ``repr``; they survive a
read/write round trip byte for byte.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Iterator

import numpy as np

from .errors import DomainError, ParseError
from .graph_core import Digraph, GainGraph, SimpleGraph

#: Significant digits for floats in reports.
REPORT_DIGITS = 12


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _header(lines: Iterator[tuple[int, list[str]]], keyword: str) -> int:
    try:
        lineno, tok = next(lines)
    except StopIteration:
        raise ParseError(f"empty file, expected '{keyword} <n>'") from None
    if len(tok) != 2 or tok[0] != keyword:
        raise ParseError(f"expected '{keyword} <n>'", lineno)
    try:
        n = int(tok[1])
    except ValueError:
        raise ParseError(f"vertex count {tok[1]!r} is not an integer", lineno) from None
    if n < 1:
        raise ParseError("vertex count must be positive", lineno)
    return n


def _vertex(tok: str, n: int, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"vertex {tok!r} is not an integer", lineno) from None
    if not 1 <= v <= n:
        raise ParseError(f"vertex {v} outside 1..{n}", lineno)
    return v - 1


def parse_gain_graph(text: str) -> GainGraph:
    lines = _content_lines(text)
    n = _header(lines, "gaingraph")
    arcs: dict[tuple[int, int], float] = {}
    seen: set[tuple[int, int]] = set()
    for lineno, tok in lines:
        if len(tok) != 4 or tok[0] != "e":
            raise ParseError("expected 'e <u> <v> <theta>'", lineno)
        u, v = _vertex(tok[1], n, lineno), _vertex(tok[2], n, lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u + 1}", lineno)
        try:
            theta = float(tok[3])
        except ValueError:
            raise ParseError(f"angle {tok[3]!r} is not a number", lineno) from None
        if not math.isfinite(theta):
            raise ParseError("angle must be finite", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"edge {{{u + 1}, {v + 1}}} listed twice", lineno)
        seen.add(key)
        arcs[(u, v)] = theta
    return GainGraph.from_arc_angles(n, arcs)


def format_gain_graph(phi: GainGraph) -> str:
    out = [f"gaingraph {phi.n}"]
    for (u, v), a in zip(phi.graph.edges, phi.angles):
        out.append(f"e {u + 1} {v + 1} {a!r}")
    return "\n".join(out) + "\n"


def parse_digraph(text: str) -> Digraph:
    lines = _content_lines(text)
    n = _header(lines, "digraph")
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, tok in lines:
        if len(tok) != 3 or tok[0] != "a":
            raise ParseError("expected 'a <u> <v>'", lineno)
        u, v = _vertex(tok[1], n, lineno), _vertex(tok[2], n, lineno)
        if u == v:
            raise ParseError(f"self-arc at vertex {u + 1}", lineno)
        if (u, v) in seen:
            raise ParseError(f"arc ({u + 1}, {v + 1}) listed twice", lineno)
        seen.add((u, v))
        arcs.append((u, v))
    return Digraph(n, tuple(arcs))


def format_digraph(x: Digraph) -> str:
    return "\n".join([f"digraph {x.n}"] + [f"a {u + 1} {v + 1}" for u, v in x.arcs]) + "\n"


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def read_gain_graph(path: str | Path) -> GainGraph:
    return parse_gain_graph(_read(path))


def write_gain_graph(path: str | Path, phi: GainGraph) -> None:
    Path(path).write_text(format_gain_graph(phi))


def read_digraph(path: str | Path) -> Digraph:
    return parse_digraph(_read(path))


def write_digraph(path: str | Path, x: Digraph) -> None:
    Path(path).write_text(format_digraph(x))


def round_sig(x: float, digits: int = REPORT_DIGITS) -> float:
    if not math.isfinite(x) or x == 0.0:
        return 0.0 if x == 0.0 else x
    return float(f"{x:.{digits}g}")


def jsonable(obj: Any) -> Any:
    """Convert report values to JSON types, rounding floats to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj))
    if obj is None or isinstance(obj, str):
        return obj
    raise DomainError(f"cannot serialize {type(obj).__name__} in a report")


def dump_report(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2) + "\n"


def graph_edges_1based(g: SimpleGraph) -> list[list[int]]:
    return [[u + 1, v + 1] for u, v in g.edges]
