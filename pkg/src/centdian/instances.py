"""Plain-text instance files.

Format: optional ``#`` comment lines (blank lines are skipped too), a header
line ``n m``, then ``m`` lines ``u v w`` with 0-based vertex indices and a
nonnegative decimal length.
"""
from __future__ import annotations

import hashlib
import math
from pathlib import Path

from .errors import DisconnectedGraph, InvalidInstance, NegativeWeight, ParseError
from .graph import Graph


def _data_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} {tok!r} is not an integer") from None


def parse_instance(text: str) -> Graph:
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError(1, "missing header line 'n m'")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(lineno, f"header must be 'n m', got {header!r}")
    n, m = _int(parts[0], lineno, "vertex count"), _int(parts[1], lineno, "edge count")
    if n < 1:
        raise ParseError(lineno, f"vertex count must be >= 1, got {n}")
    if m < 0:
        raise ParseError(lineno, f"edge count must be >= 0, got {m}")
    body = lines[1:]
    if len(body) < m:
        last = body[-1][0] if body else lineno
        raise ParseError(last, f"header declares {m} edges but only {len(body)} follow")
    if len(body) > m:
        raise ParseError(body[m][0], f"unexpected line after the {m} declared edges")

    edges, seen = [], {}
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(lineno, f"edge line must be 'u v w', got {line!r}")
        u = _int(parts[0], lineno, "vertex")
        v = _int(parts[1], lineno, "vertex")
        try:
            w = float(parts[2])
        except ValueError:
            raise ParseError(lineno, f"length {parts[2]!r} is not a number") from None
        if not math.isfinite(w):
            raise ParseError(lineno, f"length {parts[2]!r} is not finite")
        if w < 0:
            raise NegativeWeight(f"line {lineno}: edge ({u}, {v}) has negative length {w:g}")
        for x in (u, v):
            if not 0 <= x < n:
                raise ParseError(lineno, f"vertex {x} outside 0..{n - 1}")
        if u == v:
            raise ParseError(lineno, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {key} (first on line {seen[key]})")
        seen[key] = lineno
        edges.append((u, v, w))
    try:
        return Graph(n, edges)
    except DisconnectedGraph as exc:
        raise DisconnectedGraph(f"{exc} ({len(edges)} edges)") from None
    except InvalidInstance as exc:
        raise ParseError(lines[0][0], str(exc)) from None


def load_instance(path: str | Path) -> Graph:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def _fmt_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def format_instance(g: Graph, comments: list[str] | None = None) -> str:
    out = [f"# {c}" for c in comments or []]
    out.append(f"{g.n} {len(g.edges)}")
    out += [f"{u} {v} {_fmt_weight(w)}" for u, v, w in g.edges]
    return "\n".join(out) + "\n"


def instance_digest(g: Graph) -> str:
    """Content hash of the canonical edge list (order and orientation free)."""
    canon = sorted((min(u, v), max(u, v), _fmt_weight(w)) for u, v, w in g.edges)
    text = f"{g.n}\n" + "".join(f"{u} {v} {w}\n" for u, v, w in canon)
    return hashlib.sha256(text.encode()).hexdigest()[:16]
