"""Run reports with a fixed key order and stable number formatting."""
from __future__ import annotations

import json
import math

from .graph import DistanceMatrix, evaluate
from .instances import instance_digest

REPORT_KEYS = (
    "problem", "instance_digest", "method", "n", "p", "budget", "epsilon",
    "solution", "cardinality", "eccentricity", "median", "centdian",
    "lp_lower_bound", "bounds", "wall_time",
)


def num(x):
    """Round to 12 significant digits; integral values become ints."""
    if x is None or isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    x = float(x)
    if not math.isfinite(x):
        return None
    x = float(f"{x:.12g}")
    if x.is_integer() and abs(x) < 1e15:
        return int(x)
    return x


def _clean(value):
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, str) or value is None or isinstance(value, bool):
        return value
    return num(value)


def solve_report(problem, graph, dm: DistanceMatrix, method, solution, *, p=None, budget=None,
                 epsilon=None, lp_lower_bound=None, bounds=None, wall_time=None) -> dict:
    ev = evaluate(dm, solution)
    rep = {
        "problem": problem,
        "instance_digest": instance_digest(graph),
        "method": method,
        "n": graph.n,
        "p": p,
        "budget": budget,
        "epsilon": epsilon,
        "solution": sorted(int(v) for v in solution),
        "cardinality": len(solution),
        "eccentricity": ev.eccentricity,
        "median": ev.median,
        "centdian": ev.centdian,
        "lp_lower_bound": lp_lower_bound,
        "bounds": bounds or {},
        "wall_time": wall_time,
    }
    assert tuple(rep) == REPORT_KEYS
    return _clean(rep)


def to_json(report) -> str:
    return json.dumps(_clean(report), separators=(",", ":")) + "\n"


def to_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                lines.append(f"{key}.{sub}: {_scalar(v)}")
        else:
            lines.append(f"{key}: {_scalar(value)}")
    return "\n".join(lines) + "\n"


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)
