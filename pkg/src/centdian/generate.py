"""Seeded random instances.

All randomness comes from numpy's PCG64 bit generator seeded with the given
integer, so an instance is fully determined by ``(kind, n, params, seed)``.
"""
from __future__ import annotations

import math
from typing import Mapping

import numpy as np

from .errors import InvalidParams
from .graph import Graph

GNP_DEFAULTS = {"prob": 0.5, "wmin": 1, "wmax": 10}
EUCLIDEAN_DEFAULTS = {"grid": 100, "scale": 1000}
KINDS = ("gnp", "euclidean")


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _params(given: Mapping | None, defaults: dict) -> dict:
    given = dict(given or {})
    unknown = set(given) - set(defaults)
    if unknown:
        raise InvalidParams(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    return {**defaults, **{k: v for k, v in given.items() if v is not None}}


def euclidean_graph(points, scale: float = 1000) -> Graph:
    """Complete graph on ``points`` with lengths ``round(scale * distance)``."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or len(pts) < 1:
        raise InvalidParams("points must be a nonempty (n, dim) array")
    n = len(pts)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            edges.append((i, j, float(round(scale * math.dist(pts[i], pts[j])))))
    return Graph(n, edges)


def _gnp(n: int, prob: float, wmin: int, wmax: int, rng: np.random.Generator) -> Graph:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < prob:
                edges.append((i, j, int(rng.integers(wmin, wmax + 1))))
                parent[find(i)] = find(j)
    # join leftover components along a random spanning tree
    order = rng.permutation(n)
    for k in range(1, n):
        a, b = int(order[k]), int(order[rng.integers(k)])
        if find(a) != find(b):
            edges.append((min(a, b), max(a, b), int(rng.integers(wmin, wmax + 1))))
            parent[find(a)] = find(b)
    return Graph(n, edges)


def generate_instance(kind: str, n: int, params: Mapping | None = None, seed: int = 0) -> Graph:
    """Random connected instance.

    ``gnp``: each pair is an edge with probability ``prob`` and an integer
    length drawn from ``[wmin, wmax]``; disconnected draws are patched with
    random tree edges.  ``euclidean``: ``n`` points on the integer grid
    ``[0, grid]^2``, complete graph with lengths ``round(scale * distance)``.
    """
    if n < 2:
        raise InvalidParams(f"n must be >= 2, got {n}")
    rng = rng_for(seed)
    if kind == "gnp":
        p = _params(params, GNP_DEFAULTS)
        if not 0 < p["prob"] <= 1:
            raise InvalidParams(f"prob must lie in (0, 1], got {p['prob']}")
        if not 0 <= p["wmin"] <= p["wmax"]:
            raise InvalidParams(f"need 0 <= wmin <= wmax, got {p['wmin']}, {p['wmax']}")
        return _gnp(n, float(p["prob"]), int(p["wmin"]), int(p["wmax"]), rng)
    if kind == "euclidean":
        p = _params(params, EUCLIDEAN_DEFAULTS)
        if int(p["grid"]) < 1:
            raise InvalidParams(f"grid must be >= 1, got {p['grid']}")
        if not p["scale"] > 0:
            raise InvalidParams(f"scale must be > 0, got {p['scale']}")
        pts = rng.integers(0, int(p["grid"]) + 1, size=(n, 2))
        return euclidean_graph(pts, p["scale"])
    raise InvalidParams(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")
