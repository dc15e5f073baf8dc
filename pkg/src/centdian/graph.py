"""Weighted graphs, their metric closure, and centdian scoring of vertex sets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DisconnectedGraph, EmptySet, InvalidInstance, NegativeWeight

Edge = tuple[int, int, float]


def _components(n: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices ``0..n-1`` with nonnegative edge lengths.

    Parallel edges are tolerated (the shortest one wins in the closure);
    the instance file parser is stricter and rejects them.
    """

    n: int
    edges: tuple[Edge, ...]

    def __init__(self, n: int, edges: Iterable[Sequence[float]]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(
            self, "edges", tuple((int(u), int(v), float(w)) for u, v, w in edges)
        )
        self._validate()

    def _validate(self) -> None:
        if self.n < 1:
            raise InvalidInstance(f"vertex count must be >= 1, got {self.n}")
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInstance(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InvalidInstance(f"self-loop at vertex {u}")
            if not np.isfinite(w):
                raise InvalidInstance(f"edge ({u}, {v}) has non-finite length {w}")
            if w < 0:
                raise NegativeWeight(f"edge ({u}, {v}) has negative length {w}")
        if _components(self.n, ((u, v) for u, v, _ in self.edges)) != 1:
            raise DisconnectedGraph(f"graph on {self.n} vertices is not connected")

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs shortest-path lengths; the array is read-only."""

    d: np.ndarray

    def __post_init__(self):
        d = np.array(self.d, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 1:
            raise InvalidInstance(f"distance matrix must be square and nonempty, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise DisconnectedGraph("distance matrix has unreachable pairs")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __getitem__(self, ij):
        return self.d[ij]


@dataclass(frozen=True)
class CentdianEvaluation:
    eccentricity: float
    median: float

    @property
    def centdian(self) -> float:
        return self.eccentricity + self.median


def metric_closure(g: Graph) -> DistanceMatrix:
    """Shortest-path lengths between every pair of vertices of ``g``.

    Floyd-Warshall, vectorised over the two inner loops.
    """
    n = g.n
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v, w in g.edges:
        if w < d[u, v]:
            d[u, v] = d[v, u] = w
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    if not np.all(np.isfinite(d)):
        raise DisconnectedGraph(f"graph on {n} vertices is not connected")
    return DistanceMatrix(d)


def _members(dm: DistanceMatrix, h: Iterable[int]) -> np.ndarray:
    idx = np.fromiter((int(v) for v in h), dtype=np.intp)
    if idx.size == 0:
        raise EmptySet("vertex set must be nonempty")
    if idx.min() < 0 or idx.max() >= dm.n:
        raise InvalidInstance(f"vertex set {sorted(idx.tolist())} has indices outside 0..{dm.n - 1}")
    return idx


def distance_to_set(dm: DistanceMatrix, v: int, h: Iterable[int]) -> float:
    idx = _members(dm, h)
    return float(dm.d[v, idx].min())


def set_distances(dm: DistanceMatrix, h: Iterable[int]) -> np.ndarray:
    """Vector of ``d(v, h)`` for every vertex ``v``."""
    return dm.d[:, _members(dm, h)].min(axis=1)


def evaluate(dm: DistanceMatrix, h: Iterable[int]) -> CentdianEvaluation:
    """Eccentricity and median distance of the vertex set ``h``.

    The median sums over every vertex, members of ``h`` included (they
    contribute zero).
    """
    dist = set_distances(dm, h)
    return CentdianEvaluation(float(dist.max()), float(dist.sum()))
