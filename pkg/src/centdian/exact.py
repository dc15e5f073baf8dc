"""Exact solvers by exhaustive subset enumeration.

Subsets are visited in lexicographic order and a candidate replaces the
incumbent only when strictly better, so the witness returned is always the
lexicographically smallest optimum.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InstanceTooLarge, InvalidInstance
from .graph import CentdianEvaluation, DistanceMatrix, Graph, evaluate
from .models import CdpInstance, PdpInstance

DEFAULT_CAP = 50_000_000
_BLOCK = 4096


@dataclass(frozen=True)
class ExactResult:
    solution: tuple[int, ...]
    evaluation: CentdianEvaluation
    subsets_examined: int

    @property
    def value(self) -> float:
        return self.evaluation.centdian


def _check_cap(n: int, k: int, cap: int) -> int:
    count = math.comb(n, k)
    if count > cap:
        raise InstanceTooLarge(
            f"C({n}, {k}) = {count} subsets exceeds the enumeration cap of {cap}"
        )
    return count


def _blocks(n: int, k: int):
    it = itertools.combinations(range(n), k)
    while True:
        block = list(itertools.islice(it, _BLOCK))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def _block_values(d: np.ndarray, idx: np.ndarray) -> np.ndarray:
    dist = d[:, idx].min(axis=2)          # (n, block)
    return dist.max(axis=0) + dist.sum(axis=0)


def _scan(dm: DistanceMatrix, k: int, budget: float | None = None):
    """Best k-subset, or with ``budget`` the first one within it.

    Returns ``(subset or None, subsets examined)``.
    """
    best, best_val, seen = None, math.inf, 0
    for idx in _blocks(dm.n, k):
        vals = _block_values(dm.d, idx)
        if budget is not None:
            hits = np.nonzero(vals <= budget)[0]
            if hits.size:
                return tuple(int(v) for v in idx[hits[0]]), seen + int(hits[0]) + 1
            seen += len(idx)
            continue
        j = int(np.argmin(vals))
        if vals[j] < best_val:
            best_val, best = vals[j], tuple(int(v) for v in idx[j])
        seen += len(idx)
    return best, seen


def solve_pdp_exact(inst: PdpInstance, cap: int = DEFAULT_CAP) -> ExactResult:
    """Optimal p-centdian set by trying every p-subset."""
    _check_cap(inst.n, inst.p, cap)
    best, seen = _scan(inst.dm, inst.p)
    return ExactResult(best, evaluate(inst.dm, best), seen)


def solve_cdp_exact(inst: CdpInstance, cap: int = DEFAULT_CAP) -> ExactResult:
    """Smallest vertex set whose centdian distance is within the budget.

    Cardinalities are tried in increasing order; the full vertex set (value 0)
    makes the search always succeed.  ``cap`` bounds the subsets of any single
    cardinality.
    """
    n = inst.n
    seen = 0
    for k in range(1, n + 1):
        _check_cap(n, k, cap)
        found, examined = _scan(inst.dm, k, budget=inst.budget)
        seen += examined
        if found is not None:
            return ExactResult(found, evaluate(inst.dm, found), seen)
    raise AssertionError("the full vertex set always meets a positive budget")


def pdp_values_by_p(dm: DistanceMatrix, cap: int = DEFAULT_CAP) -> dict[int, ExactResult]:
    """Exact optimum for every ``p`` in ``1..n-1``."""
    return {p: solve_pdp_exact(PdpInstance(dm, p), cap) for p in range(1, dm.n)}


def is_dominating(g: Graph, z) -> bool:
    z = set(z)
    adj = g.adjacency()
    return all(v in z or adj[v] & z for v in range(g.n))


def solve_dsp_exact(g: Graph, max_n: int = 20) -> tuple[int, ...]:
    """Minimum dominating set (lexicographically smallest) by enumeration."""
    n = g.n
    if n > max_n:
        raise InstanceTooLarge(f"dominating set enumeration supports n <= {max_n}, got {n}")
    if n < 1:
        raise InvalidInstance("graph has no vertices")
    full = (1 << n) - 1
    closed = [1 << v for v in range(n)]
    for u, v, _ in g.edges:
        closed[u] |= 1 << v
        closed[v] |= 1 << u
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            mask = 0
            for v in combo:
                mask |= closed[v]
            if mask == full:
                return combo
    raise AssertionError("the full vertex set always dominates")
