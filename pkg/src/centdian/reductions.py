"""Dominating set to p-centdian reduction.

A graph has a dominating set of size at most ``kappa`` exactly when the
unit-length metric closure of the graph has a ``kappa``-subset with
centdian distance at most ``n - kappa + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InstanceTooLarge, InvalidKappa
from .exact import solve_dsp_exact, solve_pdp_exact
from .graph import Graph, metric_closure
from .models import PdpInstance


@dataclass(frozen=True)
class ReductionOutput:
    reduced: PdpInstance
    graph: Graph  # complete graph carrying the reduced edge lengths
    p: int
    u_bound: float


def unit_graph(g: Graph) -> Graph:
    return Graph(g.n, [(u, v, 1.0) for u, v, _ in g.edges])


def dsp_to_pdp(g: Graph, kappa: int) -> ReductionOutput:
    """Build the p-centdian decision instance for dominating set size ``kappa``.

    Original edges get length 1; every other pair gets its hop distance in
    ``g``.  Edge weights of ``g`` are ignored.
    """
    n = g.n
    if not 0 < kappa < n:
        raise InvalidKappa(f"kappa must satisfy 0 < kappa < n={n}, got {kappa}")
    dm = metric_closure(unit_graph(g))
    complete = Graph(n, [(u, v, dm.d[u, v]) for u in range(n) for v in range(u + 1, n)])
    return ReductionOutput(PdpInstance(dm, kappa), complete, kappa, float(n - kappa + 1))


def pad_dominating_set(z, n: int, kappa: int) -> tuple[int, ...]:
    """Extend ``z`` to exactly ``kappa`` vertices with the smallest unused indices."""
    chosen = set(z)
    for v in range(n):
        if len(chosen) >= kappa:
            break
        chosen.add(v)
    return tuple(sorted(chosen))


def verify_equivalence(g: Graph, kappa: int, max_n: int = 12) -> bool:
    """Check both sides of the reduction with the exact solvers.

    True iff "g has a dominating set of size <= kappa" agrees with "the
    reduced instance reaches centdian distance <= n - kappa + 1 at p = kappa".
    """
    if g.n > max_n:
        raise InstanceTooLarge(f"equivalence check supports n <= {max_n}, got {g.n}")
    red = dsp_to_pdp(g, kappa)
    has_ds = len(solve_dsp_exact(g)) <= kappa
    reaches = solve_pdp_exact(red.reduced).value <= red.u_bound
    return has_ds == reaches
