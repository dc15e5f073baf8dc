"""LP rounding through greedy set cover.

The fractional optimum is rounded by covering every vertex with a facility
that lies within ``(1 + epsilon)`` times its fractional assignment cost.  The
resulting set costs at most ``(1 + epsilon)`` times the optimum and holds at
most ``(1 + 1/epsilon)(ln n + 1) p`` facilities.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, UncoverableElement
from .graph import CentdianEvaluation, DistanceMatrix, evaluate
from .models import CdpInstance, FractionalSolution, PdpInstance, solve_relaxation

log = logging.getLogger(__name__)

NEIGHBOURHOOD_TOL = 1e-9
SUPPORT_FLOOR = 1e-9

SetCoverSolution = list


@dataclass(frozen=True)
class NeighborhoodStructure:
    dtilde: np.ndarray
    epsilon: float
    neighborhoods: tuple[tuple[int, ...], ...]
    coverage: np.ndarray  # sum of y over each neighbourhood

    @property
    def lemma2_threshold(self) -> float:
        return self.epsilon / (1 + self.epsilon)

    def lemma2_holds(self, tol: float = 1e-9) -> bool:
        return bool(np.all(self.coverage > self.lemma2_threshold - tol))


@dataclass(frozen=True)
class SetCoverInstance:
    universe_size: int
    sets: tuple[tuple[int, frozenset[int]], ...]


@dataclass(frozen=True)
class ApproxResult:
    solution: tuple[int, ...]
    evaluation: CentdianEvaluation
    lp_lower_bound: float
    cardinality_bound: float
    p: int
    relaxation: FractionalSolution | None = field(default=None, repr=False, compare=False)
    neighborhoods: NeighborhoodStructure | None = field(default=None, repr=False, compare=False)

    @property
    def value(self) -> float:
        return self.evaluation.centdian


def _check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise InvalidParams(f"epsilon must be a finite number > 0, got {epsilon}")
    return epsilon


def cardinality_bound(n: int, p: int, epsilon: float) -> float:
    return (1 + 1 / epsilon) * (math.log(n) + 1) * p


def build_neighborhoods(frac: FractionalSolution, dm: DistanceMatrix, epsilon: float) -> NeighborhoodStructure:
    epsilon = _check_epsilon(epsilon)
    dtilde = frac.assignment_costs(dm)
    limit = (1 + epsilon) * dtilde + NEIGHBOURHOOD_TOL
    inside = dm.d <= limit[:, None]
    nbhd = tuple(tuple(int(j) for j in np.nonzero(row)[0]) for row in inside)
    coverage = (inside * frac.y[None, :]).sum(axis=1)
    return NeighborhoodStructure(dtilde, epsilon, nbhd, coverage)


def to_set_cover(nb: NeighborhoodStructure, y: np.ndarray, floor: float = SUPPORT_FLOOR) -> SetCoverInstance:
    """One element per vertex, one set per facility in the support of ``y``."""
    n = len(nb.neighborhoods)
    members: dict[int, set[int]] = {int(j): set() for j in np.nonzero(y > floor)[0]}
    for i, nbr in enumerate(nb.neighborhoods):
        for j in nbr:
            if j in members:
                members[j].add(i)
    return SetCoverInstance(n, tuple((j, frozenset(members[j])) for j in sorted(members)))


def greedy_set_cover(sc: SetCoverInstance) -> SetCoverSolution:
    """Repeatedly take the set covering most uncovered elements.

    Ties go to the smallest label.  Returns labels in the order chosen.
    """
    covered = set().union(*(s for _, s in sc.sets)) if sc.sets else set()
    missing = set(range(sc.universe_size)) - covered
    if missing:
        raise UncoverableElement(f"element {min(missing)} belongs to no set")
    uncovered = set(range(sc.universe_size))
    ordered = sorted(sc.sets, key=lambda t: t[0])
    by_label = dict(ordered)
    chosen = []
    while uncovered:
        best_label, best_gain = None, 0
        for label, s in ordered:
            gain = len(s & uncovered)
            if gain > best_gain:
                best_label, best_gain = label, gain
        chosen.append(best_label)
        uncovered -= by_label[best_label]
    return chosen


def apx_pdp(inst: PdpInstance, epsilon: float, relaxation: FractionalSolution | None = None) -> ApproxResult:
    """Round the LP relaxation into a facility set.

    ``relaxation`` may carry a previously solved relaxation of the same
    instance, which lets callers sweep several ``epsilon`` values for one LP
    solve.  The returned evaluation is recomputed on the metric, with every
    vertex served by its nearest chosen facility.
    """
    epsilon = _check_epsilon(epsilon)
    frac = relaxation if relaxation is not None else solve_relaxation(inst)
    nb = build_neighborhoods(frac, inst.dm, epsilon)
    if not nb.lemma2_holds():
        log.warning(
            "neighbourhood mass %.3g below %.3g; LP solution may be inaccurate",
            float(nb.coverage.min()), nb.lemma2_threshold,
        )
    chosen = greedy_set_cover(to_set_cover(nb, frac.y))
    solution = tuple(sorted(chosen))
    return ApproxResult(
        solution=solution,
        evaluation=evaluate(inst.dm, solution),
        lp_lower_bound=frac.objective,
        cardinality_bound=cardinality_bound(inst.n, inst.p, epsilon),
        p=inst.p,
        relaxation=frac,
        neighborhoods=nb,
    )


def apx_cdp(inst: CdpInstance, epsilon: float) -> ApproxResult:
    """Smallest ``p`` whose rounded solution fits ``(1 + epsilon) * budget``.

    ``p`` grows one step at a time; at ``p = n`` the whole vertex set (value
    0) is returned without an LP solve.
    """
    epsilon = _check_epsilon(epsilon)
    n, target = inst.n, (1 + epsilon) * inst.budget
    for p in range(1, n):
        res = apx_pdp(PdpInstance(inst.dm, p), epsilon)
        if res.value <= target:
            return res
    everything = tuple(range(n))
    return ApproxResult(
        solution=everything,
        evaluation=evaluate(inst.dm, everything),
        lp_lower_bound=0.0,
        cardinality_bound=cardinality_bound(n, n, epsilon),
        p=n,
    )
