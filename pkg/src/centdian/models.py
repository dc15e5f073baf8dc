"""Mathematical programs for the p-centdian problem and its converse.

Variable layout shared by every builder, for ``n`` vertices::

    x[i, j] -> i * n + j        (assignment of vertex i to facility j)
    y[j]    -> n * n + j        (facility opened at j)
    C       -> n * n + n        (eccentricity upper bound)
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidFractional, InvalidInstance, NumericalFailure
from .graph import DistanceMatrix
from .simplex import FEAS_TOL, LpModel, LpSolution, Relation, Status, solve_lp


@dataclass(frozen=True)
class PdpInstance:
    dm: DistanceMatrix
    p: int

    def __post_init__(self):
        if not 0 < self.p < self.dm.n:
            raise InvalidInstance(f"p must satisfy 0 < p < n={self.dm.n}, got p={self.p}")

    @property
    def n(self) -> int:
        return self.dm.n


@dataclass(frozen=True)
class CdpInstance:
    dm: DistanceMatrix
    budget: float

    def __post_init__(self):
        if not self.budget > 0:
            raise InvalidInstance(f"budget must be > 0, got {self.budget}")

    @property
    def n(self) -> int:
        return self.dm.n


@dataclass(frozen=True)
class FractionalSolution:
    y: np.ndarray
    x: np.ndarray
    c: float
    objective: float
    lp: LpSolution | None = field(default=None, repr=False, compare=False)

    def assignment_costs(self, dm: DistanceMatrix) -> np.ndarray:
        """Per-vertex fractional assignment cost ``sum_j d(i, j) x[i, j]``."""
        return (dm.d * self.x).sum(axis=1)

    def violations(self, dm: DistanceMatrix, p: int) -> list[str]:
        """Names of the solution invariants that fail; empty when all hold."""
        out = []
        if abs(self.y.sum() - p) > 1e-6:
            out.append(f"sum(y) = {self.y.sum()!r} != p = {p}")
        rows = self.x.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > 1e-6:
            out.append(f"assignment rows deviate from 1 by {np.max(np.abs(rows - 1.0))!r}")
        if np.any(self.x > self.y[None, :] + 1e-9):
            out.append("some x[i, j] exceeds y[j]")
        if np.any(self.assignment_costs(dm) > self.c + FEAS_TOL):
            out.append("some assignment cost exceeds C")
        return out


def x_index(n: int, i: int, j: int) -> int:
    return i * n + j


def y_index(n: int, j: int) -> int:
    return n * n + j


def c_index(n: int) -> int:
    return n * n + n


def build_lp_relaxation(inst: PdpInstance) -> LpModel:
    """LP relaxation of the p-centdian integer program.

    Rows, in order: ``n`` assignment equalities, the facility-count equality,
    ``n*n`` linking rows ``x[i, j] <= y[j]``, and ``n`` eccentricity rows.
    """
    n, d = inst.n, inst.dm.d
    nv = n * n + n + 1
    obj = np.zeros(nv)
    obj[: n * n] = d.ravel()
    obj[c_index(n)] = 1.0
    m = LpModel(nv, obj)
    for i in range(n):
        a = np.zeros(nv)
        a[i * n:(i + 1) * n] = 1.0
        m.add_constraint(a, Relation.EQ, 1.0)
    a = np.zeros(nv)
    a[n * n:n * n + n] = 1.0
    m.add_constraint(a, Relation.EQ, inst.p)
    for i in range(n):
        for j in range(n):
            a = np.zeros(nv)
            a[x_index(n, i, j)] = 1.0
            a[y_index(n, j)] = -1.0
            m.add_constraint(a, Relation.LE, 0.0)
    for i in range(n):
        a = np.zeros(nv)
        a[i * n:(i + 1) * n] = d[i]
        a[c_index(n)] = -1.0
        m.add_constraint(a, Relation.LE, 0.0)
    m.bounds = [(0.0, 1.0)] * (n * n + n) + [(0.0, np.inf)]
    return m


def _fractional(inst: PdpInstance, sol: LpSolution) -> FractionalSolution:
    n = inst.n
    v = np.clip(sol.values, 0.0, None)
    x = np.minimum(v[: n * n].reshape(n, n), 1.0)
    y = np.minimum(v[n * n:n * n + n], 1.0)
    return FractionalSolution(y=y, x=x, c=float(v[c_index(n)]), objective=sol.objective_value, lp=sol)


def solve_relaxation(inst: PdpInstance) -> FractionalSolution:
    """Optimal fractional p-centdian solution; its objective lower-bounds the optimum."""
    sol = solve_lp(build_lp_relaxation(inst))
    if sol.status is not Status.OPTIMAL:
        raise NumericalFailure(f"relaxation reported {sol.status.value}; it is always feasible and bounded")
    return _fractional(inst, sol)


def solve_relaxation_fixed_y(inst: PdpInstance, y: np.ndarray) -> LpSolution:
    """Re-solve the relaxation with every facility variable pinned to ``y``."""
    m = build_lp_relaxation(inst)
    n = inst.n
    for j in range(n):
        m.bounds[y_index(n, j)] = (float(y[j]), float(y[j]))
    return solve_lp(m)


def lemma1_assignment(dm: DistanceMatrix, y, p: int) -> tuple[np.ndarray, float]:
    """Cheapest fractional assignment for fixed facility openings ``y``.

    Each vertex fills its unit demand from the nearest facilities first
    (ties by vertex index), taking at most ``y[j]`` from facility ``j``.
    Returns the assignment matrix and the largest per-vertex cost.
    """
    y = np.asarray(y, dtype=np.float64)
    n = dm.n
    if y.shape != (n,):
        raise InvalidFractional(f"y has length {y.size}, expected {n}")
    if np.any(y < -1e-9) or np.any(y > 1 + 1e-9):
        raise InvalidFractional("y entries must lie in [0, 1]")
    if abs(y.sum() - p) > 1e-6:
        raise InvalidFractional(f"sum(y) = {y.sum()!r} differs from p = {p}")
    if y.sum() < 1 - 1e-6:
        raise InvalidFractional(f"sum(y) = {y.sum()!r} cannot cover a unit demand")
    y = np.clip(y, 0.0, 1.0)
    x = np.zeros((n, n))
    for i in range(n):
        order = np.lexsort((np.arange(n), dm.d[i]))
        taken = 0.0
        last = -1
        for j in order:
            if y[j] <= 0.0:
                continue
            last = j
            if taken + y[j] >= 1.0:
                x[i, j] = 1.0 - taken
                taken = 1.0
                break
            x[i, j] = y[j]
            taken += y[j]
        if taken < 1.0:
            # sum(y) fell short of 1 only by rounding; the last facility absorbs it
            x[i, last] += 1.0 - taken
    cost = float((dm.d * x).sum(axis=1).max())
    return x, cost


def lemma1_objective(dm: DistanceMatrix, x: np.ndarray, c: float) -> float:
    return float((dm.d * x).sum() + c)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _terms(pairs) -> str:
    out = []
    for coef, name in pairs:
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        term = name if mag == 1 else f"{_fmt(mag)} {name}"
        out.append(f"{sign} {term}")
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else text


def _wrap(label: str, body: str, width: int = 240) -> list[str]:
    """Split a long expression before a sign token; LP readers cap line length."""
    lines, cur = [], label
    for tok in body.split(" "):
        if tok in ("+", "-") and len(cur) > width:
            lines.append(cur)
            cur = "   "
        cur += " " + tok
    lines.append(cur)
    return lines


def export_ilp(inst: PdpInstance | CdpInstance) -> str:
    """Integer program in CPLEX LP text format.

    A :class:`PdpInstance` yields the p-centdian program (minimise assignment
    cost plus ``C`` with exactly ``p`` facilities); a :class:`CdpInstance`
    yields the converse program (minimise facilities subject to a budget row).
    """
    n, d = inst.n, inst.dm.d
    xs = [[f"x_{i}_{j}" for j in range(n)] for i in range(n)]
    ys = [f"y_{j}" for j in range(n)]
    lines = [f"\\ {'p-centdian' if isinstance(inst, PdpInstance) else 'converse centdian'} model, n = {n}"]
    assign_cost = [(d[i, j], xs[i][j]) for i in range(n) for j in range(n)]
    lines.append("Minimize")
    if isinstance(inst, PdpInstance):
        lines += _wrap(" obj:", _terms(assign_cost + [(1.0, "C")]))
    else:
        lines += _wrap(" obj:", _terms([(1.0, y) for y in ys]))
    lines.append("Subject To")
    for i in range(n):
        lines += _wrap(f" assign_{i}:", _terms([(1.0, xs[i][j]) for j in range(n)]) + " = 1")
    if isinstance(inst, PdpInstance):
        lines += _wrap(" facilities:", _terms([(1.0, y) for y in ys]) + f" = {inst.p}")
    else:
        lines += _wrap(" budget:", _terms(assign_cost + [(1.0, "C")]) + f" <= {_fmt(inst.budget)}")
    for i in range(n):
        for j in range(n):
            lines.append(f" link_{i}_{j}: {xs[i][j]} - {ys[j]} <= 0")
    for i in range(n):
        body = _terms([(d[i, j], xs[i][j]) for j in range(n)] + [(-1.0, "C")])
        lines += _wrap(f" ecc_{i}:", body + " <= 0")
    lines.append("Bounds")
    lines.append(" C >= 0")
    lines.append("Binary")
    for i in range(n):
        lines.append(" " + " ".join(xs[i]))
    lines.append(" " + " ".join(ys))
    lines.append("End")
    return "\n".join(lines) + "\n"
