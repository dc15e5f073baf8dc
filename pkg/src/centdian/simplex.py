"""Dense two-phase primal simplex with bounded variables.

Minimises ``c @ x`` subject to linear rows ``a @ x (<=|=|>=) b`` and box
bounds ``lo <= x <= hi`` (``hi`` may be infinite).  Upper bounds are handled
by the ratio test rather than as extra rows, so the tableau only grows with
the number of functional constraints.

Pivoting uses Dantzig's rule until ``10 * num_vars`` degenerate pivots have
been made in a phase, then switches to Bland's rule for the rest of it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import MalformedModel, NumericalFailure

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-7


class Relation(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass
class LpModel:
    """Minimisation LP.

    ``constraints`` holds ``(coefficients, relation, rhs)`` triples; ``bounds``
    defaults to ``[0, inf)`` for every variable.
    """

    num_vars: int
    objective: Sequence[float]
    constraints: list[tuple[Sequence[float], Relation | str, float]] = field(default_factory=list)
    bounds: list[tuple[float, float]] | None = None

    def add_constraint(self, coeffs, relation, rhs) -> None:
        self.constraints.append((coeffs, Relation(relation), float(rhs)))

    def arrays(self):
        """Validated ``(c, A, relations, b, lo, hi)`` as numpy arrays."""
        n = self.num_vars
        if n < 1:
            raise MalformedModel(f"num_vars must be >= 1, got {n}")
        c = np.asarray(self.objective, dtype=np.float64)
        if c.shape != (n,):
            raise MalformedModel(f"objective has length {c.size}, expected {n}")
        rows, rels, rhs = [], [], []
        for k, (coeffs, rel, b) in enumerate(self.constraints):
            a = np.asarray(coeffs, dtype=np.float64)
            if a.shape != (n,):
                raise MalformedModel(f"constraint {k} has length {a.size}, expected {n}")
            try:
                rels.append(Relation(rel))
            except ValueError:
                raise MalformedModel(f"constraint {k} has unknown relation {rel!r}") from None
            rows.append(a)
            rhs.append(float(b))
        A = np.array(rows, dtype=np.float64).reshape(len(rows), n)
        b = np.array(rhs, dtype=np.float64)
        if self.bounds is None:
            lo, hi = np.zeros(n), np.full(n, np.inf)
        else:
            if len(self.bounds) != n:
                raise MalformedModel(f"bounds has length {len(self.bounds)}, expected {n}")
            lo = np.array([bd[0] for bd in self.bounds], dtype=np.float64)
            hi = np.array([bd[1] for bd in self.bounds], dtype=np.float64)
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise MalformedModel("model contains non-finite coefficients")
        if not np.all(np.isfinite(lo)):
            raise MalformedModel("lower bounds must be finite")
        if np.any(lo > hi):
            k = int(np.argmax(lo > hi))
            raise MalformedModel(f"variable {k} has lo {lo[k]} > hi {hi[k]}")
        return c, A, rels, b, lo, hi


@dataclass
class LpSolution:
    status: Status
    objective_value: float
    values: np.ndarray
    iterations: int = 0


def max_violation(m: LpModel, values) -> tuple[float, float]:
    """Largest constraint and bound violations of ``values`` in ``m``."""
    c, A, rels, b, lo, hi = m.arrays()
    x = np.asarray(values, dtype=np.float64)
    ax = A @ x
    worst = 0.0
    for k, rel in enumerate(rels):
        if rel is Relation.LE:
            v = ax[k] - b[k]
        elif rel is Relation.GE:
            v = b[k] - ax[k]
        else:
            v = abs(ax[k] - b[k])
        worst = max(worst, v)
    bound = max(0.0, float(np.max(lo - x, initial=0.0)), float(np.max(x - hi, initial=0.0)))
    return worst, bound


class _Tableau:
    """Working state of one solve: ``T = B^-1 A`` plus current basic values."""

    def __init__(self, A, b, ub, basis, cap):
        self.T = A.copy()
        self.A = A
        self.b = b
        self.ub = ub
        m, ncols = A.shape
        self.basis = list(basis)
        self.is_basic = np.zeros(ncols, dtype=bool)
        self.is_basic[self.basis] = True
        self.at_upper = np.zeros(ncols, dtype=bool)
        self.beta = b.copy()
        self.iterations = 0
        self.cap = cap
        # initial basis columns are unit vectors, so T = A already

    def values(self) -> np.ndarray:
        x = np.where(self.at_upper, self.ub, 0.0)
        x[self.basis] = self.beta
        return x

    def pivot(self, r: int, q: int) -> None:
        T = self.T
        T[r] /= T[r, q]
        col = T[:, q].copy()
        col[r] = 0.0
        nz = np.nonzero(col)[0]
        if nz.size:
            T[nz] -= np.outer(col[nz], T[r])
        T[:, q] = 0.0
        T[r, q] = 1.0
        leaving = self.basis[r]
        self.is_basic[leaving] = False
        self.is_basic[q] = True
        self.at_upper[q] = False
        self.basis[r] = q

    def optimise(self, cost: np.ndarray, allowed: np.ndarray, degenerate_limit: int) -> bool:
        """Run primal simplex on ``cost``; return False if unbounded."""
        T, ub = self.T, self.ub
        d = cost - cost[self.basis] @ T
        degenerate = 0
        bland = False
        while True:
            cand_inc = allowed & ~self.is_basic & ~self.at_upper & (d < -PIVOT_TOL) & (ub > 0)
            cand_dec = allowed & ~self.is_basic & self.at_upper & (d > PIVOT_TOL)
            cand = cand_inc | cand_dec
            if not cand.any():
                return True
            self.iterations += 1
            if self.iterations > self.cap:
                raise NumericalFailure(
                    f"simplex made no final progress within {self.cap} iterations"
                )
            if bland:
                q = int(np.argmax(cand))
            else:
                q = int(np.argmax(np.where(cand, np.abs(d), -1.0)))
            sgn = 1.0 if cand_inc[q] else -1.0
            alpha = sgn * T[:, q]
            beta = self.beta
            ub_b = ub[self.basis]
            ratios = np.full(alpha.shape, np.inf)
            dec = alpha > PIVOT_TOL
            inc = (alpha < -PIVOT_TOL) & np.isfinite(ub_b)
            ratios[dec] = np.maximum(beta[dec], 0.0) / alpha[dec]
            ratios[inc] = np.maximum(ub_b[inc] - beta[inc], 0.0) / -alpha[inc]
            t_row = ratios.min() if ratios.size else np.inf
            t_flip = ub[q]
            if math.isinf(t_row) and math.isinf(t_flip):
                return False
            if t_flip <= t_row:
                t = t_flip
                self.beta = beta - alpha * t
                self.at_upper[q] = not self.at_upper[q]
            else:
                t = t_row
                ties = np.nonzero(ratios <= t_row + PIVOT_TOL * max(1.0, t_row))[0]
                if bland:
                    r = int(min(ties, key=lambda i: self.basis[i]))
                else:
                    r = int(ties[np.argmax(np.abs(alpha[ties]))])
                leaving = self.basis[r]
                leaves_at_upper = alpha[r] < 0
                entering_value = t if sgn > 0 else ub[q] - t
                self.beta = beta - alpha * t
                self.beta[r] = entering_value
                self.pivot(r, q)
                self.at_upper[leaving] = leaves_at_upper
                d = d - d[q] * T[r]
                d[q] = 0.0
            if t <= PIVOT_TOL:
                degenerate += 1
                if degenerate > degenerate_limit:
                    bland = True


def _standard_form(c, A, rels, b, lo, hi):
    """Shift to zero lower bounds, add slacks, and make every rhs nonnegative."""
    m, n = A.shape
    b = b - A @ lo
    n_slack = sum(rel is not Relation.EQ for rel in rels)
    S = np.zeros((m, n_slack))
    slack_of_row = [-1] * m
    k = 0
    for i, rel in enumerate(rels):
        if rel is Relation.EQ:
            continue
        S[i, k] = 1.0 if rel is Relation.LE else -1.0
        slack_of_row[i] = n + k
        k += 1
    As = np.hstack([A, S])
    neg = b < 0
    As[neg] *= -1.0
    b = np.abs(b)
    ub = np.concatenate([hi - lo, np.full(n_slack, np.inf)])
    cs = np.concatenate([c, np.zeros(n_slack)])
    return cs, As, b, ub, slack_of_row


def solve_lp(m: LpModel) -> LpSolution:
    """Solve ``m`` to optimality or report infeasibility/unboundedness.

    Raises :class:`MalformedModel` on dimension mismatches and
    :class:`NumericalFailure` when the iteration cap of
    ``50 * (num_vars + num_constraints)`` is exhausted.
    """
    c, A, rels, b, lo, hi = m.arrays()
    n, rows = m.num_vars, A.shape[0]
    cap = 50 * (n + rows)
    degenerate_limit = 10 * n
    cs, As, bs, ub, slack_of_row = _standard_form(c, A, rels, b, lo, hi)
    ncols = As.shape[1]

    # unit slack columns seed the basis; remaining rows get artificials
    basis, art_rows = [], []
    for i in range(rows):
        s = slack_of_row[i]
        if s >= 0 and As[i, s] > 0:
            basis.append(s)
        else:
            basis.append(-1)
            art_rows.append(i)
    n_art = len(art_rows)
    Aw = np.hstack([As, np.zeros((rows, n_art))])
    for k, i in enumerate(art_rows):
        Aw[i, ncols + k] = 1.0
        basis[i] = ncols + k
    ubw = np.concatenate([ub, np.full(n_art, np.inf)])
    tab = _Tableau(Aw, bs, ubw, basis, cap)

    if n_art:
        cost1 = np.concatenate([np.zeros(ncols), np.ones(n_art)])
        allowed = np.ones(ncols + n_art, dtype=bool)
        tab.optimise(cost1, allowed, degenerate_limit)
        infeas = float(tab.values()[ncols:].sum())
        if infeas > FEAS_TOL * max(1.0, float(bs.max(initial=0.0))):
            return LpSolution(Status.INFEASIBLE, math.nan, np.full(n, math.nan), tab.iterations)
        _drive_out_artificials(tab, ncols)

    keep = tab.T.shape[0]
    tab.T = np.ascontiguousarray(tab.T[:, :ncols])
    tab.A = tab.A[:keep, :ncols]
    tab.ub = ub
    tab.is_basic = tab.is_basic[:ncols]
    tab.at_upper = tab.at_upper[:ncols]
    bounded = tab.optimise(cs, np.ones(ncols, dtype=bool), degenerate_limit)

    x = _refine(tab)
    values = lo + x[:n]
    if not bounded:
        return LpSolution(Status.UNBOUNDED, -math.inf, values, tab.iterations)
    return LpSolution(Status.OPTIMAL, float(c @ values), values, tab.iterations)


def _drive_out_artificials(tab: _Tableau, ncols: int) -> None:
    """Pivot zero-level artificials out of the basis; drop redundant rows."""
    r = 0
    while r < len(tab.basis):
        if tab.basis[r] < ncols:
            r += 1
            continue
        row = tab.T[r, :ncols]
        cand = np.nonzero((np.abs(row) > PIVOT_TOL) & ~tab.is_basic[:ncols])[0]
        if cand.size:
            q = int(cand[np.argmax(np.abs(row[cand]))])
            value = tab.ub[q] if tab.at_upper[q] else 0.0
            tab.pivot(r, q)
            tab.beta[r] = value
            r += 1
        else:
            tab.is_basic[tab.basis[r]] = False
            keep = np.arange(len(tab.basis)) != r
            tab.T = tab.T[keep]
            tab.A = tab.A[keep]
            tab.b = tab.b[keep]
            tab.beta = tab.beta[keep]
            del tab.basis[r]


def _refine(tab: _Tableau) -> np.ndarray:
    """Recompute basic values from the original rows for the final basis."""
    x = tab.values()
    if not tab.basis:
        return x
    B = tab.A[:, tab.basis]
    nonbasic = ~tab.is_basic
    rhs = tab.b - tab.A[:, nonbasic] @ x[nonbasic]
    try:
        xb = np.linalg.solve(B, rhs)
    except np.linalg.LinAlgError:
        return x
    if np.all(np.isfinite(xb)) and np.max(np.abs(xb - x[tab.basis]), initial=0.0) < 1e-6:
        ub_b = tab.ub[tab.basis]
        x[tab.basis] = np.minimum(np.maximum(xb, 0.0), ub_b)
    return x
