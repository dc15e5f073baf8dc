"""Exact and approximate solvers for the p-centdian problem and its converse."""
from .approx import ApproxResult, apx_cdp, apx_pdp, build_neighborhoods, greedy_set_cover
from .exact import ExactResult, solve_cdp_exact, solve_dsp_exact, solve_pdp_exact
from .graph import CentdianEvaluation, DistanceMatrix, Graph, distance_to_set, evaluate, metric_closure
from .models import (
    CdpInstance,
    FractionalSolution,
    PdpInstance,
    build_lp_relaxation,
    export_ilp,
    lemma1_assignment,
    solve_relaxation,
)
from .reductions import dsp_to_pdp, verify_equivalence
from .simplex import LpModel, LpSolution, solve_lp

__version__ = "0.1.0"
