"""Benchmark the rounding algorithm against exact enumeration on random instances.

Trial ``t`` of a run seeded with ``s`` uses seed ``s + t`` for every random
choice it makes, so results do not depend on how trials are scheduled.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

from .approx import apx_pdp
from .exact import solve_pdp_exact
from .generate import KINDS, generate_instance, rng_for
from .graph import metric_closure
from .instances import instance_digest
from .models import PdpInstance
from .report import num

COLUMNS = ("trial", "seed", "kind", "n", "p", "digest", "opt", "apx", "ratio",
           "lp", "size", "size_bound", "ok")


def run_trial(seed: int, trial: int, epsilon: float, n_min: int = 5, n_max: int = 10) -> dict:
    s = seed + trial
    rng = rng_for(s)
    kind = KINDS[int(rng.integers(len(KINDS)))]
    n = int(rng.integers(n_min, n_max + 1))
    p = int(rng.integers(1, min(3, n - 1) + 1))
    g = generate_instance(kind, n, seed=s)
    inst = PdpInstance(metric_closure(g), p)
    opt = solve_pdp_exact(inst).value
    res = apx_pdp(inst, epsilon)
    ratio = res.value / opt if opt > 0 else (1.0 if res.value == 0 else math.inf)
    size_bound = min(n, math.floor(res.cardinality_bound))
    ok = res.value <= (1 + epsilon) * opt + 1e-6 and len(res.solution) <= size_bound
    return {
        "trial": trial, "seed": s, "kind": kind, "n": n, "p": p,
        "digest": instance_digest(g), "opt": num(opt), "apx": num(res.value),
        "ratio": num(ratio), "lp": num(res.lp_lower_bound),
        "size": len(res.solution), "size_bound": size_bound, "ok": ok,
    }


def _trial_args(args):
    return run_trial(*args)


def run_bench(seed: int, trials: int, epsilon: float, jobs: int = 1,
              n_min: int = 5, n_max: int = 10) -> dict:
    tasks = [(seed, t, epsilon, n_min, n_max) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_trial_args, tasks))
    else:
        rows = [run_trial(*t) for t in tasks]
    return {
        "seed": seed,
        "trials": trials,
        "epsilon": num(epsilon),
        "max_ratio": max((r["ratio"] for r in rows), default=None),
        "all_within_bounds": all(r["ok"] for r in rows),
        "rows": rows,
    }


def format_table(bench: dict) -> str:
    rows = [[str(r[c]).lower() if isinstance(r[c], bool) else str(r[c]) for c in COLUMNS]
            for r in bench["rows"]]
    widths = [max(len(c), *(len(row[k]) for row in rows)) if rows else len(c)
              for k, c in enumerate(COLUMNS)]
    out = ["  ".join(c.rjust(w) for c, w in zip(COLUMNS, widths))]
    out += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows]
    out.append(f"epsilon {bench['epsilon']}  max ratio {bench['max_ratio']}  "
               f"all within bounds: {str(bench['all_within_bounds']).lower()}")
    return "\n".join(out) + "\n"
