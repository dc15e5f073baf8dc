"""Command-line entry point.

Exit codes: 0 success, 1 benchmark bound violated, 2 invalid input or
flags, 3 enumeration cap exceeded or numerical failure.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import approx, exact, models, reductions
from .bench import format_table, run_bench
from .errors import InstanceTooLarge, NumericalFailure, ValidationError
from .generate import KINDS, generate_instance
from .graph import metric_closure
from .instances import format_instance, instance_digest, load_instance
from .report import solve_report, to_json, to_text

EXIT_OK, EXIT_BOUND, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3


class FlagError(ValidationError):
    """A flag value the parser accepted but the command cannot use."""


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--input", metavar="FILE", required=True, help="instance file")

    timing = argparse.ArgumentParser(add_help=False)
    timing.add_argument("--timing", action="store_true",
                        help="record wall time (makes reports differ run to run)")

    parser = argparse.ArgumentParser(prog="centdian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance")
    solve_sub = solve.add_subparsers(dest="method", required=True)
    for name in ("pdp-exact", "pdp-apx", "cdp-exact", "cdp-apx"):
        sp = solve_sub.add_parser(name, parents=[common, source, timing])
        if name.startswith("pdp"):
            sp.add_argument("--p", type=_positive_int, required=True)
        else:
            sp.add_argument("--budget", type=_positive_float, required=True)
        if name.endswith("apx"):
            sp.add_argument("--epsilon", type=_positive_float, default=0.5)
        else:
            sp.add_argument("--cap", type=_positive_int, default=exact.DEFAULT_CAP)

    reduce_ = sub.add_parser("reduce", help="problem reductions")
    red_sub = reduce_.add_subparsers(dest="method", required=True)
    dsp = red_sub.add_parser("dsp", parents=[common, source],
                             help="dominating set instance to p-centdian instance")
    dsp.add_argument("--kappa", type=_positive_int, required=True)
    dsp.add_argument("--verify", action="store_true",
                     help="check the equivalence with exact solvers (n <= 12)")

    export = sub.add_parser("export", help="export models")
    exp_sub = export.add_subparsers(dest="method", required=True)
    ilp = exp_sub.add_parser("ilp", parents=[source], help="integer program in LP format")
    ilp.add_argument("--output", metavar="FILE")
    group = ilp.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=_positive_int)
    group.add_argument("--budget", type=_positive_float)

    gen = sub.add_parser("gen", help="generate a random instance")
    gen.add_argument("--kind", choices=KINDS, default="gnp")
    gen.add_argument("--n", type=_positive_int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--prob", type=float)
    gen.add_argument("--wmin", type=int)
    gen.add_argument("--wmax", type=int)
    gen.add_argument("--grid", type=int)
    gen.add_argument("--output", metavar="FILE")

    bench = sub.add_parser("bench", parents=[common],
                           help="compare the approximation with exact optima")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--trials", type=_positive_int, default=20)
    bench.add_argument("--epsilon", type=_positive_float, default=0.5)
    bench.add_argument("--n-min", type=_positive_int, default=5)
    bench.add_argument("--n-max", type=_positive_int, default=10)
    bench.add_argument("--jobs", type=_positive_int, default=1)
    return parser


def _load(path: str):
    try:
        return load_instance(path)
    except OSError as exc:
        raise FlagError(f"--input {path}: {exc.strerror or exc}") from None
    except ValidationError as exc:
        raise type(exc)(f"--input {path}: {exc}") from None


def _solve(args) -> tuple[str, int]:
    g = _load(args.input)
    dm = metric_closure(g)
    start = time.perf_counter()
    problem = args.method.split("-")[0]
    try:
        if args.method in ("pdp-exact", "pdp-apx"):
            inst = models.PdpInstance(dm, args.p)
        else:
            inst = models.CdpInstance(dm, args.budget)
    except ValidationError as exc:
        flag = "--p" if problem == "pdp" else "--budget"
        raise FlagError(f"{flag}: {exc}") from None

    kw = {}
    if args.method == "pdp-exact":
        res = exact.solve_pdp_exact(inst, cap=args.cap)
        kw.update(p=args.p)
    elif args.method == "cdp-exact":
        res = exact.solve_cdp_exact(inst, cap=args.cap)
        kw.update(budget=args.budget,
                  bounds={"budget": args.budget, "value_ok": res.value <= args.budget})
    elif args.method == "pdp-apx":
        res = approx.apx_pdp(inst, args.epsilon)
        eps = args.epsilon
        kw.update(p=args.p, epsilon=eps, lp_lower_bound=res.lp_lower_bound, bounds={
            "value_bound": (1 + eps) * res.lp_lower_bound,
            "value_ok": res.value <= (1 + eps) * res.lp_lower_bound + 1e-6,
            "cardinality_bound": res.cardinality_bound,
            "cardinality_ok": len(res.solution) <= res.cardinality_bound,
        })
    else:
        res = approx.apx_cdp(inst, args.epsilon)
        eps = args.epsilon
        kw.update(budget=args.budget, epsilon=eps, lp_lower_bound=res.lp_lower_bound, bounds={
            "rounds": res.p,
            "value_bound": (1 + eps) * args.budget,
            "value_ok": res.value <= (1 + eps) * args.budget,
            "cardinality_bound": res.cardinality_bound,
            "cardinality_ok": len(res.solution) <= res.cardinality_bound,
        })
    wall = time.perf_counter() - start if args.timing else None
    rep = solve_report(problem, g, dm, args.method, res.solution, wall_time=wall, **kw)
    return (to_json(rep) if args.format == "json" else to_text(rep)), EXIT_OK


def _reduce(args) -> tuple[str, int]:
    g = _load(args.input)
    try:
        red = reductions.dsp_to_pdp(g, args.kappa)
    except ValidationError as exc:
        raise FlagError(f"--kappa: {exc}") from None
    verified = reductions.verify_equivalence(g, args.kappa) if args.verify else None
    if args.format == "text":
        notes = [f"reduced from dominating set instance {instance_digest(g)}",
                 f"p = {red.p}, U = {red.u_bound:g}"]
        if verified is not None:
            notes.append(f"equivalence verified: {str(verified).lower()}")
        return format_instance(red.graph, notes), EXIT_OK
    rep = {
        "problem": "dsp-reduction",
        "instance_digest": instance_digest(g),
        "kappa": args.kappa,
        "p": red.p,
        "u_bound": red.u_bound,
        "reduced_digest": instance_digest(red.graph),
        "equivalence": verified,
    }
    return to_json(rep), EXIT_OK


def _export(args) -> tuple[str, int]:
    g = _load(args.input)
    dm = metric_closure(g)
    try:
        inst = (models.PdpInstance(dm, args.p) if args.p is not None
                else models.CdpInstance(dm, args.budget))
    except ValidationError as exc:
        raise FlagError(f"{'--p' if args.p is not None else '--budget'}: {exc}") from None
    return models.export_ilp(inst), EXIT_OK


def _gen(args) -> tuple[str, int]:
    if args.kind == "gnp":
        params = {"prob": args.prob, "wmin": args.wmin, "wmax": args.wmax}
        if args.grid is not None:
            raise FlagError("--grid applies only to --kind euclidean")
    else:
        params = {"grid": args.grid}
        if any(v is not None for v in (args.prob, args.wmin, args.wmax)):
            raise FlagError("--prob/--wmin/--wmax apply only to --kind gnp")
    g = generate_instance(args.kind, args.n, params, args.seed)
    notes = [f"{args.kind} n={args.n} seed={args.seed}"]
    return format_instance(g, notes), EXIT_OK


def _bench(args) -> tuple[str, int]:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise FlagError(f"--n-min/--n-max: need 2 <= n-min <= n-max, got {args.n_min}, {args.n_max}")
    result = run_bench(args.seed, args.trials, args.epsilon, args.jobs, args.n_min, args.n_max)
    text = to_json(result) if args.format == "json" else format_table(result)
    return text, EXIT_OK if result["all_within_bounds"] else EXIT_BOUND


HANDLERS = {"solve": _solve, "reduce": _reduce, "export": _export, "gen": _gen, "bench": _bench}


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        text, code = HANDLERS[args.command](args)
    except ValidationError as exc:
        print(f"centdian: error: {exc}", file=stderr)
        return EXIT_INVALID
    except (InstanceTooLarge, NumericalFailure) as exc:
        print(f"centdian: error: {exc}", file=stderr)
        return EXIT_RESOURCE
    if getattr(args, "output", None):
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"centdian: error: --output {args.output}: {exc.strerror or exc}", file=stderr)
            return EXIT_INVALID
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run_command())
