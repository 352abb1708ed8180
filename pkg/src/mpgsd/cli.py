"""Command line: generate, solve, bench, oracle."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import bench as B
from .corrections import CorrectionLimits
from .generator import GenerationError, GenSpec
from .graph import (FormatError, InstanceError, check_feasible, covered_demand, normalized_error,
                    read_instance, read_solution, write_solution)
from .heuristics import ALL_CONFIGS, HeuristicConfig
from .multi import CorrectionMode, run_multi, solve
from .oracle import OracleRefused, solve_exact


def _limits(args) -> CorrectionLimits:
    return CorrectionLimits(args.cycle_max, args.stagnation)


def _add_solver_flags(p):
    p.add_argument("--hs", type=int, choices=(1, 2, 3), default=2, help="subgraph rule")
    p.add_argument("--hn", type=int, choices=(1, 2, 3, 4), default=1, help="node rule")
    p.add_argument("--multi", action="store_true", help="race all 12 rule combinations")
    p.add_argument("--correct", choices=[m.value for m in CorrectionMode], default="combined")
    p.add_argument("--cycle-max", type=int, default=CorrectionLimits.max_cycle_length)
    p.add_argument("--stagnation", type=int, default=CorrectionLimits.stagnation_window)


def cmd_generate(args) -> int:
    spec = GenSpec(args.n, args.m, args.kind, args.seed)
    paths = B.generate_batch(spec, args.count, Path(args.out))
    print(f"wrote {len(paths)} instances to {args.out}")
    return 0


def cmd_solve(args) -> int:
    path = Path(args.instance)
    instance = read_instance(path.read_bytes())
    limits, mode = _limits(args), CorrectionMode(args.correct)
    start = time.perf_counter()
    if args.multi:
        result = run_multi(instance, limits, mode=mode, workers=args.workers).best
        label = f"multi (best {result.config.label})"
    else:
        config = HeuristicConfig.of(args.hs, args.hn)
        result = solve(instance, config, mode, limits)
        label = config.label
    seconds = time.perf_counter() - start
    partition = result.partition
    violation = check_feasible(instance, partition)
    if violation is not None:
        raise AssertionError(f"solver produced an infeasible partition: {violation}")
    out = Path(args.out) if args.out else path.with_suffix(".sol")
    out.write_text(write_solution(partition))
    # report the covered demand of what was written, not the solver's counter
    covered = covered_demand(instance, read_solution(out.read_bytes(), instance))
    if instance.optimum is None:
        opt, err = "n/a", "n/a"
    else:
        opt, err = str(instance.optimum), f"{normalized_error(instance.optimum, covered):.4f}"
    print(f"{path.name} config={label} correct={mode.value} covered={covered} optimum={opt} "
          f"error%={err} time_s={seconds:.3f} solution={out}")
    return 0


def cmd_bench(args) -> int:
    loaded = B.load_dir(Path(args.dir))
    if not loaded:
        print(f"no *.mpgsd files in {args.dir}", file=sys.stderr)
        return 1
    limits, mode = _limits(args), CorrectionMode(args.correct)
    if args.multi:
        tasks = [B.BenchTask(None, mode, limits)]
    elif args.all:
        tasks = [B.BenchTask(c, mode, limits) for c in ALL_CONFIGS]
    else:
        tasks = [B.BenchTask(HeuristicConfig.of(args.hs, args.hn), mode, limits)]
    rows = B.bench([inst for _, inst in loaded], tasks, workers=args.workers)
    print(B.format_table(rows))
    text = B.rows_to_csv(rows, timing=not args.no_time)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    path = Path(args.instance)
    instance = read_instance(path.read_bytes())
    result = solve_exact(instance, max_nodes=args.max_nodes)
    print(f"{path.name} optimum={result.optimum} explored={result.explored}")
    text = write_solution(result.witness)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mpgsd", description="Maximum partitioning of graphs with supply and demand")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write random instances with known optimum")
    p.add_argument("n", type=int, help="supply nodes")
    p.add_argument("m", type=int, help="demand nodes")
    p.add_argument("--kind", choices=("general", "tree"), default="general")
    p.add_argument("--count", type=int, default=40)
    p.add_argument("--seed", type=int, default=0, help="seed of the first instance")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("instance")
    _add_solver_flags(p)
    p.add_argument("--workers", type=int, default=None, help="processes for --multi")
    p.add_argument("--out", help="solution file (default: instance path with .sol)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="error statistics over a directory of instances")
    p.add_argument("dir")
    _add_solver_flags(p)
    p.add_argument("--all", action="store_true", help="one row per rule combination")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--csv", help="write CSV here instead of stdout")
    p.add_argument("--no-time", action="store_true", help="omit timings so reruns are byte-identical")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="exact optimum of a small instance")
    p.add_argument("instance")
    p.add_argument("--max-nodes", type=int, default=18)
    p.add_argument("--out", help="witness solution file (default: stdout)")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OSError, FormatError, InstanceError, GenerationError, OracleRefused, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
