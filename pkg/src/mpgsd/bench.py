"""Benchmark harness: batch generation, per-config error statistics, CSV."""

from __future__ import annotations

import csv
import io
import json
import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .corrections import CorrectionLimits
from .generator import GenSpec, generate
from .graph import Instance, normalized_error, read_instance, write_instance
from .heuristics import HeuristicConfig
from .multi import CorrectionMode, run_multi, solve

log = logging.getLogger(__name__)

CSV_COLUMNS = ("size", "kind", "config", "avg_err", "max_err", "stdev", "total_time_s")
STDEV_NOTE = "# stdev is the population standard deviation (divide by N)"
MULTI = "multi"


@dataclass(frozen=True)
class BenchRow:
    size: str
    kind: str
    config: str
    avg_err: float
    max_err: float
    stdev: float
    total_time_s: float

    def __post_init__(self):
        if not (0 <= self.avg_err <= self.max_err <= 100 and self.stdev >= 0):
            raise ValueError(f"inconsistent statistics in {self}")


def error_stats(errors: Sequence[float]) -> tuple[float, float, float]:
    """(average, maximum, population stdev) of normalized errors in percent."""
    if not errors:
        return 0.0, 0.0, 0.0
    return statistics.fmean(errors), max(errors), statistics.pstdev(errors)


def instance_filename(spec: GenSpec, index: int) -> str:
    return f"inst_{spec.label}_{index}.mpgsd"


def generate_batch(spec: GenSpec, count: int, out_dir: Path) -> list[Path]:
    """Write ``count`` instances seeded ``spec.seed, spec.seed + 1, ...`` plus manifest.json."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths, entries = [], []
    for index in range(count):
        s = replace(spec, seed=spec.seed + index)
        path = out_dir / instance_filename(s, index)
        path.write_text(write_instance(generate(s)))
        paths.append(path)
        entries.append({"file": path.name, "seed": s.seed})
    manifest = {"size": spec.label, "kind": spec.kind, "instances": entries}
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return paths


def load_dir(directory: Path) -> list[tuple[str, Instance]]:
    files = sorted(Path(directory).glob("*.mpgsd"))
    return [(p.name, read_instance(p.read_bytes())) for p in files]


@dataclass(frozen=True)
class BenchTask:
    """One solver setting: a single heuristic config, or None for the multiheuristic."""

    config: Optional[HeuristicConfig]
    mode: CorrectionMode = CorrectionMode.NONE
    limits: CorrectionLimits = CorrectionLimits()

    @property
    def label(self) -> str:
        name = MULTI if self.config is None else self.config.label
        return f"{name}/{self.mode.value}"


def run_task(instance: Instance, task: BenchTask) -> tuple[int, float]:
    """Covered demand and wall time of one task on one instance."""
    start = time.perf_counter()
    if task.config is None:
        covered = run_multi(instance, task.limits, mode=task.mode).covered
    else:
        covered = solve(instance, task.config, task.mode, task.limits).covered
    return covered, time.perf_counter() - start


def _job(args):
    instance, task = args
    return run_task(instance, task)


def bench(instances: Iterable[Instance], tasks: Sequence[BenchTask], *,
          workers: Optional[int] = None) -> list[BenchRow]:
    """Rows grouped by (size, kind) in first-seen order, then by task order."""
    groups: dict[tuple[str, str], list[Instance]] = {}
    for inst in instances:
        if inst.optimum is None:
            raise ValueError("benchmark instances need an optimum line")
        groups.setdefault((inst.size_label, inst.kind), []).append(inst)
    if len(groups) > 1:
        log.warning("instances of %d different sizes; rows are grouped by size", len(groups))
    pool = ProcessPoolExecutor(max_workers=workers) if workers and workers > 1 else None
    rows = []
    try:
        for (size, kind), group in groups.items():
            for task in tasks:
                jobs = [(inst, task) for inst in group]
                results = list(pool.map(_job, jobs)) if pool else [_job(j) for j in jobs]
                errors = [normalized_error(inst.optimum, covered)
                          for inst, (covered, _) in zip(group, results)]
                avg, mx, sd = error_stats(errors)
                total = sum(t for _, t in results)
                rows.append(BenchRow(size, kind, task.label, avg, mx, sd, total))
    finally:
        if pool:
            pool.shutdown()
    return rows


def rows_to_csv(rows: Iterable[BenchRow], *, timing: bool = True) -> str:
    """CSV text; without ``timing`` the time column reads ``na`` so reruns are byte-identical."""
    buf = io.StringIO()
    buf.write(STDEV_NOTE + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.size, r.kind, r.config, f"{r.avg_err:.4f}", f"{r.max_err:.4f}",
                         f"{r.stdev:.4f}", f"{r.total_time_s:.3f}" if timing else "na"])
    return buf.getvalue()


def format_table(rows: Iterable[BenchRow]) -> str:
    lines = [f"{'size':>10} {'kind':>8} {'config':>18} {'avg':>7} {'max':>7} {'stdev':>7} {'time_s':>8}"]
    for r in rows:
        lines.append(f"{r.size:>10} {r.kind:>8} {r.config:>18} {r.avg_err:7.2f} {r.max_err:7.2f} "
                     f"{r.stdev:7.2f} {r.total_time_s:8.2f}")
    return "\n".join(lines)


# benchmark size grid (8 supply counts x 4 demand counts)
TABLE_SIZES = tuple((n, m) for n, ms in (
    (2, (6, 10, 20, 40)), (5, (15, 25, 50, 100)), (10, (30, 50, 100, 200)),
    (25, (75, 125, 250, 500)), (50, (150, 250, 500, 1000)), (100, (300, 500, 1000, 2000)),
    (200, (600, 1000, 2000, 4000)), (400, (1200, 2000, 4000, 8000))) for m in ms)

# best single config per graph kind, used for the node-rule and correction tables
BEST_SUBGRAPH_RULE = {"general": 2, "tree": 3}
BEST_CONFIG = {"general": HeuristicConfig.of(2, 1), "tree": HeuristicConfig.of(3, 3)}


def table_tasks(table: int, limits: CorrectionLimits = CorrectionLimits()) -> tuple[str, list[BenchTask]]:
    """Graph kind and solver settings of benchmark table 1..6 (odd: general, even: tree)."""
    if table not in range(1, 7):
        raise ValueError("table must be 1..6")
    kind = "general" if table % 2 else "tree"
    if table <= 2:
        tasks = [BenchTask(HeuristicConfig.of(hs, 1)) for hs in (1, 2, 3)]
    elif table <= 4:
        hs = BEST_SUBGRAPH_RULE[kind]
        tasks = [BenchTask(HeuristicConfig.of(hs, hn)) for hn in (1, 2, 3, 4)]
    else:
        best = BEST_CONFIG[kind]
        tasks = [BenchTask(best, CorrectionMode.NONE, limits), BenchTask(best, CorrectionMode.NL, limits),
                 BenchTask(best, CorrectionMode.COMBINED, limits),
                 BenchTask(None, CorrectionMode.COMBINED, limits)]
    return kind, tasks


def generated(n_supply: int, n_demand: int, kind: str, count: int, base_seed: int = 0) -> list[Instance]:
    return [generate(GenSpec(n_supply, n_demand, kind, base_seed + i)) for i in range(count)]
