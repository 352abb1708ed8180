"""Single-configuration pipeline (greedy plus optional corrections) and the
multiheuristic race over all twelve heuristic combinations."""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .corrections import CorrectionLimits, CorrectionSummary, Corrector
from .graph import Instance, Partition
from .greedy import run_greedy
from .heuristics import ALL_CONFIGS, HeuristicConfig


class CorrectionMode(enum.Enum):
    NONE = "none"
    NL = "nl"
    COMBINED = "combined"


@dataclass
class SolveResult:
    config: HeuristicConfig
    partition: Partition = field(repr=False)
    covered: int
    greedy_covered: int
    seconds: float
    summary: Optional[CorrectionSummary] = None


def solve(instance: Instance, config: HeuristicConfig = HeuristicConfig(),
          mode: CorrectionMode = CorrectionMode.COMBINED,
          limits: CorrectionLimits = CorrectionLimits(), *, check: bool = False) -> SolveResult:
    start = time.perf_counter()
    greedy = run_greedy(instance, config, check=check)
    state = greedy.state
    greedy_covered = state.covered
    summary = None
    if mode != CorrectionMode.NONE:
        corrector = Corrector(state, limits, check=check)
        if mode == CorrectionMode.NL:
            summary = corrector.run_non_located()
        else:
            summary = corrector.run_combined()
    seconds = time.perf_counter() - start
    return SolveResult(config, state.partition(), state.covered, greedy_covered, seconds, summary)


@dataclass
class ComboRun:
    config: HeuristicConfig
    covered: int
    seconds: float


@dataclass
class MultiResult:
    best: SolveResult
    per_combo: list[ComboRun]

    @property
    def covered(self) -> int:
        return self.best.covered


def _solve_job(args):
    instance, config, mode, limits, check = args
    return solve(instance, config, mode, limits, check=check)


def run_multi(instance: Instance, limits: CorrectionLimits = CorrectionLimits(), *,
              mode: CorrectionMode = CorrectionMode.COMBINED,
              workers: Optional[int] = None, check: bool = False) -> MultiResult:
    """Run every HS x HN combination and keep the best partition.

    Ties go to the first combination in HS1..HS3 x HN1..HN4 order, so the
    result does not depend on ``workers``.
    """
    jobs = [(instance, c, mode, limits, check) for c in ALL_CONFIGS]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_job, jobs))
    else:
        results = [_solve_job(j) for j in jobs]
    best = results[0]
    for r in results[1:]:
        if r.covered > best.covered:
            best = r
    per_combo = [ComboRun(r.config, r.covered, r.seconds) for r in results]
    return MultiResult(best, per_combo)
