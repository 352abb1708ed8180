"""Local corrections applied to a greedy partition.

* non-located correction: place a non-located demand node into an adjacent
  subgraph directly, or in exchange for a smaller leaf of that subgraph;
* switch correction: the same exchange restricted to leaves of equal demand
  (covered demand unchanged, diversifies the search);
* cutoff correction: let the subgraph with the most spare supply absorb
  neighboring leaves, non-located ones first, even at the expense of other
  subgraphs.

A :class:`Corrector` owns the correction history used for cycle detection
and the stagnation counter shared by all three procedures.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graph import NON_LOCATED, check_feasible
from .state import SolverState


class CorrectionKind(enum.Enum):
    NON_LOCATED = "non_located"
    SWITCH = "switch"
    CUTOFF = "cutoff"


@dataclass(frozen=True)
class Move:
    node: int
    origin: int
    dest: int


@dataclass(frozen=True)
class CorrectionRecord:
    """One applied correction; the first move is the node brought in."""

    kind: CorrectionKind
    moves: tuple[Move, ...]

    def __post_init__(self):
        if not self.moves:
            raise ValueError("a correction moves at least one node")

    @property
    def primary(self) -> int:
        return self.moves[0].node

    @property
    def moved_nodes(self) -> list[tuple[int, int]]:
        return [(m.node, m.origin) for m in self.moves]


@dataclass(frozen=True)
class CorrectionLimits:
    max_cycle_length: int = 6
    stagnation_window: int = 50

    def __post_init__(self):
        if self.max_cycle_length < 1 or self.stagnation_window < 1:
            raise ValueError("correction limits must be >= 1")


def detect_cycle(history: Iterable[CorrectionRecord], max_len: int) -> Optional[int]:
    """Smallest L <= max_len such that the last L corrections left every node they touched where it started."""
    recent = list(history)[-max_len:]
    for length in range(1, len(recent) + 1):
        window = recent[-length:]
        start: dict[int, int] = {}
        end: dict[int, int] = {}
        for rec in window:
            for m in rec.moves:
                start.setdefault(m.node, m.origin)
                end[m.node] = m.dest
        if all(end[v] == start[v] for v in start):
            return length
    return None


def exchange_set(state: SolverState, u: int, i: int, *, equal: bool = False) -> set[int]:
    """Leaves of ``S_i`` that non-located ``u`` can replace.

    Strict mode (default): ``d(v) < d(u) <= d(v) + available[i]``, so the
    swap gains demand. ``equal`` mode: ``d(v) == d(u)``. In both, ``u`` must
    stay adjacent to ``S_i`` once ``v`` is gone.
    """
    du = state.demand[u]
    avail = state.available[i]
    touching = state.frontier[i].get(u, 0)
    if not touching:
        return set()
    sole = None
    if touching == 1:
        sole = next(x for x in state.adj[u] if state.assignment[x] == i)
    demand = state.demand
    out = set()
    for v in state.leaves[i]:
        dv = demand[v]
        ok = dv == du if equal else dv < du <= dv + avail
        if ok and v != sole:
            out.add(v)
    return out


@dataclass
class CorrectionSummary:
    initial_covered: int
    final_covered: int
    applied: int
    by_kind: dict[str, int]
    cycles: int
    stagnated: bool
    hit_cap: bool


class Corrector:
    """Runs corrections on ``state`` in place.

    ``check`` re-validates feasibility after every applied correction.
    """

    def __init__(self, state: SolverState, limits: CorrectionLimits = CorrectionLimits(),
                 *, check: bool = False):
        self.state = state
        self.limits = limits
        self.check = check
        self.history: deque[CorrectionRecord] = deque(maxlen=limits.max_cycle_length)
        self.barred: Optional[int] = None
        self.since_improvement = 0
        self.applied = 0
        self.by_kind = {k.value: 0 for k in CorrectionKind}
        self.cycles = 0
        self.cap = limits.stagnation_window * state.instance.n_nodes
        self.hit_cap = False
        self.initial_covered = state.covered

    @property
    def stagnated(self) -> bool:
        return self.since_improvement >= self.limits.stagnation_window

    def _record(self, kind: CorrectionKind, moves: tuple[Move, ...], gained: bool) -> None:
        self.applied += 1
        self.by_kind[kind.value] += 1
        if gained:
            self.since_improvement = 0
        elif kind != CorrectionKind.SWITCH:
            self.since_improvement += 1
        rec = CorrectionRecord(kind, moves)
        self.history.append(rec)
        self.barred = None
        length = detect_cycle(self.history, self.limits.max_cycle_length)
        if length is not None:
            self.cycles += 1
            self.barred = self.history[-length].primary
        if self.applied >= self.cap:
            self.hit_cap = True
        if self.check:
            violation = check_feasible(self.state.instance, self.state.partition())
            if violation is not None:
                raise AssertionError(f"infeasible after {rec}: {violation}")

    # -- non-located and switch ---------------------------------------------

    def _place(self, u: int, kind: CorrectionKind, blocked: set[int]) -> bool:
        state = self.state
        a, demand = state.assignment, state.demand
        du = demand[u]
        subgraphs = sorted({a[x] for x in state.adj[u]} - {NON_LOCATED})
        equal = kind == CorrectionKind.SWITCH
        for i in subgraphs:
            if not equal and du <= state.available[i]:
                state.add_node(i, u)
                self._record(kind, (Move(u, NON_LOCATED, i),), True)
                return True
            candidates = sorted((demand[v], v) for v in exchange_set(state, u, i, equal=equal)
                                if v not in blocked)
            for _, v in candidates:
                if not state.keeps_connected(i, v):
                    blocked.add(v)
                    continue
                state.remove_node(i, v)
                state.add_node(i, u)
                self._record(kind, (Move(u, NON_LOCATED, i), Move(v, i, NON_LOCATED)), not equal)
                return True
        return False

    def non_located(self) -> bool:
        """Improving exchanges and direct additions until a full pass changes nothing."""
        state = self.state
        changed = False
        while not self.hit_cap:
            blocked: set[int] = set()
            progress = False
            for u in state.non_located():
                if self.hit_cap:
                    break
                if u == self.barred or state.assignment[u] != NON_LOCATED:
                    continue
                if self._place(u, CorrectionKind.NON_LOCATED, blocked):
                    progress = changed = True
            if not progress:
                break
        return changed

    def switch(self) -> bool:
        """Equal-demand exchanges over the non-located nodes.

        A node freed by a swap joins the work list, so an immediate inverse
        swap can happen once; the cycle rule then bars the first node. Each
        node is tried at most once per call.
        """
        state = self.state
        changed = False
        blocked: set[int] = set()
        work = deque(state.non_located())
        queued = set(work)
        while work and not self.hit_cap:
            u = work.popleft()
            if u == self.barred or state.assignment[u] != NON_LOCATED:
                continue
            if self._place(u, CorrectionKind.SWITCH, blocked):
                changed = True
                freed = self.history[-1].moves[1].node
                if freed not in queued:
                    queued.add(freed)
                    work.append(freed)
        return changed

    # -- cutoff ---------------------------------------------------------------

    def _cutoff_candidate(self, s: int, blocked: set[int]) -> Optional[int]:
        """Best node for ``S_s`` to absorb: non-located first, then highest demand, then lowest id."""
        state = self.state
        a, demand, ch = state.assignment, state.demand, state.ch
        cap = state.available[s]
        while True:
            best, best_key = None, None
            for v, _ in state.frontier[s].items():
                d = demand[v]
                if d == 0 or d > cap or ch[v] != 0 or v == self.barred or v in blocked:
                    continue
                key = (a[v] != NON_LOCATED, -d, v)
                if best is None or key < best_key:
                    best, best_key = v, key
            if best is None:
                return None
            j = a[best]
            if j == NON_LOCATED or state.keeps_connected(j, best):
                return best
            blocked.add(best)

    def cutoff(self) -> bool:
        """Expand the subgraph with the most spare supply until it cannot absorb more."""
        state = self.state
        blocked: set[int] = set()
        order = sorted(range(state.n_subgraphs), key=lambda i: (-state.available[i], i))
        target = None
        for s in order:
            if state.available[s] <= 0:
                break
            if self._cutoff_candidate(s, blocked) is not None:
                target = s
                break
        if target is None:
            return False
        moved = False
        while not (self.hit_cap or self.stagnated):
            v = self._cutoff_candidate(target, blocked)
            if v is None:
                break
            j = state.assignment[v]
            if j != NON_LOCATED:
                state.remove_node(j, v)
            state.add_node(target, v)
            self._record(CorrectionKind.CUTOFF, (Move(v, j, target),), j == NON_LOCATED)
            moved = True
        return moved

    # -- drivers --------------------------------------------------------------

    def _non_located_phase(self) -> bool:
        changed = False
        while not self.hit_cap:
            if not self.non_located():
                break
            changed = True
            self.switch()
        return changed

    def run_non_located(self) -> CorrectionSummary:
        """Non-located corrections, each successful round followed by a switch pass."""
        self._non_located_phase()
        return self.summary()

    def run_combined(self) -> CorrectionSummary:
        """Alternate exhaustive non-located phases with cutoff phases.

        Stops when an outer round changes nothing, when no improvement
        follows ``stagnation_window`` non-improving corrections, or at the
        hard cap of ``stagnation_window * |V|`` applied corrections.
        """
        while not self.hit_cap:
            changed = self._non_located_phase()
            if self.stagnated:
                break
            while not (self.hit_cap or self.stagnated):
                if not self.cutoff():
                    break
                changed = True
            if not changed:
                break
        return self.summary()

    def summary(self) -> CorrectionSummary:
        return CorrectionSummary(self.initial_covered, self.state.covered, self.applied,
                                 dict(self.by_kind), self.cycles, self.stagnated, self.hit_cap)


def run_combined(state: SolverState, limits: CorrectionLimits = CorrectionLimits(),
                 *, check: bool = False) -> CorrectionSummary:
    return Corrector(state, limits, check=check).run_combined()


def run_non_located(state: SolverState, limits: CorrectionLimits = CorrectionLimits(),
                    *, check: bool = False) -> CorrectionSummary:
    return Corrector(state, limits, check=check).run_non_located()
