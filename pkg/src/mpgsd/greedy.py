"""Two-stage greedy construction: pick a subgraph, then a node to add to it."""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Instance, Partition, check_feasible
from .heuristics import HeuristicConfig, SubgraphRule, select_node, select_subgraph
from .state import SolverState


class StopReason(enum.Enum):
    SUPPLY_EXHAUSTED = "supply_exhausted"
    NO_NEIGHBORS = "no_neighbors"


@dataclass
class GreedyResult:
    partition: Partition
    iterations: int
    stop_reason: StopReason
    state: SolverState = field(repr=False)
    sequence: list[tuple[int, int]] = field(default_factory=list, repr=False)

    @property
    def covered(self) -> int:
        return self.state.covered


def _heap_key(state: SolverState, i: int, rule: SubgraphRule):
    if rule == SubgraphRule.HS1:
        return -state.available[i]
    if rule == SubgraphRule.HS2:
        return len(state.neighbors[i])
    return -Fraction(state.available[i], len(state.neighbors[i]))


def run_greedy(instance: Instance, config: HeuristicConfig = HeuristicConfig(),
               *, fast: bool = True, check: bool = False) -> GreedyResult:
    """Grow one subgraph per supply node until no supply or no candidate is left.

    With ``fast`` the subgraph stage uses a lazily invalidated heap instead
    of a linear scan; both pick the same subgraph. ``check`` validates
    feasibility after every iteration (slow, for tests).
    """
    state = SolverState(instance)
    rule, node_rule = config.subgraph_rule, config.node_rule
    neighbors, demand = state.neighbors, state.demand
    k = state.n_subgraphs
    heap: list = []
    stamp = [0] * k

    def push(j):
        stamp[j] += 1
        if neighbors[j]:
            heapq.heappush(heap, (_heap_key(state, j, rule), j, stamp[j]))

    if fast:
        for j in range(k):
            push(j)
    total = state.total_available()
    limit = len(instance.demand_nodes)
    iterations = 0
    sequence = []
    while total > 0:
        if fast:
            i = None
            while heap:
                _, j, s = heapq.heappop(heap)
                if s == stamp[j]:
                    i = j
                    break
        else:
            i = select_subgraph(state, rule)
        if i is None:
            break
        u = select_node(state, i, node_rule)
        touched = set(state.in_neighbors[u])
        state.add_node(i, u)
        total -= demand[u]
        iterations += 1
        sequence.append((i, u))
        if iterations > limit:
            raise AssertionError("greedy exceeded |V_d| iterations")
        if fast:
            touched.add(i)
            for j in touched:
                push(j)
        if check:
            violation = check_feasible(instance, state.partition())
            if violation is not None:
                raise AssertionError(f"infeasible after iteration {iterations}: {violation}")
    reason = StopReason.SUPPLY_EXHAUSTED if total == 0 else StopReason.NO_NEIGHBORS
    return GreedyResult(state.partition(), iterations, reason, state, sequence)
