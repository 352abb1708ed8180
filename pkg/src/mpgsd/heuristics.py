"""Scoring rules for the two greedy stages.

Subgraph rules (higher score is expanded first):
    HS1  available supply
    HS2  1 / |N_i|
    HS3  available supply / |N_i|

Node rules (higher score is added first):
    HN1  demand of the node
    HN2  number of new candidates the node would bring into N_i
    HN3  (HN2 + 1) * HN1
    HN4  minus the demand, i.e. the smallest demand wins

Scores are ints or ``Fraction`` so ties are exact. Ties go to the lowest
subgraph index / node id.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import NON_LOCATED
from .state import SolverState

LEAST = -math.inf


class SubgraphRule(enum.IntEnum):
    HS1 = 1
    HS2 = 2
    HS3 = 3


class NodeRule(enum.IntEnum):
    HN1 = 1
    HN2 = 2
    HN3 = 3
    HN4_MIN_DEMAND = 4


@dataclass(frozen=True)
class HeuristicConfig:
    subgraph_rule: SubgraphRule = SubgraphRule.HS2
    node_rule: NodeRule = NodeRule.HN1

    @classmethod
    def of(cls, hs: int, hn: int) -> "HeuristicConfig":
        return cls(SubgraphRule(hs), NodeRule(hn))

    @property
    def label(self) -> str:
        return f"hs{int(self.subgraph_rule)}-hn{int(self.node_rule)}"


ALL_CONFIGS = tuple(HeuristicConfig.of(hs, hn) for hs in (1, 2, 3) for hn in (1, 2, 3, 4))


def score_subgraph(state: SolverState, i: int, rule: SubgraphRule):
    size = len(state.neighbors[i])
    avail = state.available[i]
    if rule == SubgraphRule.HS1:
        return avail
    if size == 0:
        return LEAST
    if rule == SubgraphRule.HS2:
        return Fraction(1, size)
    return Fraction(avail, size)


def new_candidates(state: SolverState, i: int, u: int) -> int:
    """Number of neighbors of ``u`` that would join ``N_i`` once ``u`` is added."""
    a, demand, nb = state.assignment, state.demand, state.neighbors[i]
    cap = state.available[i] - demand[u]
    count = 0
    for v in state.adj[u]:
        if a[v] == NON_LOCATED and 0 < demand[v] <= cap and v not in nb:
            count += 1
    return count


def score_node(state: SolverState, i: int, u: int, rule: NodeRule) -> int:
    d = state.demand[u]
    if rule == NodeRule.HN1:
        return d
    if rule == NodeRule.HN4_MIN_DEMAND:
        return -d
    extra = new_candidates(state, i, u)
    if rule == NodeRule.HN2:
        return extra
    return (extra + 1) * d


def select_subgraph(state: SolverState, rule: SubgraphRule) -> Optional[int]:
    """Best subgraph with a non-empty candidate set, or None."""
    best, best_score = None, None
    for i, nb in enumerate(state.neighbors):
        if not nb:
            continue
        s = score_subgraph(state, i, rule)
        if best is None or s > best_score:
            best, best_score = i, s
    return best


def select_node(state: SolverState, i: int, rule: NodeRule) -> Optional[int]:
    best, best_score = None, None
    for u in state.neighbors[i]:
        s = score_node(state, i, u, rule)
        if best is None or s > best_score or (s == best_score and u < best):
            best, best_score = u, s
    return best
