"""Exact solver for small instances, used to validate the heuristics.

For every supply node all connected demand sets that fit its supply are
enumerated as bitmasks; a depth-first search then picks one set per supply
node, pairwise disjoint, maximising the covered demand. Bound: covered so far
plus the largest option of each remaining supply node, capped by the demand
not yet used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Instance, Partition

MAX_ORACLE_NODES = 18


class OracleRefused(ValueError):
    """Instance too large for exhaustive search."""


@dataclass
class OracleResult:
    optimum: int
    witness: Partition
    explored: int


def _options(instance: Instance, s: int) -> list[tuple[int, int]]:
    """(covered demand, bitmask) of every connected set rooted at supply ``s`` that fits."""
    w, adj = instance.weights, instance.adjacency
    supply = w[s]
    seen = {1 << s}
    out = [(0, 1 << s)]
    stack = [(1 << s, 0)]
    while stack:
        mask, used = stack.pop()
        border = set()
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            for u in adj[v]:
                if not mask >> u & 1 and w[u] < 0:
                    border.add(u)
        for u in border:
            total = used - w[u]
            if total > supply:
                continue
            nxt = mask | 1 << u
            if nxt in seen:
                continue
            seen.add(nxt)
            out.append((total, nxt))
            stack.append((nxt, total))
    out.sort(key=lambda t: -t[0])
    return out


def solve_exact(instance: Instance, *, max_nodes: int = MAX_ORACLE_NODES) -> OracleResult:
    n = instance.n_nodes
    if n > max_nodes:
        raise OracleRefused(f"instance has {n} nodes, oracle limit is {max_nodes}")
    supplies = instance.supply_nodes
    options = [_options(instance, s) for s in supplies]
    order = sorted(range(len(supplies)), key=lambda i: len(options[i]))
    best_rest = [0] * (len(order) + 1)
    for pos in range(len(order) - 1, -1, -1):
        best_rest[pos] = best_rest[pos + 1] + options[order[pos]][0][0]
    total_demand = instance.total_demand()

    best = [-1, None]
    explored = 0
    chosen = [0] * len(supplies)

    def search(pos, used_mask, covered):
        nonlocal explored
        explored += 1
        if pos == len(order):
            if covered > best[0]:
                best[0] = covered
                best[1] = list(chosen)
            return
        if covered + best_rest[pos] <= best[0]:
            return
        i = order[pos]
        for value, mask in options[i]:
            if mask & used_mask:
                continue
            if covered + value + best_rest[pos + 1] <= best[0]:
                break
            chosen[i] = mask
            search(pos + 1, used_mask | mask, covered + value)
            if best[0] == total_demand:
                return

    search(0, 0, 0)
    subgraphs = []
    for mask in best[1]:
        subgraphs.append([v for v in range(n) if mask >> v & 1])
    witness = Partition.from_subgraphs(instance, subgraphs)
    return OracleResult(best[0], witness, explored)
