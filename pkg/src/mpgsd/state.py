"""Mutable partial solution shared by the greedy construction and the corrections.

Per subgraph ``i`` the state keeps

* ``available[i]``: supply minus the demand of its located nodes,
* ``frontier[i]``: every node outside ``S_i`` adjacent to it, mapped to the
  number of its neighbors inside ``S_i``,
* ``neighbors[i]``: the candidate set ``N_i``, i.e. frontier nodes that are
  non-located demand nodes whose demand fits into ``available[i]``.

``neighbors`` is filtered eagerly: the invariant above holds after every
public mutation, so it can be compared against :meth:`recompute_reference`.

The child counters ``ch`` approximate a spanning tree of each subgraph. A
demand node with ``ch == 0`` is treated as a removable leaf. Supply nodes
report ``CH_MAX``; the number of tree children hanging off a supply node is
tracked separately in ``root_children``.
"""

from __future__ import annotations

import sys
from collections import deque

from .graph import NON_LOCATED, Instance, Partition

CH_MAX = sys.maxsize


class ContractViolation(RuntimeError):
    pass


class SolverState:

    def __init__(self, instance: Instance):
        self.instance = instance
        weights = instance.weights
        self.weights = weights
        self.adj = instance.adjacency
        self.demand = [-w if w < 0 else 0 for w in weights]
        self.supply_nodes = instance.supply_nodes
        n, k = len(weights), len(instance.supply_nodes)
        self.assignment = [NON_LOCATED] * n
        self.available = [weights[s] for s in self.supply_nodes]
        self.members = [{s} for s in self.supply_nodes]
        self.ch = [0] * n
        self.root_children = [0] * k
        self.leaves: list[set[int]] = [set() for _ in range(k)]
        self.frontier: list[dict[int, int]] = [dict() for _ in range(k)]
        self.neighbors: list[set[int]] = [set() for _ in range(k)]
        self.in_neighbors: list[set[int]] = [set() for _ in range(n)]
        self.covered = 0
        for i, s in enumerate(self.supply_nodes):
            self.assignment[s] = i
            self.ch[s] = CH_MAX
        for i, s in enumerate(self.supply_nodes):
            fr, nb, cap = self.frontier[i], self.neighbors[i], self.available[i]
            for u in self.adj[s]:
                fr[u] = 1
                if 0 < self.demand[u] <= cap:
                    nb.add(u)
                    self.in_neighbors[u].add(i)

    # -- queries -------------------------------------------------------------

    @property
    def n_subgraphs(self) -> int:
        return len(self.supply_nodes)

    @property
    def located(self) -> list[bool]:
        return [i != NON_LOCATED for i in self.assignment]

    def total_available(self) -> int:
        return sum(self.available)

    def non_located(self) -> list[int]:
        """Non-located demand nodes in ascending id order."""
        a = self.assignment
        return [v for v in self.instance.demand_nodes if a[v] == NON_LOCATED]

    def partition(self) -> Partition:
        return Partition(list(self.assignment), self.supply_nodes, list(self.available))

    def in_subgraph_neighbors(self, i: int, v: int) -> list[int]:
        a = self.assignment
        return [u for u in self.adj[v] if a[u] == i]

    def keeps_connected(self, i: int, v: int) -> bool:
        """True if ``S_i`` minus ``v`` is still connected.

        Exact check used to guard leaf removals, since ``ch == 0`` can
        occasionally mark a node whose removal splits the subgraph.
        """
        a, adj = self.assignment, self.adj
        inner = [u for u in adj[v] if a[u] == i]
        if len(inner) <= 1:
            return True
        targets = set(inner[1:])
        seen = {v, inner[0]}
        queue = deque([inner[0]])
        while queue:
            x = queue.popleft()
            for u in adj[x]:
                if u not in seen and a[u] == i:
                    if u in targets:
                        targets.discard(u)
                        if not targets:
                            return True
                    seen.add(u)
                    queue.append(u)
        return False

    def _tree_parent(self, i: int, v: int) -> int:
        """Neighbor of ``v`` inside ``S_i`` with maximal ch, lowest id on ties."""
        a, ch = self.assignment, self.ch
        best, best_ch = -1, -1
        for u in self.adj[v]:
            if a[u] == i and ch[u] > best_ch:
                best, best_ch = u, ch[u]
        return best

    # -- mutations -----------------------------------------------------------

    def add_node(self, i: int, v: int) -> None:
        """Locate non-located demand node ``v`` in subgraph ``i``; requires ``v in N_i``."""
        if v not in self.neighbors[i]:
            raise ContractViolation(f"node {v} is not a candidate of subgraph {i}")
        a, demand = self.assignment, self.demand
        parent = self._tree_parent(i, v)
        for j in self.in_neighbors[v]:
            self.neighbors[j].discard(v)
        self.in_neighbors[v].clear()
        d = demand[v]
        a[v] = i
        self.available[i] -= d
        self.covered += d
        self.members[i].add(v)
        self.leaves[i].add(v)
        fr = self.frontier[i]
        del fr[v]
        if parent >= 0:
            if self.weights[parent] > 0:
                self.root_children[i] += 1
            else:
                if self.ch[parent] == 0:
                    self.leaves[i].discard(parent)
                self.ch[parent] += 1
        cap = self.available[i]
        nb, in_nb = self.neighbors[i], self.in_neighbors
        for u in self.adj[v]:
            au = a[u]
            if au == i:
                continue
            c = fr.get(u, 0)
            fr[u] = c + 1
            if c == 0 and au == NON_LOCATED and 0 < demand[u] <= cap:
                nb.add(u)
                in_nb[u].add(i)
        drop = [u for u in nb if demand[u] > cap]
        for u in drop:
            nb.discard(u)
            in_nb[u].discard(i)

    def remove_node(self, i: int, v: int) -> None:
        """Make leaf ``v`` of subgraph ``i`` non-located; requires ``ch(v) == 0``."""
        a, demand = self.assignment, self.demand
        if a[v] != i or demand[v] == 0:
            raise ContractViolation(f"node {v} is not a demand node of subgraph {i}")
        if self.ch[v] != 0:
            raise ContractViolation(f"node {v} has ch={self.ch[v]}, only leaves can be removed")
        d = demand[v]
        a[v] = NON_LOCATED
        self.available[i] += d
        self.covered -= d
        self.members[i].discard(v)
        self.leaves[i].discard(v)
        parent = self._tree_parent(i, v)
        if parent >= 0:
            if self.weights[parent] > 0:
                self.root_children[i] -= 1
            elif self.ch[parent] > 0:
                self.ch[parent] -= 1
                if self.ch[parent] == 0:
                    self.leaves[i].add(parent)
        fr, nb, in_nb = self.frontier[i], self.neighbors[i], self.in_neighbors
        inner = 0
        touching = set()
        for u in self.adj[v]:
            au = a[u]
            if au == i:
                inner += 1
                continue
            if au != NON_LOCATED:
                touching.add(au)
            c = fr[u] - 1
            if c:
                fr[u] = c
            else:
                del fr[u]
                if u in nb:
                    nb.discard(u)
                    in_nb[u].discard(i)
        if inner:
            fr[v] = inner
            touching.add(i)
        for j in touching:
            if d <= self.available[j]:
                self.neighbors[j].add(v)
                in_nb[v].add(j)
        cap = self.available[i]
        for u in fr:
            if a[u] == NON_LOCATED and 0 < demand[u] <= cap and u not in nb:
                nb.add(u)
                in_nb[u].add(i)

    # -- reference rebuild ---------------------------------------------------

    def recompute_reference(self) -> "SolverState":
        """Rebuild every derived structure from the assignment alone.

        ``ch`` and ``root_children`` depend on history and are copied.
        """
        ref = SolverState.__new__(SolverState)
        inst = self.instance
        ref.instance, ref.weights, ref.adj = inst, self.weights, self.adj
        ref.demand, ref.supply_nodes = self.demand, self.supply_nodes
        n, k = len(self.weights), len(self.supply_nodes)
        ref.assignment = list(self.assignment)
        ref.ch = list(self.ch)
        ref.root_children = list(self.root_children)
        ref.available = [0] * k
        ref.members = [set() for _ in range(k)]
        ref.covered = 0
        for v, i in enumerate(ref.assignment):
            if i != NON_LOCATED:
                ref.available[i] += self.weights[v]
                ref.members[i].add(v)
                ref.covered += self.demand[v]
        ref.leaves = [{v for v in m if self.demand[v] and ref.ch[v] == 0} for m in ref.members]
        ref.frontier = [dict() for _ in range(k)]
        ref.neighbors = [set() for _ in range(k)]
        ref.in_neighbors = [set() for _ in range(n)]
        for i, m in enumerate(ref.members):
            fr = ref.frontier[i]
            for x in m:
                for u in self.adj[x]:
                    if ref.assignment[u] != i:
                        fr[u] = fr.get(u, 0) + 1
            for u in fr:
                if ref.assignment[u] == NON_LOCATED and 0 < self.demand[u] <= ref.available[i]:
                    ref.neighbors[i].add(u)
                    ref.in_neighbors[u].add(i)
        return ref

    def _fields(self):
        return (self.assignment, self.available, self.members, self.ch, self.root_children,
                self.leaves, self.frontier, self.neighbors, self.in_neighbors, self.covered)

    def __eq__(self, other):
        if not isinstance(other, SolverState):
            return NotImplemented
        return self.instance == other.instance and self._fields() == other._fields()

    __hash__ = None

    def diff(self, other: "SolverState") -> list[str]:
        """Names of the structures that differ; empty when equal."""
        names = ("assignment", "available", "members", "ch", "root_children",
                 "leaves", "frontier", "neighbors", "in_neighbors", "covered")
        return [n for n, x, y in zip(names, self._fields(), other._fields()) if x != y]
