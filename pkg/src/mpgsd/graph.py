"""Instances, partitions, feasibility checks and the text file formats."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

NON_LOCATED = -1

GENERAL = "general"
TREE = "tree"
KINDS = (GENERAL, TREE)


class InstanceError(ValueError):
    """An instance violates a structural invariant."""


class FormatError(ValueError):
    """Malformed instance or solution text.

    ``lineno`` is 1-based and refers to the offending input line (0 when the
    problem is not tied to a single line, e.g. a disconnected graph).
    """

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)


@dataclass(frozen=True, eq=True)
class Instance:
    """Undirected connected graph with signed integer node weights.

    Positive weights are supplies, negative weights are demands. Adjacency
    lists are stored sorted so every traversal is deterministic.
    """

    weights: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]
    kind: str = GENERAL
    optimum: Optional[int] = None
    supply_nodes: tuple[int, ...] = field(init=False, compare=False, repr=False)
    demand_nodes: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.weights)
        if len(self.adjacency) != n:
            raise InstanceError("adjacency length differs from node count")
        if self.kind not in KINDS:
            raise InstanceError(f"unknown kind {self.kind!r}")
        for v, w in enumerate(self.weights):
            if w == 0:
                raise InstanceError(f"node {v} has weight 0")
        degree_sum = 0
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise InstanceError(f"adjacency of node {v} unsorted or has duplicates")
            for u in nbrs:
                if u == v:
                    raise InstanceError(f"self-loop at node {v}")
                if not 0 <= u < n:
                    raise InstanceError(f"node {v} has out-of-range neighbor {u}")
                if v not in self.adjacency[u]:
                    raise InstanceError(f"edge {v}-{u} is not symmetric")
            degree_sum += len(nbrs)
        sup = tuple(v for v, w in enumerate(self.weights) if w > 0)
        if not sup:
            raise InstanceError("instance has no supply node")
        if n and not _connected(self.adjacency):
            raise InstanceError("graph is not connected")
        if self.kind == TREE and degree_sum // 2 != n - 1:
            raise InstanceError(f"tree with {degree_sum // 2} edges on {n} nodes")
        if self.optimum is not None and self.optimum < 0:
            raise InstanceError("optimum must be non-negative")
        object.__setattr__(self, "supply_nodes", sup)
        object.__setattr__(self, "demand_nodes", tuple(v for v, w in enumerate(self.weights) if w < 0))

    @classmethod
    def from_edges(cls, weights: Sequence[int], edges: Iterable[tuple[int, int]],
                   kind: str = GENERAL, optimum: Optional[int] = None) -> "Instance":
        adj: list[set[int]] = [set() for _ in weights]
        for u, v in edges:
            if u == v:
                raise InstanceError(f"self-loop at node {u}")
            if v in adj[u]:
                raise InstanceError(f"duplicate edge {min(u, v)}-{max(u, v)}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(weights), tuple(tuple(sorted(a)) for a in adj), kind, optimum)

    @property
    def n_nodes(self) -> int:
        return len(self.weights)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def size_label(self) -> str:
        return f"{len(self.supply_nodes)}x{len(self.demand_nodes)}"

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def total_supply(self) -> int:
        return sum(self.weights[s] for s in self.supply_nodes)

    def total_demand(self) -> int:
        return -sum(self.weights[d] for d in self.demand_nodes)

    def scaled(self, factor: int) -> "Instance":
        """Copy with every weight (and the optimum) multiplied by ``factor`` > 0."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        opt = None if self.optimum is None else self.optimum * factor
        return Instance(tuple(w * factor for w in self.weights), self.adjacency, self.kind, opt)

    def subgraph_index(self) -> dict[int, int]:
        """Map supply node -> subgraph index (supply nodes in ascending id order)."""
        return {s: i for i, s in enumerate(self.supply_nodes)}


def _connected(adjacency) -> bool:
    seen = [False] * len(adjacency)
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for u in adjacency[v]:
            if not seen[u]:
                seen[u] = True
                count += 1
                queue.append(u)
    return count == len(adjacency)


@dataclass
class Partition:
    """Assignment of every node to a subgraph index or NON_LOCATED.

    Subgraph ``i`` is rooted at ``supply_nodes[i]``; ``available[i]`` is the
    signed weight sum of its members.
    """

    assignment: list[int]
    supply_nodes: tuple[int, ...]
    available: list[int]

    @classmethod
    def from_assignment(cls, instance: Instance, assignment: Sequence[int]) -> "Partition":
        if len(assignment) != instance.n_nodes:
            raise InstanceError("assignment length differs from node count")
        k = len(instance.supply_nodes)
        available = [0] * k
        for v, i in enumerate(assignment):
            if i == NON_LOCATED:
                continue
            if not 0 <= i < k:
                raise InstanceError(f"node {v} has invalid subgraph index {i}")
            available[i] += instance.weights[v]
        return cls(list(assignment), instance.supply_nodes, available)

    @classmethod
    def from_subgraphs(cls, instance: Instance, subgraphs: Iterable[Iterable[int]]) -> "Partition":
        """Build from node collections, each holding exactly one supply node.

        Supply nodes not mentioned are placed alone in their own subgraph.
        """
        index = instance.subgraph_index()
        assignment = [NON_LOCATED] * instance.n_nodes
        for s in instance.supply_nodes:
            assignment[s] = index[s]
        for nodes in subgraphs:
            nodes = list(nodes)
            roots = [v for v in nodes if v in index]
            if len(roots) != 1:
                raise InstanceError(f"subgraph {nodes} must contain exactly one supply node")
            for v in nodes:
                assignment[v] = index[roots[0]]
        return cls.from_assignment(instance, assignment)

    @classmethod
    def empty(cls, instance: Instance) -> "Partition":
        return cls.from_subgraphs(instance, [])

    def members(self, i: int) -> list[int]:
        return [v for v, j in enumerate(self.assignment) if j == i]

    def copy(self) -> "Partition":
        return Partition(list(self.assignment), self.supply_nodes, list(self.available))


def covered_demand(instance: Instance, partition: Partition) -> int:
    """Total absolute demand of all located demand nodes."""
    k = len(instance.supply_nodes)
    total = 0
    for v, i in enumerate(partition.assignment):
        if i == NON_LOCATED:
            continue
        if not 0 <= i < k:
            raise InstanceError(f"node {v} has invalid subgraph index {i}")
        w = instance.weights[v]
        if w < 0:
            total -= w
    return total


@dataclass(frozen=True)
class Violation:
    subgraph: int
    reason: str

    def __str__(self):
        return f"subgraph {self.subgraph}: {self.reason}"


def check_feasible(instance: Instance, partition: Partition) -> Optional[Violation]:
    """Return the first constraint violation found, or None if feasible.

    Checks, per subgraph in index order: its designated supply node is its
    only supply node, its available supply is non-negative (and matches the
    stored value), and its members induce a connected subgraph.
    """
    weights, adj = instance.weights, instance.adjacency
    k = len(instance.supply_nodes)
    if len(partition.assignment) != instance.n_nodes:
        return Violation(NON_LOCATED, "assignment length differs from node count")
    members: list[list[int]] = [[] for _ in range(k)]
    for v, i in enumerate(partition.assignment):
        if i == NON_LOCATED:
            if weights[v] > 0:
                return Violation(NON_LOCATED, f"supply node {v} is not located")
            continue
        if not 0 <= i < k:
            return Violation(i, f"node {v} has invalid subgraph index")
        members[i].append(v)
    for i, nodes in enumerate(members):
        root = instance.supply_nodes[i]
        if partition.assignment[root] != i:
            return Violation(i, f"designated supply node {root} is not a member")
        extra = [v for v in nodes if weights[v] > 0 and v != root]
        if extra:
            return Violation(i, f"contains extra supply node {extra[0]}")
        avail = sum(weights[v] for v in nodes)
        if avail < 0:
            return Violation(i, f"available supply {avail} < 0")
        if partition.available[i] != avail:
            return Violation(i, f"stored available supply {partition.available[i]} != {avail}")
        seen = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen and partition.assignment[u] == i:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != len(nodes):
            return Violation(i, "disconnected")
    return None


def normalized_error(optimum: int, found: int) -> float:
    """Percentage gap ``(optimum - found) / optimum * 100``."""
    if optimum <= 0:
        raise ValueError("optimum must be positive")
    if found < 0:
        raise ValueError("found must be non-negative")
    if found > optimum:
        raise ValueError(f"found {found} exceeds optimum {optimum}: infeasible solution or wrong optimum")
    return (optimum - found) / optimum * 100.0


# -- text formats ------------------------------------------------------------

def write_instance(instance: Instance) -> str:
    lines = [
        "MPGSD 1",
        f"kind {instance.kind}",
        f"nodes {len(instance.supply_nodes)} {len(instance.demand_nodes)}",
    ]
    lines += [f"{v} {w}" for v, w in enumerate(instance.weights)]
    edges = instance.edges()
    lines.append(f"edges {len(edges)}")
    lines += [f"{u} {v}" for u, v in edges]
    if instance.optimum is not None:
        lines.append(f"optimum {instance.optimum}")
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tokens, count, lineno, what):
    if len(tokens) != count:
        raise FormatError(f"expected {what}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"non-integer value in {what}", lineno) from None


def read_instance(data: str | bytes) -> Instance:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = list(_content_lines(data))
    pos = 0

    def take(expected: str):
        nonlocal pos
        if pos >= len(lines):
            raise FormatError(f"unexpected end of input, expected '{expected}'",
                              lines[-1][0] if lines else 0)
        lineno, tokens = lines[pos]
        pos += 1
        return lineno, tokens

    lineno, tokens = take("MPGSD 1")
    if tokens != ["MPGSD", "1"]:
        raise FormatError("bad header, expected 'MPGSD 1'", lineno)
    lineno, tokens = take("kind")
    if len(tokens) != 2 or tokens[0] != "kind" or tokens[1] not in KINDS:
        raise FormatError("expected 'kind general|tree'", lineno)
    kind = tokens[1]
    lineno, tokens = take("nodes")
    if not tokens or tokens[0] != "nodes":
        raise FormatError("expected 'nodes <n_supply> <n_demand>'", lineno)
    n_sup, n_dem = _ints(tokens[1:], 2, lineno, "'nodes <n_supply> <n_demand>'")
    if n_sup < 0 or n_dem < 0:
        raise FormatError("negative node count", lineno)
    n = n_sup + n_dem
    weights = [0] * n
    seen_ids = set()
    for _ in range(n):
        lineno, tokens = take("<node_id> <weight>")
        v, w = _ints(tokens, 2, lineno, "'<node_id> <weight>'")
        if not 0 <= v < n or v in seen_ids:
            raise FormatError(f"bad or repeated node id {v}", lineno)
        if w == 0:
            raise FormatError(f"node {v} has weight 0", lineno)
        seen_ids.add(v)
        weights[v] = w
    if sum(1 for w in weights if w > 0) != n_sup:
        raise FormatError(f"supply count does not match header ({n_sup})", lineno)
    lineno, tokens = take("edges")
    if not tokens or tokens[0] != "edges":
        raise FormatError("expected 'edges <edge_count>'", lineno)
    (m,) = _ints(tokens[1:], 1, lineno, "'edges <edge_count>'")
    if m < 0:
        raise FormatError("negative edge count", lineno)
    if kind == TREE and m != n - 1:
        raise FormatError(f"tree must have {n - 1} edges, header says {m}", lineno)
    adj: list[set[int]] = [set() for _ in range(n)]
    for _ in range(m):
        lineno, tokens = take("<u> <v>")
        u, v = _ints(tokens, 2, lineno, "'<u> <v>'")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge endpoint out of range: {u} {v}", lineno)
        if u == v:
            raise FormatError(f"self-loop at node {u}", lineno)
        if v in adj[u]:
            raise FormatError(f"duplicate edge {u} {v}", lineno)
        adj[u].add(v)
        adj[v].add(u)
    optimum = None
    if pos < len(lines):
        lineno, tokens = take("optimum")
        if not tokens or tokens[0] != "optimum":
            raise FormatError("unexpected content, expected 'optimum <value>'", lineno)
        (optimum,) = _ints(tokens[1:], 1, lineno, "'optimum <value>'")
    if pos < len(lines):
        raise FormatError("trailing content", lines[pos][0])
    try:
        return Instance(tuple(weights), tuple(tuple(sorted(a)) for a in adj), kind, optimum)
    except InstanceError as exc:
        raise FormatError(str(exc), lineno) from None


def write_solution(partition: Partition) -> str:
    lines = ["SOLUTION 1"] + [f"{v} {i}" for v, i in enumerate(partition.assignment)]
    return "\n".join(lines) + "\n"


def read_solution(data: str | bytes, instance: Instance) -> Partition:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = list(_content_lines(data))
    if not lines or lines[0][1] != ["SOLUTION", "1"]:
        raise FormatError("bad header, expected 'SOLUTION 1'", lines[0][0] if lines else 0)
    k = len(instance.supply_nodes)
    assignment: list[Optional[int]] = [None] * instance.n_nodes
    for lineno, tokens in lines[1:]:
        v, i = _ints(tokens, 2, lineno, "'<node_id> <subgraph_index|-1>'")
        if not 0 <= v < instance.n_nodes or assignment[v] is not None:
            raise FormatError(f"bad or repeated node id {v}", lineno)
        if i != NON_LOCATED and not 0 <= i < k:
            raise FormatError(f"subgraph index {i} out of range", lineno)
        assignment[v] = i
    missing = [v for v, i in enumerate(assignment) if i is None]
    if missing:
        raise FormatError(f"no assignment for node {missing[0]}")
    return Partition.from_assignment(instance, assignment)
