"""Random instances with a known optimum.

Every node starts as a demand node with weight drawn from ``[-hi, -lo]``.
``n`` seed nodes grow disjoint connected regions until a fraction of the
graph is claimed; in each region one random member is turned into a supply
node whose supply equals the demand of the rest of the region. The regions
then form a feasible partition covering exactly the total supply, which is
therefore optimal.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .graph import GENERAL, KINDS, TREE, Instance, Partition


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    n_supply: int
    n_demand: int
    kind: str = GENERAL
    seed: int = 0
    demand_lo: int = 10
    demand_hi: int = 40
    growth_fraction: Fraction = Fraction(95, 100)
    edge_factor: Fraction = Fraction(2)
    max_attempts: int = 1000

    def __post_init__(self):
        if self.n_supply < 1 or self.n_demand < 1:
            raise ValueError("need at least one supply and one demand node")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not 1 <= self.demand_lo <= self.demand_hi:
            raise ValueError("need 1 <= demand_lo <= demand_hi")
        object.__setattr__(self, "growth_fraction", Fraction(self.growth_fraction))
        object.__setattr__(self, "edge_factor", Fraction(self.edge_factor))
        if not 0 < self.growth_fraction <= 1:
            raise ValueError("growth_fraction must be in (0, 1]")
        if self.edge_factor < 0:
            raise ValueError("edge_factor must be non-negative")

    @property
    def n_nodes(self) -> int:
        return self.n_supply + self.n_demand

    @property
    def n_edges(self) -> int:
        n = self.n_nodes
        if self.kind == TREE:
            return n - 1
        return max(n - 1, math.floor(n * self.edge_factor))

    @property
    def label(self) -> str:
        return f"{self.n_supply}x{self.n_demand}"


def random_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniformly random labelled tree on ``n`` nodes (Pruefer decoding)."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return edges


def random_connected_graph(n: int, n_edges: int, rng: random.Random) -> list[tuple[int, int]]:
    """Random spanning tree plus distinct random extra edges, ``n_edges`` total."""
    if n_edges > n * (n - 1) // 2:
        raise GenerationError(f"{n_edges} edges do not fit a simple graph on {n} nodes")
    edges = random_tree(n, rng)
    present = set(edges)
    while len(edges) < n_edges:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        e = (u, v) if u < v else (v, u)
        if e not in present:
            present.add(e)
            edges.append(e)
    return edges


def _grow_regions(n: int, adj, n_regions: int, target: int, rng: random.Random):
    """Grow ``n_regions`` disjoint connected regions; None if growth stalls.

    Each region starts from a random seed node together with one random
    unclaimed neighbor, so no region is left as a bare seed. Growth then
    repeatedly picks a uniformly random boundary edge (region member,
    unclaimed node) and hands that node to the region.
    """
    owner = [-1] * n
    regions: list[list[int]] = []
    order = list(range(n))
    rng.shuffle(order)
    for v in order:
        if len(regions) == n_regions:
            break
        if owner[v] >= 0:
            continue
        free = [u for u in adj[v] if owner[u] < 0]
        if not free:
            continue
        u = rng.choice(free)
        owner[v] = owner[u] = len(regions)
        regions.append([v, u])
    if len(regions) < n_regions:
        return None
    boundary = [(r, u) for r, reg in enumerate(regions) for x in reg for u in adj[x] if owner[u] < 0]
    claimed = 2 * n_regions
    while claimed < target:
        if not boundary:
            return None
        idx = rng.randrange(len(boundary))
        r, node = boundary[idx]
        boundary[idx] = boundary[-1]
        boundary.pop()
        if owner[node] >= 0:
            continue
        owner[node] = r
        regions[r].append(node)
        claimed += 1
        boundary.extend((r, u) for u in adj[node] if owner[u] < 0)
    return regions


def _attempt(spec: GenSpec, rng: random.Random):
    n = spec.n_nodes
    weights = [-rng.randint(spec.demand_lo, spec.demand_hi) for _ in range(n)]
    if spec.kind == TREE:
        edges = random_tree(n, rng)
    else:
        edges = random_connected_graph(n, spec.n_edges, rng)
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()
    target = max(2 * spec.n_supply, math.ceil(n * spec.growth_fraction))
    regions = _grow_regions(n, adj, spec.n_supply, target, rng)
    if regions is None:
        return None
    for region in regions:
        v = rng.choice(region)
        w = -sum(weights[a] for a in region if a != v)
        if w <= 0:
            return None
        weights[v] = w
    optimum = sum(w for w in weights if w > 0)
    inst = Instance(tuple(weights), tuple(tuple(a) for a in adj), spec.kind, optimum)
    return inst, regions


def generate_with_witness(spec: GenSpec) -> tuple[Instance, Partition]:
    """Generate an instance and the partition that certifies its optimum."""
    if spec.n_demand < spec.n_supply:
        raise GenerationError("every region needs a demand node: n_demand must be >= n_supply")
    if spec.kind == GENERAL and spec.n_edges > spec.n_nodes * (spec.n_nodes - 1) // 2:
        raise GenerationError(f"{spec.n_edges} edges do not fit a simple graph on {spec.n_nodes} nodes")
    for attempt in range(spec.max_attempts):
        rng = random.Random(f"mpgsd:{spec.seed}:{attempt}")
        result = _attempt(spec, rng)
        if result is not None:
            inst, regions = result
            return inst, Partition.from_subgraphs(inst, regions)
    raise GenerationError(f"no valid instance for {spec} after {spec.max_attempts} attempts")


def generate(spec: GenSpec) -> Instance:
    return generate_with_witness(spec)[0]
