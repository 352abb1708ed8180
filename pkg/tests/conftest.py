import random

import pytest
from hypothesis import strategies as st

from mpgsd.generator import GenSpec, generate, random_connected_graph, random_tree
from mpgsd.graph import Instance

# filled by the acceptance tests and echoed after the run, since pytest captures their output
CRITERIA_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, lines in sorted(CRITERIA_LINES, key=lambda x: x[0]):
        for line in lines:
            terminalreporter.write_line(line)

# s1:+5, d1:-3, d2:-2, d3:-4; edges s1-d1, s1-d2, d1-d3
S1, D1, D2, D3 = 0, 1, 2, 3


def make_t1(kind="general"):
    return Instance.from_edges([5, -3, -2, -4], [(S1, D1), (S1, D2), (D1, D3)], kind, optimum=5)


@pytest.fixture
def t1():
    return make_t1()


def arbitrary_instance(seed, n_max=14):
    """Random connected graph with random signed weights, not built around a known optimum."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    tree = rng.random() < 0.4
    if tree:
        edges = random_tree(n, rng)
    else:
        extra = rng.randint(0, n)
        edges = random_connected_graph(n, min(n - 1 + extra, n * (n - 1) // 2), rng)
    n_sup = rng.randint(1, max(1, n // 3))
    weights = [-rng.randint(1, 12) for _ in range(n)]
    for v in rng.sample(range(n), n_sup):
        weights[v] = rng.randint(1, 30)
    return Instance.from_edges(weights, edges, "tree" if tree else "general")


def generated_instance(seed, max_supply=5, max_demand=40):
    rng = random.Random(seed)
    ns = rng.randint(1, max_supply)
    nd = rng.randint(max(ns, 5 - ns), max(ns, 5 - ns, max_demand))
    kind = rng.choice(["general", "tree"])
    return generate(GenSpec(ns, nd, kind, seed))


def small_generated_instance(seed):
    rng = random.Random(seed)
    ns = rng.randint(1, 4)
    return generated_instance(seed, ns, 16 - ns)


seeds = st.integers(min_value=0, max_value=2**32)
arbitrary_instances = seeds.map(arbitrary_instance)
generated_instances = seeds.map(generated_instance)
any_instances = st.one_of(arbitrary_instances, generated_instances)
small_instances = st.one_of(arbitrary_instances, seeds.map(small_generated_instance))
