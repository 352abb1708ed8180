import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpgsd.generator import (GenerationError, GenSpec, generate, generate_with_witness,
                             random_connected_graph, random_tree)
from mpgsd.graph import Instance, check_feasible, covered_demand, write_instance

specs = st.builds(
    GenSpec,
    n_supply=st.integers(1, 6),
    n_demand=st.integers(6, 60),
    kind=st.sampled_from(["general", "tree"]),
    seed=st.integers(0, 2**63),
)


@settings(max_examples=60, deadline=None)
@given(specs)
def test_witness_certifies_optimum(spec):
    inst, witness = generate_with_witness(spec)
    assert check_feasible(inst, witness) is None
    assert covered_demand(inst, witness) == inst.optimum == inst.total_supply()
    assert len(inst.supply_nodes) == spec.n_supply
    assert len(inst.demand_nodes) == spec.n_demand
    assert all(w >= 1 for w in inst.weights if w > 0)
    assert all(-40 <= w <= -10 for w in inst.weights if w < 0)
    assert inst.n_edges == spec.n_edges
    # most of the graph belongs to some region
    located = sum(1 for a in witness.assignment if a >= 0)
    assert located >= 0.95 * inst.n_nodes


@settings(max_examples=20, deadline=None)
@given(specs)
def test_same_seed_same_file(spec):
    assert write_instance(generate(spec)) == write_instance(generate(spec))


def test_single_supply_weight_is_region_demand():
    for seed in range(20):
        inst, witness = generate_with_witness(GenSpec(1, 3, "tree", seed))
        members = witness.members(0)
        assert inst.weights[inst.supply_nodes[0]] == -sum(inst.weights[v] for v in members
                                                        if inst.weights[v] < 0)


def test_small_general_edge_count():
    inst = generate(GenSpec(2, 6, "general", 3))
    assert inst.n_edges == 16


def test_different_seeds_differ():
    assert generate(GenSpec(5, 50, seed=1)) != generate(GenSpec(5, 50, seed=2))


@pytest.mark.parametrize("kwargs", [
    dict(n_supply=0, n_demand=3), dict(n_supply=1, n_demand=3, kind="dag"),
    dict(n_supply=1, n_demand=3, demand_lo=5, demand_hi=4),
    dict(n_supply=1, n_demand=3, growth_fraction=0),
])
def test_invalid_spec(kwargs):
    with pytest.raises(ValueError):
        GenSpec(**kwargs)


def test_unsatisfiable_specs():
    with pytest.raises(GenerationError):
        generate(GenSpec(1, 2, "general"))
    with pytest.raises(GenerationError):
        generate(GenSpec(4, 2, "tree"))


@given(st.integers(1, 60), st.integers(0, 2**32))
def test_random_tree_is_a_tree(n, seed):
    import random
    edges = random_tree(n, random.Random(seed))
    inst = Instance.from_edges([1] * n, edges, "tree")
    assert inst.n_edges == n - 1


@given(st.integers(2, 40), st.integers(0, 2**32))
def test_random_graph_is_connected(n, seed):
    import random
    m = min(2 * n, n * (n - 1) // 2)
    edges = random_connected_graph(n, m, random.Random(seed))
    assert len(set(edges)) == m
    Instance.from_edges([1] * n, edges)
