import itertools

import pytest
from hypothesis import given, settings

from conftest import D1, D2, S1, small_instances
from mpgsd.generator import GenSpec, generate
from mpgsd.graph import NON_LOCATED, Instance, Partition, check_feasible, covered_demand
from mpgsd.oracle import OracleRefused, solve_exact


def brute_force(inst):
    """Try every assignment of demand nodes to subgraphs or NON_LOCATED."""
    k = len(inst.supply_nodes)
    best = 0
    for choice in itertools.product(range(-1, k), repeat=len(inst.demand_nodes)):
        a = [NON_LOCATED] * inst.n_nodes
        for i, s in enumerate(inst.supply_nodes):
            a[s] = i
        for v, i in zip(inst.demand_nodes, choice):
            a[v] = i
        p = Partition.from_assignment(inst, a)
        if check_feasible(inst, p) is None:
            best = max(best, covered_demand(inst, p))
    return best


def test_t1(t1):
    r = solve_exact(t1)
    assert r.optimum == 5
    assert r.witness.members(0) == [S1, D1, D2]


def test_single_supply_without_edges():
    assert solve_exact(Instance.from_edges([7], [])).optimum == 0


def test_refuses_large_instances():
    inst = generate(GenSpec(2, 20, "tree", 0))
    with pytest.raises(OracleRefused):
        solve_exact(inst)


@settings(max_examples=40, deadline=None)
@given(small_instances)
def test_matches_brute_force_and_bounds(inst):
    r = solve_exact(inst)
    assert check_feasible(inst, r.witness) is None
    assert covered_demand(inst, r.witness) == r.optimum
    assert r.optimum <= min(inst.total_supply(), inst.total_demand())
    if inst.optimum is not None:
        assert r.optimum == inst.optimum
    if len(inst.demand_nodes) <= 7 and len(inst.supply_nodes) <= 3:
        assert r.optimum == brute_force(inst)
