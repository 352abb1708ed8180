from fractions import Fraction

from conftest import D1, D2
from mpgsd.graph import Instance
from mpgsd.heuristics import (ALL_CONFIGS, LEAST, HeuristicConfig, NodeRule, SubgraphRule,
                              new_candidates, score_node, score_subgraph, select_node,
                              select_subgraph)
from mpgsd.state import SolverState


def star(supply, demands):
    return Instance.from_edges([supply] + [-d for d in demands], [(0, v) for v in range(1, len(demands) + 1)])


def test_subgraph_scores():
    st = SolverState(star(6, [1, 1, 1]))
    assert score_subgraph(st, 0, SubgraphRule.HS1) == 6
    assert score_subgraph(st, 0, SubgraphRule.HS2) == Fraction(1, 3)
    assert score_subgraph(st, 0, SubgraphRule.HS3) == 2


def test_empty_neighbor_set_is_least_desirable():
    st = SolverState(star(1, [5]))
    assert score_subgraph(st, 0, SubgraphRule.HS2) == LEAST
    assert score_subgraph(st, 0, SubgraphRule.HS3) == LEAST
    for rule in SubgraphRule:
        assert select_subgraph(st, rule) is None


def test_hs1_zero_supply_scores_zero():
    # supply exhausted but a zero-demand candidate cannot exist, so use the formula directly
    st = SolverState(star(2, [2, 1]))
    st.add_node(0, 1)
    assert score_subgraph(st, 0, SubgraphRule.HS1) == 0


def test_t1_node_scores(t1):
    st = SolverState(t1)
    assert new_candidates(st, 0, D1) == 0
    assert score_node(st, 0, D1, NodeRule.HN2) == 0
    assert score_node(st, 0, D1, NodeRule.HN3) == 3
    assert score_node(st, 0, D1, NodeRule.HN1) == 3
    assert select_node(st, 0, NodeRule.HN1) == D1
    assert select_node(st, 0, NodeRule.HN4_MIN_DEMAND) == D2


def test_hn2_counts_post_addition_capacity():
    # s:+9 - a:-3 - {b:-6, c:-7}: after a, capacity 6 admits b only
    inst = Instance.from_edges([9, -3, -6, -7], [(0, 1), (1, 2), (1, 3)])
    st = SolverState(inst)
    assert new_candidates(st, 0, 1) == 1
    assert score_node(st, 0, 1, NodeRule.HN3) == 6


def test_hn1_value_and_hn4_prefers_small():
    st = SolverState(star(20, [7, 2, 9]))
    assert score_node(st, 0, 1, NodeRule.HN1) == 7
    assert select_node(st, 0, NodeRule.HN4_MIN_DEMAND) == 2
    assert select_node(st, 0, NodeRule.HN1) == 3


def test_ties_go_to_lowest_index():
    inst = Instance.from_edges([5, -1, 5, -1], [(0, 1), (1, 2), (2, 3)])
    st = SolverState(inst)
    assert select_subgraph(st, SubgraphRule.HS1) == 0
    st2 = SolverState(star(5, [2, 2, 2]))
    assert select_node(st2, 0, NodeRule.HN1) == 1


def test_config_labels():
    assert HeuristicConfig().label == "hs2-hn1"
    assert len(ALL_CONFIGS) == 12
    assert ALL_CONFIGS[0].label == "hs1-hn1" and ALL_CONFIGS[-1].label == "hs3-hn4"
