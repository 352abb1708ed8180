import random

import pytest
from hypothesis import given, settings

from conftest import any_instances, small_instances
from mpgsd.corrections import (CorrectionKind, CorrectionLimits, CorrectionRecord, Corrector, Move,
                               detect_cycle, exchange_set, run_combined)
from mpgsd.graph import NON_LOCATED, Instance, check_feasible
from mpgsd.greedy import run_greedy
from mpgsd.heuristics import ALL_CONFIGS
from mpgsd.oracle import solve_exact
from mpgsd.state import SolverState

N = NON_LOCATED


def state_with(inst, *moves):
    st = SolverState(inst)
    for i, v in moves:
        st.add_node(i, v)
    return st


def rec(kind, *moves):
    return CorrectionRecord(kind, tuple(Move(*m) for m in moves))


# s:+5, a:-2, u:-4; edges s-a, s-u
def exchange_instance(du=4):
    return Instance.from_edges([5, -2, -du], [(0, 1), (0, 2)])


def test_exchange_set_example():
    st = state_with(exchange_instance(), (0, 1))
    assert st.available == [3]
    assert exchange_set(st, 2, 0) == {1}


def test_exchange_set_strict():
    st = state_with(exchange_instance(du=2), (0, 1))
    assert exchange_set(st, 2, 0) == set()
    assert exchange_set(st, 2, 0, equal=True) == {1}


def test_exchange_set_skips_inner_nodes():
    # s:+4 - a:-1 - b:-1, u:-2 adjacent to s; a (ch=1) and b both fit the demand test
    inst = Instance.from_edges([4, -1, -1, -2], [(0, 1), (1, 2), (0, 3)])
    st = state_with(inst, (0, 1), (0, 2))
    assert st.ch[1] == 1 and st.ch[2] == 0
    assert exchange_set(st, 3, 0) == {2}


def test_exchange_keeps_u_attached():
    # u:-4 touches S only through a, so a cannot make room for it
    inst = Instance.from_edges([5, -2, -4], [(0, 1), (1, 2)])
    st = state_with(inst, (0, 1))
    assert exchange_set(st, 2, 0) == set()


def test_non_located_noop_when_everything_located(t1):
    st = run_greedy(t1).state
    c = Corrector(st)
    assert not c.non_located()
    assert c.applied == 0


def test_non_located_exchanges_smaller_leaf():
    st = state_with(exchange_instance(), (0, 1))
    c = Corrector(st, check=True)
    assert c.non_located()
    assert st.assignment == [0, N, 0]
    assert st.covered == 4
    assert c.history[-1].moved_nodes == [(2, N), (1, 0)]


def test_non_located_prefers_direct_addition():
    inst = Instance.from_edges([9, -2, -4], [(0, 1), (0, 2)])
    st = state_with(inst, (0, 1))
    Corrector(st).non_located()
    assert st.assignment == [0, 0, 0]


def test_chain_of_two_exchanges():
    # u:-5 - s1:+5 - a:-3 - s2:+3 - c:-2; greedy-like start S1={s1,a}, S2={s2,c}
    inst = Instance.from_edges([-5, 5, -3, 3, -2], [(0, 1), (1, 2), (2, 3), (3, 4)])
    st = state_with(inst, (0, 2), (1, 4))
    assert st.covered == 5
    c = Corrector(st, check=True)
    assert c.non_located()
    assert st.covered == 8 == solve_exact(inst).optimum
    assert [r.primary for r in c.history] == [0, 2]


def test_switch_swaps_equal_demand():
    # s:+3 - v:-3, s - u:-3; u shares v's demand
    inst = Instance.from_edges([3, -3, -3], [(0, 1), (0, 2)])
    st = state_with(inst, (0, 1))
    c = Corrector(st, check=True)
    assert c.switch()
    assert st.covered == 3
    # the inverse swap ran in the same call, completed a 2-cycle and barred node 2
    assert c.cycles == 1 and c.barred == 2
    assert st.assignment == [0, 0, N]
    assert not c.switch()


def test_switch_without_equal_demand():
    st = state_with(exchange_instance(), (0, 1))
    assert not Corrector(st).switch()


def test_cutoff_skips_exhausted_subgraph(t1):
    st = run_greedy(t1).state
    assert st.available == [0]
    assert not Corrector(st).cutoff()


def test_cutoff_rescues_trapped_subgraph():
    # s1:+2 - x:-2 - s2:+9, x - y:-7 ; x sits in S1, which blocks s2 from y
    inst = Instance.from_edges([2, -2, 9, -7], [(0, 1), (1, 2), (1, 3)])
    st = state_with(inst, (0, 1))
    assert st.available == [0, 9]
    c = Corrector(st, check=True)
    assert c.cutoff()
    assert st.assignment[1] == 1
    summary = c.run_combined()
    assert st.covered == 9 == solve_exact(inst).optimum
    assert summary.final_covered >= summary.initial_covered


def test_cutoff_needs_leaves():
    # the only foreign neighbor of s2 is an inner node of S1
    inst = Instance.from_edges([10, -1, -1, 9], [(0, 1), (1, 2), (1, 3)])
    st = state_with(inst, (0, 1), (0, 2))
    assert st.ch[1] == 1
    st2_before = list(st.assignment)
    assert not Corrector(st).cutoff()
    assert st.assignment == st2_before


def test_detect_cycle_examples():
    nl, sw = CorrectionKind.NON_LOCATED, CorrectionKind.SWITCH
    assert detect_cycle([], 6) is None
    a = rec(sw, (1, N, 0), (2, 0, N))
    b = rec(sw, (2, N, 0), (1, 0, N))
    assert detect_cycle([a, b], 6) == 2
    assert detect_cycle([a], 6) is None
    rot = [rec(nl, (1, 0, 1)), rec(nl, (1, 1, 2)), rec(nl, (1, 2, 0))]
    assert detect_cycle(rot, 6) == 3
    assert detect_cycle(rot, 2) is None


def test_record_needs_moves():
    with pytest.raises(ValueError):
        CorrectionRecord(CorrectionKind.CUTOFF, ())
    with pytest.raises(ValueError):
        CorrectionLimits(0, 5)


def test_combined_noop_on_t1(t1):
    st = run_greedy(t1).state
    summary = run_combined(st)
    assert summary.applied == 0 and summary.final_covered == 5


@settings(max_examples=40, deadline=None)
@given(any_instances)
def test_combined_feasible_monotone_bounded(inst):
    limits = CorrectionLimits(6, 5)
    for config in random.Random(inst.n_nodes).sample(ALL_CONFIGS, 4):
        st = run_greedy(inst, config).state
        before = st.covered
        c = Corrector(st, limits, check=True)
        summary = c.run_combined()
        assert summary.final_covered >= before
        assert summary.applied <= limits.stagnation_window * inst.n_nodes
        assert check_feasible(inst, st.partition()) is None
        assert st.diff(st.recompute_reference()) == []


@settings(max_examples=30, deadline=None)
@given(small_instances)
def test_corrections_below_oracle(inst):
    best = solve_exact(inst).optimum
    for config in ALL_CONFIGS:
        st = run_greedy(inst, config).state
        run_combined(st)
        assert st.covered <= best
