import json
from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamilton_toughness.closure import (
    closure_preserves_condition_check,
    degree_sum_closure,
    t_closure,
)
from hamilton_toughness.errors import InputError
from hamilton_toughness.families import (
    complete,
    complete_minus_perfect_matching,
    counterexample_graph,
    cycle,
)
from hamilton_toughness.graph import Graph
from hamilton_toughness.hamilton import is_hamiltonian
from hamilton_toughness.harness import enumerate_labeled_graphs
from tests.strategies import graphs, random_graph

THRESHOLDS = st.integers(min_value=0, max_value=16)


def test_closes_near_complete_graph() -> None:
    g = complete(5).remove_edge(0, 1)
    closed, trace = degree_sum_closure(g, 5)
    assert closed == complete(5)
    assert [(step.u, step.v, step.degree_sum) for step in trace.added_edges] == [(0, 1, 6)]


def test_cycle_is_already_closed() -> None:
    closed, trace = degree_sum_closure(cycle(5), 5)
    assert closed == cycle(5)
    assert trace.added_edges == []
    assert trace.to_jsonl() == ""


def test_counterexample_trace() -> None:
    g = counterexample_graph(7).graph
    _, trace = t_closure(g, 1)
    assert trace.threshold == 6
    first = trace.added_edges[0]
    assert (first.u, first.v, first.degree_sum) == (0, 6, 6)
    lines = trace.to_jsonl().splitlines()
    assert lines[0] == '{"u":0,"v":6,"sum":6}'
    assert len(lines) == len(trace.added_edges)
    assert all(json.loads(line)["sum"] >= 6 for line in lines)


def test_threshold_beyond_reach_returns_input() -> None:
    g = cycle(6)
    closed, trace = degree_sum_closure(g, 9)
    assert closed is g
    assert trace.added_edges == []


def test_tiny_graphs_are_unchanged() -> None:
    assert degree_sum_closure(Graph.empty(0), 0)[0] == Graph.empty(0)
    assert degree_sum_closure(Graph.empty(1), 0)[0] == Graph.empty(1)


def test_threshold_zero_completes_graph() -> None:
    assert degree_sum_closure(Graph.empty(4), 0)[0] == complete(4)


def test_negative_threshold_rejected() -> None:
    with pytest.raises(InputError):
        degree_sum_closure(cycle(5), -1)
    with pytest.raises(InputError):
        t_closure(cycle(5), -1)


@given(graphs(), THRESHOLDS)
def test_closure_is_a_fixpoint(g: Graph, threshold: int) -> None:
    closed, trace = degree_sum_closure(g, threshold)
    assert all(closed.has_edge(u, v) for u, v in g.edges())
    assert all(closed.degree(u) + closed.degree(v) < threshold for u, v in closed.non_edges())
    assert closed.edge_count == g.edge_count + len(trace.added_edges)


@given(graphs(), THRESHOLDS, st.integers(min_value=0, max_value=2**16))
def test_closure_ignores_order(g: Graph, threshold: int, seed: int) -> None:
    assert degree_sum_closure(g, threshold, seed=seed)[0] == degree_sum_closure(g, threshold)[0]


@given(graphs(), THRESHOLDS)
def test_closure_is_idempotent(g: Graph, threshold: int) -> None:
    closed, _ = degree_sum_closure(g, threshold)
    again, trace = degree_sum_closure(closed, threshold)
    assert again == closed
    assert trace.added_edges == []


@given(graphs(), THRESHOLDS)
def test_lower_threshold_adds_more(g: Graph, threshold: int) -> None:
    higher, _ = degree_sum_closure(g, threshold + 1)
    lower, _ = degree_sum_closure(g, threshold)
    assert all(lower.has_edge(u, v) for u, v in higher.edges())


def test_trace_records_sums_at_addition_time() -> None:
    g = counterexample_graph(9).graph
    _, trace = t_closure(g, 2, seed=5)
    assert trace.threshold == 7
    assert all(step.degree_sum >= 7 for step in trace.added_edges)


@pytest.mark.parametrize("n", range(6))
def test_closure_preserves_hamiltonicity_exhaustive(n: int) -> None:
    for g in enumerate_labeled_graphs(n):
        closed, _ = t_closure(g, 0)
        assert is_hamiltonian(g) == is_hamiltonian(closed)


def test_closure_preserves_condition_on_known_graphs() -> None:
    assert closure_preserves_condition_check(complete_minus_perfect_matching(10), 4)
    assert closure_preserves_condition_check(complete(4), 4)
    assert closure_preserves_condition_check(counterexample_graph(8).graph, 1)


@given(graphs(max_n=9), st.integers(min_value=1, max_value=4))
def test_closure_preserves_condition(g: Graph, t: int) -> None:
    assert closure_preserves_condition_check(g, t)


def test_closure_preserves_condition_rejects_zero() -> None:
    with pytest.raises(InputError):
        closure_preserves_condition_check(cycle(5), 0)


@pytest.mark.slow
def test_closure_ignores_order_on_large_sample() -> None:
    rng = Random(8)
    for _ in range(1000):
        n = rng.randint(0, 12)
        g = random_graph(rng, n, rng.uniform(0.1, 0.9))
        threshold = rng.randint(0, max(2 * n - 4, 0))
        closed, _ = degree_sum_closure(g, threshold)
        for seed in range(5):
            assert degree_sum_closure(g, threshold, seed=seed)[0] == closed
        assert degree_sum_closure(closed, threshold)[0] == closed
