import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamilton_toughness.errors import InputError, ResourceLimitError
from hamilton_toughness.families import (
    complete,
    complete_bipartite,
    complete_minus_perfect_matching,
    counterexample_graph,
    cycle,
    path,
    petersen,
    star,
)
from hamilton_toughness.graph import Graph, components_after_removal
from hamilton_toughness.harness import enumerate_labeled_graphs
from hamilton_toughness.toughness import (
    Toughness,
    find_tough_violation,
    is_t_tough,
    min_degree_bound_check,
    toughness,
)
from tests.strategies import graphs


@pytest.mark.parametrize(
    ("g", "expected"),
    [
        (cycle(5), Fraction(1)),
        (cycle(6), Fraction(1)),
        (complete_bipartite(3, 3), Fraction(1)),
        (complete_bipartite(2, 3), Fraction(2, 3)),
        (star(4), Fraction(1, 3)),
        (path(3), Fraction(1, 2)),
        (petersen(), Fraction(4, 3)),
        (complete_minus_perfect_matching(6), Fraction(2)),
        (complete_minus_perfect_matching(10), Fraction(4)),
        (complete_minus_perfect_matching(12), Fraction(5)),
    ],
)
def test_known_values(g: Graph, expected: Fraction) -> None:
    tau = toughness(g)
    assert tau.value == expected
    assert tau.witness.ratio == expected
    assert components_after_removal(g, tau.witness.cutset) == tau.witness.component_count


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_complete_graphs_are_infinitely_tough(n: int) -> None:
    tau = toughness(complete(n))
    assert tau.is_infinite
    assert str(tau) == "inf"
    assert tau.at_least(100)


def test_empty_graph_on_zero_vertices_is_complete() -> None:
    assert toughness(Graph.empty(0)).is_infinite


def test_disconnected_graph_has_zero_toughness() -> None:
    tau = toughness(Graph.empty(3))
    assert tau.value == 0
    assert tau.witness.cutset == ()
    assert tau.witness.component_count == 3


@pytest.mark.parametrize("n", range(7, 13))
def test_counterexample_is_one_tough(n: int) -> None:
    tau = toughness(counterexample_graph(n).graph)
    assert tau.value == 1
    assert str(tau) == "1/1"


def test_witness_is_lexicographically_least() -> None:
    assert toughness(cycle(6)).witness.cutset == (0, 2)
    assert toughness(cycle(6), pruned=False).witness.cutset == (0, 2)


@pytest.mark.parametrize("n", range(6))
def test_pruned_matches_definition_exhaustive(n: int) -> None:
    for g in enumerate_labeled_graphs(n):
        assert toughness(g) == toughness(g, pruned=False)


@pytest.mark.slow
def test_pruned_matches_definition_seven() -> None:
    for g in enumerate_labeled_graphs(7):
        assert toughness(g) == toughness(g, pruned=False)


@given(graphs(max_n=8))
def test_pruned_matches_definition(g: Graph) -> None:
    assert toughness(g) == toughness(g, pruned=False)


T_VALUES = st.sampled_from(["1/2", "1", "3/2", "2", "4/3", "3"])


@given(graphs(max_n=8), T_VALUES)
def test_decision_matches_exact_value(g: Graph, t: str) -> None:
    assert is_t_tough(g, t) == toughness(g).at_least(t)


@given(graphs(max_n=8), T_VALUES)
def test_violation_witness_is_genuine(g: Graph, t: str) -> None:
    witness = find_tough_violation(g, t)
    if witness is not None:
        count = components_after_removal(g, witness.cutset)
        assert count == witness.component_count
        assert count >= 2
        assert len(witness.cutset) < Fraction(t) * count


def test_zero_tough_always_holds() -> None:
    assert is_t_tough(Graph.empty(4), 0)


def test_negative_t_rejected() -> None:
    with pytest.raises(InputError):
        is_t_tough(cycle(5), -1)


def test_size_cap() -> None:
    with pytest.raises(ResourceLimitError, match="too large"):
        toughness(cycle(30))
    with pytest.raises(ResourceLimitError):
        is_t_tough(cycle(30), 1)


def test_size_cap_skips_complete_graphs() -> None:
    assert toughness(complete(40)).is_infinite


def test_json_serialization() -> None:
    assert json.loads(toughness(petersen()).model_dump_json())["value"] == "4/3"
    assert json.loads(toughness(complete(4)).model_dump_json())["value"] == "inf"


def test_parses_serialized_values() -> None:
    assert Toughness(value="3/2").value == Fraction(3, 2)
    assert Toughness(value="inf").is_infinite


def test_min_degree_bound() -> None:
    assert min_degree_bound_check(cycle(5), 1)
    assert min_degree_bound_check(complete_minus_perfect_matching(10), 4)
    assert not min_degree_bound_check(path(4), 1)
    with pytest.raises(InputError):
        min_degree_bound_check(complete(4), 1)


@given(graphs(min_n=2, max_n=8), st.integers(min_value=1, max_value=3))
def test_min_degree_bound_holds_for_tough_graphs(g: Graph, t: int) -> None:
    if not g.is_complete() and is_t_tough(g, t):
        assert min_degree_bound_check(g, t)
