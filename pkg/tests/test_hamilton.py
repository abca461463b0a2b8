from itertools import permutations
from random import Random

import pytest
from hypothesis import given

from hamilton_toughness.errors import InputError, UndecidedError
from hamilton_toughness.families import (
    complete,
    complete_bipartite,
    counterexample_graph,
    cycle,
    path,
    petersen,
    star,
)
from hamilton_toughness.graph import Graph
from hamilton_toughness.hamilton import (
    CycleCertificate,
    Engine,
    check_certificate,
    hamiltonian_cycle,
    hamiltonian_path,
    has_hamiltonian_path,
    is_hamiltonian,
)
from hamilton_toughness.harness import enumerate_labeled_graphs
from hamilton_toughness.toughness import is_t_tough
from tests.strategies import graphs, random_graph

ENGINES = [Engine.DP, Engine.BACKTRACK]


def brute_force_hamiltonian(g: Graph) -> bool:
    if g.n < 3:
        return False
    for rest in permutations(range(1, g.n)):
        order = (0, *rest)
        if all(g.has_edge(order[i - 1], order[i]) for i in range(g.n)):
            return True
    return False


def is_spanning_path(g: Graph, order: tuple[int, ...]) -> bool:
    return sorted(order) == list(range(g.n)) and all(
        g.has_edge(order[i], order[i + 1]) for i in range(len(order) - 1)
    )


@pytest.mark.parametrize("engine", ENGINES)
@pytest.mark.parametrize(
    ("g", "expected"),
    [
        (complete(3), True),
        (cycle(5), True),
        (complete(6), True),
        (complete_bipartite(3, 3), True),
        (complete_bipartite(2, 3), False),
        (star(5), False),
        (path(4), False),
        (petersen(), False),
        (Graph.empty(0), False),
        (complete(1), False),
        (complete(2), False),
    ],
)
def test_known_graphs(g: Graph, expected: bool, engine: Engine) -> None:
    cycle_found = hamiltonian_cycle(g, engine=engine)
    assert (cycle_found is not None) == expected
    if cycle_found is not None:
        assert check_certificate(g, cycle_found)
        assert cycle_found.order[0] == 0


@pytest.mark.parametrize("engine", ENGINES)
@pytest.mark.parametrize("n", range(7, 15))
def test_counterexample_family(n: int, engine: Engine) -> None:
    family = counterexample_graph(n)
    x, y = family.labels["x"], family.labels["y"]
    assert not is_hamiltonian(family.graph, engine=engine)
    assert is_hamiltonian(family.graph.add_edge(x, y), engine=engine)


def test_counterexample_without_special_vertex() -> None:
    family = counterexample_graph(9)
    assert is_hamiltonian(family.graph.remove_vertices([family.labels["v_n-3"]]))


def test_auto_engine_switches_on_size() -> None:
    g = cycle(8)
    assert is_hamiltonian(g, dp_max_n=4)
    assert is_hamiltonian(g, dp_max_n=20)


def test_certificates_are_deterministic() -> None:
    assert hamiltonian_cycle(complete(4), engine=Engine.BACKTRACK).order == (0, 1, 2, 3)
    assert hamiltonian_cycle(complete(4), engine=Engine.DP).order == (0, 3, 2, 1)
    assert hamiltonian_cycle(complete(5), engine=Engine.DP) == hamiltonian_cycle(
        complete(5), engine=Engine.DP
    )


@pytest.mark.parametrize("engine", ENGINES)
def test_work_budget_exhaustion(engine: Engine) -> None:
    with pytest.raises(UndecidedError):
        hamiltonian_cycle(petersen(), engine=engine, work_budget=1)


@pytest.mark.parametrize("n", range(7))
def test_engines_agree_exhaustive(n: int) -> None:
    for g in enumerate_labeled_graphs(n):
        assert is_hamiltonian(g, engine=Engine.DP) == is_hamiltonian(g, engine=Engine.BACKTRACK)


@pytest.mark.slow
def test_engines_agree_exhaustive_seven() -> None:
    for g in enumerate_labeled_graphs(7):
        assert is_hamiltonian(g, engine=Engine.DP) == is_hamiltonian(g, engine=Engine.BACKTRACK)


@given(graphs(max_n=9))
def test_engines_agree(g: Graph) -> None:
    assert is_hamiltonian(g, engine=Engine.DP) == is_hamiltonian(g, engine=Engine.BACKTRACK)


@given(graphs(min_n=8, max_n=12, density=0.6))
def test_engines_agree_on_denser_graphs(g: Graph) -> None:
    assert is_hamiltonian(g, engine=Engine.DP) == is_hamiltonian(g, engine=Engine.BACKTRACK)


@given(graphs(max_n=7))
def test_matches_brute_force(g: Graph) -> None:
    assert is_hamiltonian(g) == brute_force_hamiltonian(g)


@given(graphs(max_n=9))
def test_certificates_verify(g: Graph) -> None:
    for engine in ENGINES:
        found = hamiltonian_cycle(g, engine=engine)
        if found is not None:
            assert check_certificate(g, found)


def test_check_certificate_rejects_bad_orders() -> None:
    g = cycle(5)
    assert not check_certificate(g, CycleCertificate(order=(0, 1, 2, 3)))
    assert not check_certificate(g, CycleCertificate(order=(0, 2, 1, 3, 4)))
    assert not check_certificate(g, CycleCertificate(order=(0, 1, 1, 3, 4)))
    assert check_certificate(g, CycleCertificate(order=(0, 4, 3, 2, 1)))


def test_labeled_hamiltonian_graphs_on_four_vertices() -> None:
    assert sum(is_hamiltonian(g) for g in enumerate_labeled_graphs(4)) == 10


@pytest.mark.parametrize("engine", ENGINES)
def test_path_on_path_graph(engine: Engine) -> None:
    g = path(5)
    found = hamiltonian_path(g, engine=engine)
    assert found is not None
    assert is_spanning_path(g, found)
    assert hamiltonian_path(g, start=2, engine=engine) is None
    assert hamiltonian_path(g, start=0, end=4, engine=engine) == (0, 1, 2, 3, 4)


@pytest.mark.parametrize("engine", ENGINES)
def test_path_with_only_end(engine: Engine) -> None:
    found = hamiltonian_path(path(4), end=0, engine=engine)
    assert found == (3, 2, 1, 0)


@pytest.mark.parametrize("engine", ENGINES)
def test_path_endpoints_on_cycle(engine: Engine) -> None:
    assert has_hamiltonian_path(cycle(5), start=0, end=1, engine=engine)
    assert not has_hamiltonian_path(star(4), engine=engine)
    assert has_hamiltonian_path(complete(1), engine=engine)
    assert not has_hamiltonian_path(Graph.empty(0), engine=engine)


def test_path_rejects_equal_endpoints() -> None:
    with pytest.raises(InputError):
        hamiltonian_path(cycle(5), start=1, end=1)


def test_path_rejects_unknown_vertex() -> None:
    with pytest.raises(InputError):
        hamiltonian_path(cycle(5), start=9)


@given(graphs(max_n=8))
def test_path_engines_agree(g: Graph) -> None:
    dp = hamiltonian_path(g, engine=Engine.DP)
    backtrack = hamiltonian_path(g, engine=Engine.BACKTRACK)
    assert (dp is None) == (backtrack is None)
    for found in (dp, backtrack):
        if found is not None:
            assert is_spanning_path(g, found)


@given(graphs(min_n=3, max_n=8))
def test_cycle_implies_path(g: Graph) -> None:
    if is_hamiltonian(g):
        assert has_hamiltonian_path(g)


@given(graphs(max_n=8))
def test_adding_edges_keeps_hamiltonicity(g: Graph) -> None:
    if is_hamiltonian(g):
        for u, v in g.non_edges():
            assert is_hamiltonian(g.add_edge(u, v))


@given(graphs(max_n=8))
def test_hamiltonian_graphs_are_one_tough(g: Graph) -> None:
    if is_hamiltonian(g):
        assert is_t_tough(g, 1)


@pytest.mark.slow
def test_engines_agree_on_large_sample() -> None:
    rng = Random(20240607)
    for _ in range(100_000):
        g = random_graph(rng, rng.randint(3, 9), rng.uniform(0.2, 0.8))
        assert is_hamiltonian(g, engine=Engine.DP) == is_hamiltonian(g, engine=Engine.BACKTRACK)
