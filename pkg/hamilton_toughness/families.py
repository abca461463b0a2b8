"""Deterministic graph generators.

The counterexample family maps v_i to vertex id i - 1, so x = v_1 is 0 and y = v_n is n - 1.
"""

__all__ = [
    "FamilyId",
    "LabeledFamily",
    "build_family",
    "complete",
    "complete_bipartite",
    "complete_minus_perfect_matching",
    "counterexample_graph",
    "cycle",
    "path",
    "petersen",
    "star",
]

from enum import Enum

from pydantic import Field, model_validator

from hamilton_toughness.errors import InputError
from hamilton_toughness.graph import Graph
from hamilton_toughness.utils import BaseModel

try:
    from typing import Self  # Python >= 3.11
except ImportError:
    from typing_extensions import Self  # Python < 3.11

COUNTEREXAMPLE_MIN_N = 7


class FamilyId(str, Enum):
    COUNTEREXAMPLE = "counterexample"
    CYCLE = "cycle"
    PATH = "path"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    COMPLETE_MINUS_PERFECT_MATCHING = "complete_minus_perfect_matching"
    STAR = "star"
    PETERSEN = "petersen"


class LabeledFamily(BaseModel, frozen=True, arbitrary_types_allowed=True):
    family: FamilyId
    parameters: dict[str, int] = Field(default_factory=dict)
    graph: Graph
    labels: dict[str, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_labels(self) -> Self:
        for name, vertex in self.labels.items():
            if not 0 <= vertex < self.graph.n:
                raise ValueError(f"Label '{name}' points at missing vertex {vertex}")
        return self


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InputError(message)


def counterexample_graph(n: int) -> LabeledFamily:
    """A non-Hamiltonian 1-tough graph with nonadjacent x, y of degree sum n - 1 whose
    addition of xy makes it Hamiltonian.

    Edges: the path v_1 ... v_n, the chord x v_{n-2}, and y v_i for i in [2, n-2] except n-3.
    """
    _require(n >= COUNTEREXAMPLE_MIN_N, f"The counterexample family needs n >= 7, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)]
    edges.append((0, n - 3))
    edges.extend((i - 1, n - 1) for i in range(2, n - 1) if i != n - 3)
    return LabeledFamily(
        family=FamilyId.COUNTEREXAMPLE,
        parameters={"n": n},
        graph=Graph.from_edges(n, edges),
        labels={"x": 0, "y": n - 1, "v_n-3": n - 4},
    )


def cycle(n: int) -> Graph:
    _require(n >= 3, f"A cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    _require(n >= 1, f"A path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    _require(n >= 1, f"A complete graph needs n >= 1, got {n}")
    full = (1 << n) - 1
    return Graph.unchecked(tuple(full & ~(1 << v) for v in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts {0..a-1} and {a..a+b-1}."""
    _require(a >= 1 and b >= 1, f"Both parts must be non-empty, got a={a}, b={b}")
    return Graph.from_edges(a + b, [(u, v) for u in range(a) for v in range(a, a + b)])


def complete_minus_perfect_matching(n: int) -> Graph:
    """K_n without the edges (0,1), (2,3), ..."""
    _require(n >= 2 and n % 2 == 0, f"A perfect matching needs an even n >= 2, got {n}")
    g = complete(n)
    for v in range(0, n, 2):
        g = g.remove_edge(v, v + 1)
    return g


def star(n: int) -> Graph:
    """K_{1,n-1} centred on vertex 0."""
    _require(n >= 2, f"A star needs n >= 2, got {n}")
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def build_family(
    family: FamilyId, n: int | None = None, a: int | None = None, b: int | None = None
) -> LabeledFamily:
    """Build any family by id. complete_bipartite takes a and b, defaulting to a balanced split
    of n.
    """
    if family is FamilyId.COUNTEREXAMPLE:
        _require(n is not None, "--n is required for the counterexample family")
        return counterexample_graph(n)
    if family is FamilyId.PETERSEN:
        return LabeledFamily(family=family, parameters={"n": 10}, graph=petersen())
    if family is FamilyId.COMPLETE_BIPARTITE:
        if a is None or b is None:
            _require(n is not None, "complete_bipartite needs --a and --b, or --n")
            a, b = n // 2, n - n // 2
        return LabeledFamily(
            family=family, parameters={"a": a, "b": b}, graph=complete_bipartite(a, b)
        )
    _require(n is not None, f"--n is required for the {family.value} family")
    generators = {
        FamilyId.CYCLE: cycle,
        FamilyId.PATH: path,
        FamilyId.COMPLETE: complete,
        FamilyId.COMPLETE_MINUS_PERFECT_MATCHING: complete_minus_perfect_matching,
        FamilyId.STAR: star,
    }
    labels = {"center": 0} if family is FamilyId.STAR else {}
    return LabeledFamily(
        family=family, parameters={"n": n}, graph=generators[family](n), labels=labels
    )
