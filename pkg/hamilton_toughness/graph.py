"""Simple undirected graphs stored as bit rows, plus the degree-sequence objects built on them.

Vertex ids are 0-based internally. Anything indexed like d_1 <= ... <= d_n is
1-based and goes through `DegreeSequence.d` / `DegreeSequence.get`.
"""

__all__ = [
    "DegreeSequence",
    "Graph",
    "UAlpha",
    "components",
    "components_after_removal",
    "count_components",
    "degree_sequence",
    "is_universal_clique",
    "to_mask",
    "u_alpha",
    "universal_clique",
]

import logging
from collections.abc import Iterable, Iterator, Sequence

from pydantic import model_validator

from hamilton_toughness.errors import InputError
from hamilton_toughness.utils import BaseModel, iter_bits

try:
    from typing import Self  # Python >= 3.11
except ImportError:
    from typing_extensions import Self  # Python < 3.11

LOGGER = logging.getLogger(__name__)


class Graph:
    """Immutable simple graph on vertices 0..n-1.

    Row v is an int whose bit u is set iff u ~ v. Edge operations return new graphs.
    """

    __slots__ = ("_hash", "_rows")

    def __init__(self, rows: Iterable[int]):
        rows = tuple(rows)
        n = len(rows)
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise InputError(f"Row {v} references a vertex outside [0, {n})")
            if row >> v & 1:
                raise InputError(f"Vertex {v} has a loop")
            for u in iter_bits(row):
                if not rows[u] >> v & 1:
                    raise InputError(f"Adjacency is not symmetric between {v} and {u}")
        self._rows = rows
        self._hash: int | None = None

    @classmethod
    def unchecked(cls, rows: tuple[int, ...]) -> Self:
        graph = cls.__new__(cls)
        graph._rows = rows
        graph._hash = None
        return graph

    @classmethod
    def empty(cls, n: int) -> Self:
        if n < 0:
            raise InputError(f"Vertex count must be non-negative, got {n}")
        return cls.unchecked((0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Self:
        if n < 0:
            raise InputError(f"Vertex count must be non-negative, got {n}")
        rows = [0] * n
        for u, v in edges:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise InputError(f"Self loop at vertex {u}")
            if rows[u] >> v & 1:
                raise InputError(f"Duplicate edge {{{u}, {v}}}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls.unchecked(tuple(rows))

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def full_mask(self) -> int:
        return (1 << len(self._rows)) - 1

    def neighbors(self, v: int) -> list[int]:
        _check_vertex(v, self.n)
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        _check_vertex(v, self.n)
        return self._rows[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self._rows)

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(u, self.n)
        _check_vertex(v, self.n)
        return bool(self._rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [
            (u, v) for u, row in enumerate(self._rows) for v in iter_bits(row >> u + 1 << u + 1)
        ]

    def non_edges(self) -> list[tuple[int, int]]:
        full = self.full_mask
        return [
            (u, v)
            for u, row in enumerate(self._rows)
            for v in iter_bits(~row & full & ~((1 << u + 1) - 1))
        ]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self._rows) // 2

    def add_edge(self, u: int, v: int) -> "Graph":
        self._check_pair(u, v)
        if self._rows[u] >> v & 1:
            raise InputError(f"Edge {{{u}, {v}}} already present")
        rows = list(self._rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph.unchecked(tuple(rows))

    def remove_edge(self, u: int, v: int) -> "Graph":
        self._check_pair(u, v)
        if not self._rows[u] >> v & 1:
            raise InputError(f"Edge {{{u}, {v}}} not present")
        rows = list(self._rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph.unchecked(tuple(rows))

    def is_complete(self) -> bool:
        target = self.n - 1
        return all(row.bit_count() == target for row in self._rows)

    def is_connected(self) -> bool:
        return components_after_removal(self, ()) <= 1

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """G[S], with the kept vertices renumbered in ascending id order."""
        kept = sorted(set(vertices))
        for v in kept:
            _check_vertex(v, self.n)
        index = {v: i for i, v in enumerate(kept)}
        rows = tuple(
            sum(1 << index[u] for u in iter_bits(self._rows[v]) if u in index) for v in kept
        )
        return Graph.unchecked(rows)

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        """G - S, renumbered like `induced`."""
        removed = to_mask(vertices, self.n)
        return self.induced(v for v in range(self.n) if not removed >> v & 1)

    def relabel(self, permutation: Sequence[int]) -> "Graph":
        """Return the graph in which old vertex v becomes permutation[v]."""
        if sorted(permutation) != list(range(self.n)):
            raise InputError("Relabelling must be a permutation of the vertex ids")
        rows = [0] * self.n
        for v, row in enumerate(self._rows):
            rows[permutation[v]] = sum(1 << permutation[u] for u in iter_bits(row))
        return Graph.unchecked(tuple(rows))

    def _check_pair(self, u: int, v: int) -> None:
        _check_vertex(u, self.n)
        _check_vertex(v, self.n)
        if u == v:
            raise InputError(f"Self loop requested at vertex {u}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __getstate__(self) -> tuple[int, ...]:
        return self._rows

    def __setstate__(self, state: tuple[int, ...]) -> None:
        self._rows = state
        self._hash = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check_vertex(v: int, n: int) -> None:
    if not 0 <= v < n:
        raise InputError(f"Vertex id {v} out of range [0, {n})")


def to_mask(vertices: Iterable[int], n: int) -> int:
    mask = 0
    for v in vertices:
        _check_vertex(v, n)
        mask |= 1 << v
    return mask


def _component_masks(rows: tuple[int, ...], alive: int) -> Iterator[int]:
    while alive:
        component = frontier = alive & -alive
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = rows[low.bit_length() - 1] & alive & ~component
            component |= fresh
            frontier |= fresh
        alive &= ~component
        yield component


def count_components(rows: tuple[int, ...], alive: int) -> int:
    """c(G[alive]) for a graph given by bit rows and an alive-vertex mask."""
    return sum(1 for _ in _component_masks(rows, alive))


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Vertex sets of the components of G - S, ordered by smallest member."""
    alive = g.full_mask & ~to_mask(removed, g.n)
    return [frozenset(iter_bits(mask)) for mask in _component_masks(g.rows, alive)]


def components_after_removal(g: Graph, removed: Iterable[int]) -> int:
    """c(G - S); 0 when S = V(G)."""
    return count_components(g.rows, g.full_mask & ~to_mask(removed, g.n))


class DegreeSequence(BaseModel, frozen=True):
    """Degrees sorted non-decreasing, addressed 1-based like d_1 <= ... <= d_n.

    `labels[i - 1]` is the vertex id playing v_i when the sequence was derived from a graph.
    """

    degrees: tuple[int, ...]
    labels: tuple[int, ...] | None = None

    @model_validator(mode="after")
    def _check(self) -> Self:
        n = len(self.degrees)
        for index, value in enumerate(self.degrees):
            if not 0 <= value <= max(n - 1, 0):
                raise ValueError(f"d_{index + 1} = {value} outside [0, {n - 1}]")
            if index and self.degrees[index - 1] > value:
                raise ValueError(f"Degrees not non-decreasing at position {index + 1}")
        if self.labels is not None and sorted(self.labels) != list(range(n)):
            raise ValueError("Labels must be a permutation of the vertex ids")
        return self

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def min_degree(self) -> int:
        return self.degrees[0] if self.degrees else 0

    def d(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"d_{i} outside [1, {self.n}]")
        return self.degrees[i - 1]

    def get(self, i: int) -> int | None:
        """d_i, or None when i falls outside [1, n]."""
        return self.degrees[i - 1] if 1 <= i <= self.n else None


def degree_sequence(g: Graph) -> DegreeSequence:
    degrees = g.degrees()
    labels = tuple(sorted(range(g.n), key=lambda v: (degrees[v], v)))
    return DegreeSequence(degrees=tuple(degrees[v] for v in labels), labels=labels)


def universal_clique(g: Graph) -> frozenset[int]:
    """The vertices of degree n-1: the unique maximum universal clique."""
    target = g.n - 1
    return frozenset(v for v, row in enumerate(g.rows) if row.bit_count() == target)


def is_universal_clique(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff the set is complete to V(G)."""
    mask = to_mask(vertices, g.n)
    full = g.full_mask
    return all(g.rows[v] | 1 << v == full for v in iter_bits(mask))


class UAlpha(BaseModel, frozen=True):
    alpha: int
    size: int
    # 1-based position j such that positions j..n qualify; None when U^alpha is empty.
    start: int | None
    in_range: bool
    vertices: frozenset[int] | None = None

    @property
    def indices(self) -> range:
        return range(self.start, self.start + self.size) if self.start else range(0)


def u_alpha(seq: DegreeSequence, alpha: int) -> UAlpha:
    """U^alpha = {v_i : d_i >= n - alpha}, a suffix of the sorted positions."""
    n = seq.n
    in_range = 1 <= alpha <= (n - 1) // 2
    if not in_range:
        LOGGER.debug("alpha=%d outside [1, %d]", alpha, (n - 1) // 2)
    threshold = n - alpha
    start = next((i for i in range(1, n + 1) if seq.d(i) >= threshold), None)
    size = n - start + 1 if start else 0
    vertices = None
    if seq.labels is not None:
        vertices = frozenset(seq.labels[start - 1 :]) if start else frozenset()
    return UAlpha(alpha=alpha, size=size, start=start, in_range=in_range, vertices=vertices)
