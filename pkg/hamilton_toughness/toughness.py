"""Exact toughness by subset enumeration.

tau(G) = min |S| / c(G - S) over vertex cuts S with c(G - S) >= 2; complete graphs are
infinitely tough.
"""

__all__ = [
    "Toughness",
    "ToughnessWitness",
    "find_tough_violation",
    "is_t_tough",
    "min_degree_bound_check",
    "toughness",
]

import logging
from collections.abc import Iterator
from fractions import Fraction
from itertools import combinations

from pydantic import field_serializer, field_validator

from hamilton_toughness.errors import InputError, ResourceLimitError
from hamilton_toughness.graph import Graph, count_components
from hamilton_toughness.utils import BaseModel, format_rational, parse_rational

LOGGER = logging.getLogger(__name__)

DEFAULT_MAX_N = 24


class ToughnessWitness(BaseModel, frozen=True):
    cutset: tuple[int, ...]
    component_count: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(len(self.cutset), self.component_count)


class Toughness(BaseModel, frozen=True, arbitrary_types_allowed=True):
    # None stands for infinite toughness.
    value: Fraction | None
    witness: ToughnessWitness | None = None

    @field_validator("value", mode="before")
    @classmethod
    def _parse(cls, value: object) -> object:
        if value == "inf":
            return None
        if isinstance(value, str | int):
            return parse_rational(value)
        return value

    @field_serializer("value")
    def _serialize(self, value: Fraction | None) -> str:
        return format_rational(value)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def at_least(self, t: str | int | Fraction) -> bool:
        return self.value is None or self.value >= parse_rational(t)

    def __str__(self) -> str:
        return format_rational(self.value)


def _check_size(g: Graph, max_n: int) -> None:
    if g.n > max_n:
        raise ResourceLimitError(
            f"Toughness of a graph on {g.n} vertices is too large to enumerate (cap {max_n})"
        )


def _cuts(g: Graph, size: int, pruned: bool) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (S, c(G - S)) for every |S| = size splitting G, ascending lexicographic order.

    With `pruned`, skip S holding a vertex with no neighbour outside S: dropping it from S
    gives a strictly smaller ratio.
    """
    rows = g.rows
    full = g.full_mask
    for combo in combinations(range(g.n), size):
        mask = 0
        for v in combo:
            mask |= 1 << v
        if pruned and any(not rows[v] & ~mask for v in combo):
            continue
        count = count_components(rows, full & ~mask)
        if count >= 2:
            yield combo, count


def toughness(g: Graph, pruned: bool = True, max_n: int = DEFAULT_MAX_N) -> Toughness:
    """Compute tau(G) exactly with a minimising cutset.

    Ties go to the lexicographically least sorted cutset. A disconnected graph has
    toughness 0 with the empty cutset.

    Raises:
        ResourceLimitError: n exceeds `max_n`.
    """
    if g.is_complete():
        return Toughness(value=None)
    _check_size(g, max_n)
    n = g.n
    best: tuple[int, int, tuple[int, ...]] | None = None
    for size in range(n - 1):
        # Any S of this size scores at least size / (n - size).
        if pruned and best is not None and size * best[1] > best[0] * (n - size):
            break
        for combo, count in _cuts(g, size, pruned):
            if best is None or size * best[1] < best[0] * count:
                best = (size, count, combo)
            elif size * best[1] == best[0] * count and combo < best[2]:
                best = (size, count, combo)
    size, count, combo = best
    LOGGER.debug("tau = %d/%d witnessed by %s", size, count, combo)
    return Toughness(
        value=Fraction(size, count),
        witness=ToughnessWitness(cutset=combo, component_count=count),
    )


def find_tough_violation(
    g: Graph, t: str | int | Fraction, max_n: int = DEFAULT_MAX_N
) -> ToughnessWitness | None:
    """The first cutset S (by size, then lexicographically) with |S| < t * c(G - S)."""
    t = parse_rational(t)
    if t < 0:
        raise InputError(f"t must be non-negative, got {format_rational(t)}")
    if t == 0 or g.is_complete():
        return None
    _check_size(g, max_n)
    n = g.n
    for size in range(n - 1):
        if size >= t * (n - size):
            break
        for combo, count in _cuts(g, size, pruned=True):
            if size < t * count:
                return ToughnessWitness(cutset=combo, component_count=count)
    return None


def is_t_tough(g: Graph, t: str | int | Fraction, max_n: int = DEFAULT_MAX_N) -> bool:
    return find_tough_violation(g, t, max_n=max_n) is None


def min_degree_bound_check(g: Graph, t: int, verify: bool = False) -> bool:
    """delta(G) >= 2t, which holds for every non-complete t-tough graph."""
    if g.is_complete():
        raise InputError("The minimum degree bound applies to non-complete graphs only")
    if verify and not is_t_tough(g, t):
        raise InputError(f"Graph is not {t}-tough")
    return g.min_degree >= 2 * t
