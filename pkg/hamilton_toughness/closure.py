__all__ = [
    "ClosureStep",
    "ClosureTrace",
    "closure_preserves_condition_check",
    "degree_sum_closure",
    "t_closure",
]

import logging
import random

from pydantic import Field

from hamilton_toughness.conditions import strengthened_condition
from hamilton_toughness.errors import InputError
from hamilton_toughness.graph import Graph, degree_sequence
from hamilton_toughness.utils import BaseModel, iter_bits

LOGGER = logging.getLogger(__name__)


class ClosureStep(BaseModel, frozen=True):
    u: int
    v: int
    degree_sum: int = Field(alias="sum")


class ClosureTrace(BaseModel):
    threshold: int
    added_edges: list[ClosureStep] = Field(default_factory=list)

    def to_jsonl(self) -> str:
        """One {"u", "v", "sum"} object per added edge, in addition order."""
        return "\n".join(step.model_dump_json(by_alias=True) for step in self.added_edges)


def _qualifying(
    rows: list[int], degrees: list[int], threshold: int, first_only: bool
) -> list[tuple[int, int]]:
    n = len(rows)
    full = (1 << n) - 1
    found = []
    for u in range(n):
        need = threshold - degrees[u]
        for v in iter_bits(~rows[u] & full & ~((1 << u + 1) - 1)):
            if degrees[v] >= need:
                found.append((u, v))
                if first_only:
                    return found
    return found


def degree_sum_closure(
    g: Graph, threshold: int, seed: int | None = None
) -> tuple[Graph, ClosureTrace]:
    """Add edges between nonadjacent pairs with degree sum >= threshold until none remain.

    Without a seed, pairs are taken in lexicographic order with a rescan after every addition.
    With a seed, each round picks uniformly among all qualifying pairs. The resulting graph is
    the same either way; only the trace differs.
    """
    if threshold < 0:
        raise InputError(f"Closure threshold must be non-negative, got {threshold}")
    trace = ClosureTrace(threshold=threshold)
    n = g.n
    if n < 2 or threshold > 2 * n - 4:
        return g, trace
    rng = random.Random(seed) if seed is not None else None  # noqa: S311
    rows = list(g.rows)
    degrees = list(g.degrees())
    while True:
        pairs = _qualifying(rows, degrees, threshold, first_only=rng is None)
        if not pairs:
            break
        u, v = rng.choice(pairs) if rng else pairs[0]
        trace.added_edges.append(ClosureStep(u=u, v=v, degree_sum=degrees[u] + degrees[v]))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        degrees[u] += 1
        degrees[v] += 1
    LOGGER.debug(
        "Closure at threshold %d added %d edges on n=%d", threshold, len(trace.added_edges), n
    )
    return Graph.unchecked(tuple(rows)), trace


def t_closure(g: Graph, t: int, seed: int | None = None) -> tuple[Graph, ClosureTrace]:
    """Closure at threshold n - t; t = 0 is the Bondy-Chvatal closure."""
    if t < 0:
        raise InputError(f"t must be non-negative, got {t}")
    return degree_sum_closure(g, max(g.n - t, 0), seed=seed)


def closure_preserves_condition_check(g: Graph, t: int) -> bool:
    """Whether the strengthened degree condition, when it holds for g, holds for its t-closure."""
    if t < 1:
        raise InputError(f"t must be at least 1, got {t}")
    if g.n < 3 or not strengthened_condition(degree_sequence(g), t).holds:
        return True
    closed, _ = t_closure(g, t)
    return strengthened_condition(degree_sequence(closed), t).holds
