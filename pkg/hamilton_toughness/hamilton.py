__all__ = [
    "CycleCertificate",
    "Engine",
    "check_certificate",
    "hamiltonian_cycle",
    "hamiltonian_path",
    "has_hamiltonian_path",
    "is_hamiltonian",
]

import logging
from enum import Enum

from pydantic import Field

from hamilton_toughness.errors import InputError, UndecidedError
from hamilton_toughness.graph import Graph
from hamilton_toughness.utils import BaseModel, iter_bits

LOGGER = logging.getLogger(__name__)

DEFAULT_DP_MAX_N = 20
DEFAULT_WORK_BUDGET = 50_000_000


class Engine(str, Enum):
    AUTO = "auto"
    DP = "dp"
    BACKTRACK = "backtrack"


class CycleCertificate(BaseModel, frozen=True):
    order: tuple[int, ...] = Field(min_length=3)


class _Budget:
    __slots__ = ("limit", "spent")

    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    def spend(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise UndecidedError(self.limit)


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _reaches_all(rows: tuple[int, ...], source: int, targets: int) -> bool:
    """True iff every vertex of `targets` is reachable from source inside targets."""
    reached = frontier = rows[source] & targets
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        fresh = rows[low.bit_length() - 1] & targets & ~reached
        reached |= fresh
        frontier |= fresh
    return reached == targets


def _dp_cycle(rows: tuple[int, ...], budget: _Budget) -> list[int] | None:
    # dp[mask] holds the possible last vertices of a path that starts at 0 and covers mask.
    n = len(rows)
    full = (1 << n) - 1
    dp = [0] * (1 << n)
    dp[1] = 1
    for mask in range(1, full, 2):
        ends = dp[mask]
        if not ends:
            continue
        budget.spend(ends.bit_count())
        for v in iter_bits(ends):
            for u in iter_bits(rows[v] & ~mask):
                dp[mask | 1 << u] |= 1 << u
    closing = dp[full] & rows[0]
    if not closing:
        return None
    order = []
    mask, v = full, _lowest(closing)
    while v:
        order.append(v)
        mask ^= 1 << v
        v = _lowest(dp[mask] & rows[v])
    order.append(0)
    order.reverse()
    return order


def _dp_path(
    rows: tuple[int, ...], start: int | None, end: int | None, budget: _Budget
) -> list[int] | None:
    n = len(rows)
    full = (1 << n) - 1
    dp = [0] * (1 << n)
    for s in [start] if start is not None else range(n):
        dp[1 << s] = 1 << s
    for mask in range(1, full):
        ends = dp[mask]
        if not ends:
            continue
        budget.spend(ends.bit_count())
        for v in iter_bits(ends):
            for u in iter_bits(rows[v] & ~mask):
                dp[mask | 1 << u] |= 1 << u
    finals = dp[full] if end is None else dp[full] & 1 << end
    if not finals:
        return None
    mask, v = full, _lowest(finals)
    path = [v]
    while mask != 1 << v:
        mask ^= 1 << v
        v = _lowest(dp[mask] & rows[v])
        path.append(v)
    path.reverse()
    return path


def _backtrack(
    rows: tuple[int, ...], start: int, end: int | None, close: bool, budget: _Budget
) -> list[int] | None:
    """Depth-first extension of a path from `start` in ascending vertex order.

    Prunes when the unvisited vertices are not all reachable from the current end, when an
    unvisited vertex has fewer than two usable cycle neighbours, and forces the successor when
    some unvisited vertex can only be entered from the current end.
    """
    n = len(rows)
    full = (1 << n) - 1

    def candidates(cur: int, visited: int) -> int:
        unvisited = full & ~visited
        if close and not rows[start] & unvisited:
            return 0
        if not _reaches_all(rows, cur, unvisited):
            return 0
        options = rows[cur] & unvisited
        if end is not None and visited | 1 << end != full:
            options &= ~(1 << end)
        if close:
            usable = unvisited | 1 << cur | 1 << start
            forced = 0
            for w in iter_bits(unvisited):
                links = rows[w] & usable
                count = links.bit_count()
                if count < 2:
                    return 0
                if count == 2 and cur != start and links >> cur & 1:
                    forced |= 1 << w
            if forced.bit_count() > 1:
                return 0
            if forced:
                options &= forced
        return options

    def finished(cur: int) -> bool:
        if close:
            return bool(rows[cur] >> start & 1)
        return end is None or cur == end

    path = [start]
    visited = 1 << start
    if visited == full:
        return path if not close and finished(start) else None
    pending = [candidates(start, visited)]
    while pending:
        options = pending[-1]
        if not options:
            pending.pop()
            visited ^= 1 << path.pop()
            continue
        low = options & -options
        pending[-1] = options ^ low
        budget.spend()
        path.append(low.bit_length() - 1)
        visited |= low
        if visited == full:
            if finished(path[-1]):
                return path
            visited ^= low
            path.pop()
            continue
        pending.append(candidates(path[-1], visited))
    return None


def _use_dp(n: int, engine: Engine, dp_max_n: int) -> bool:
    if engine is Engine.AUTO:
        return n <= dp_max_n
    return engine is Engine.DP


def hamiltonian_cycle(
    g: Graph,
    engine: Engine = Engine.AUTO,
    *,
    dp_max_n: int = DEFAULT_DP_MAX_N,
    work_budget: int = DEFAULT_WORK_BUDGET,
) -> CycleCertificate | None:
    """Find a Hamiltonian cycle, searching from vertex 0 in ascending id order.

    Graphs with fewer than three vertices have none by convention.

    Raises:
        UndecidedError: The search spent more than `work_budget` node expansions.
    """
    n = g.n
    if n < 3 or g.min_degree < 2 or not g.is_connected():
        return None
    budget = _Budget(work_budget)
    if _use_dp(n, engine, dp_max_n):
        order = _dp_cycle(g.rows, budget)
    else:
        order = _backtrack(g.rows, 0, None, True, budget)
    LOGGER.debug(
        "Hamiltonian cycle search on n=%d (%s) spent %d expansions",
        n,
        "dp" if _use_dp(n, engine, dp_max_n) else "backtrack",
        budget.spent,
    )
    return CycleCertificate(order=tuple(order)) if order else None


def is_hamiltonian(
    g: Graph,
    engine: Engine = Engine.AUTO,
    *,
    dp_max_n: int = DEFAULT_DP_MAX_N,
    work_budget: int = DEFAULT_WORK_BUDGET,
) -> bool:
    return (
        hamiltonian_cycle(g, engine=engine, dp_max_n=dp_max_n, work_budget=work_budget)
        is not None
    )


def check_certificate(g: Graph, certificate: CycleCertificate) -> bool:
    order = certificate.order
    n = g.n
    if n < 3 or len(order) != n or sorted(order) != list(range(n)):
        return False
    rows = g.rows
    return all(rows[order[i - 1]] >> order[i] & 1 for i in range(n))


def hamiltonian_path(
    g: Graph,
    start: int | None = None,
    end: int | None = None,
    engine: Engine = Engine.AUTO,
    *,
    dp_max_n: int = DEFAULT_DP_MAX_N,
    work_budget: int = DEFAULT_WORK_BUDGET,
) -> tuple[int, ...] | None:
    """A spanning path, with the given endpoints when supplied."""
    n = g.n
    for vertex in (start, end):
        if vertex is not None and not 0 <= vertex < n:
            raise InputError(f"Vertex id {vertex} out of range [0, {n})")
    if start is not None and start == end:
        raise InputError("Path endpoints must differ")
    if n == 0 or not g.is_connected():
        return None
    budget = _Budget(work_budget)
    if _use_dp(n, engine, dp_max_n):
        path = _dp_path(g.rows, start, end, budget)
        return tuple(path) if path else None

    reverse = start is None and end is not None
    if reverse:
        start, end = end, None
    if start is not None:
        starts = [start]
    else:
        # A degree-one vertex must be an endpoint, and the path can be read either way.
        leaves = [v for v in range(n) if g.rows[v].bit_count() <= 1]
        starts = leaves[:1] if leaves else list(range(n))
    for first in starts:
        path = _backtrack(g.rows, first, end, False, budget)
        if path:
            return tuple(reversed(path)) if reverse else tuple(path)
    return None


def has_hamiltonian_path(
    g: Graph,
    start: int | None = None,
    end: int | None = None,
    engine: Engine = Engine.AUTO,
    *,
    dp_max_n: int = DEFAULT_DP_MAX_N,
    work_budget: int = DEFAULT_WORK_BUDGET,
) -> bool:
    return (
        hamiltonian_path(
            g, start, end, engine=engine, dp_max_n=dp_max_n, work_budget=work_budget
        )
        is not None
    )
