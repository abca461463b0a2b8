"""Theorem verification over enumerated, streamed, family-built or sampled graphs.

Every graph is checked independently: a checker evaluates the theorem's hypothesis (always
verifying toughness rather than assuming it) and, when it holds, the conclusion. Work is cut
into chunks that a `multiprocessing.Pool` maps over; counts are summed and violations sorted,
so the report does not depend on the number of workers.
"""

__all__ = [
    "CHECKERS",
    "CheckParams",
    "HarnessConfig",
    "Outcome",
    "SourceKind",
    "TheoremId",
    "VerificationReport",
    "Violation",
    "conjecture_probe",
    "enumerate_labeled_graphs",
    "parse_n_values",
    "replay",
    "verify_theorem",
]

import logging
import random
import time
from collections.abc import Callable, Iterable, Iterator
from contextlib import ExitStack
from enum import Enum
from itertools import islice
from multiprocessing import Pool
from typing import NamedTuple

from pydantic import Field, field_validator, model_validator
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from hamilton_toughness.closure import t_closure
from hamilton_toughness.codec import encode_graph6, open_source, parse_graph6, stream_reader
from hamilton_toughness.conditions import (
    ConditionVerdict,
    bauer_bound,
    chvatal_condition,
    hoang_condition,
    strengthened_condition,
)
from hamilton_toughness.console import ERR_CONSOLE
from hamilton_toughness.errors import InputError
from hamilton_toughness.families import FamilyId, build_family, complete
from hamilton_toughness.graph import Graph, degree_sequence
from hamilton_toughness.hamilton import (
    DEFAULT_DP_MAX_N,
    DEFAULT_WORK_BUDGET,
    Engine,
    is_hamiltonian,
)
from hamilton_toughness.toughness import DEFAULT_MAX_N, find_tough_violation, toughness
from hamilton_toughness.utils import BaseModel

try:
    from typing import Self  # Python >= 3.11
except ImportError:
    from typing_extensions import Self  # Python < 3.11

LOGGER = logging.getLogger(__name__)

MAX_BUILTIN_N = 7


class TheoremId(str, Enum):
    THM1_CHVATAL = "thm1_chvatal"
    THM5_BC_CLOSURE = "thm5_bc_closure"
    THM_HOANG_SMALL_T = "thm_hoang_small_t"
    THM_HOANG_LARGE_T = "thm_hoang_large_t"
    THM4_STRENGTHENED = "thm4_strengthened"
    THM6_T_CLOSURE_EDGE = "thm6_t_closure_edge"
    THM6B_BAUER = "thm6b_bauer"
    THM7_COUNTEREXAMPLE = "thm7_counterexample"
    THM8_SMALL_N = "thm8_small_n"
    CONJECTURE_PROBE = "conjecture_probe"


class SourceKind(str, Enum):
    BUILTIN = "builtin"
    STREAM = "stream"
    FAMILY = "family"
    RANDOM = "random"


def parse_n_values(text: str) -> list[int]:
    """Parse "7", "3-6", "10,12,14,16" or mixes like "3-5,8" into a sorted list."""
    values: set[int] = set()
    for part in text.split(","):
        part = part.strip()  # noqa: PLW2901
        low, sep, high = part.partition("-")
        if not low.isdigit() or (sep and not high.isdigit()):
            raise InputError(f"Invalid n value or range: '{part}'")
        start, stop = int(low), int(high) if sep else int(low)
        if stop < start:
            raise InputError(f"Empty n range: '{part}'")
        values.update(range(start, stop + 1))
    return sorted(values)


class HarnessConfig(BaseModel):
    n_values: list[int]
    t: int | None = None
    source: SourceKind = SourceKind.BUILTIN
    family: FamilyId | None = None
    input_path: str | None = None
    seed: int | None = None
    sample_size: int = Field(default=1000, ge=1)
    density: float = Field(default=0.5, ge=0, le=1)
    jobs: int = Field(default=1, ge=1)
    chunk_size: int = Field(default=2048, ge=1)
    budget: int | None = Field(default=None, ge=0)
    engine: Engine = Engine.AUTO
    dp_max_n: int = DEFAULT_DP_MAX_N
    work_budget: int = DEFAULT_WORK_BUDGET
    toughness_max_n: int = DEFAULT_MAX_N

    @field_validator("n_values", mode="before")
    @classmethod
    def _parse_n(cls, value: object) -> object:
        return parse_n_values(value) if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_source(self) -> Self:
        if not self.n_values and self.source is not SourceKind.STREAM:
            raise ValueError("At least one n value is required")
        if any(n < 0 for n in self.n_values):
            raise ValueError("n values must be non-negative")
        if self.source is SourceKind.RANDOM and self.seed is None:
            raise ValueError("A seed is required for random sampling")
        if self.source is SourceKind.STREAM and not self.input_path:
            raise ValueError("A stream source needs an input path ('-' for stdin)")
        if self.source is SourceKind.FAMILY and self.family is None:
            raise ValueError("A family source needs a family id")
        if self.t is not None and self.t < 0:
            raise ValueError("t must be non-negative")
        return self


class Violation(BaseModel, frozen=True):
    graph6: str
    n: int
    pair: tuple[int, int] | None = None
    detail: dict[str, str] = Field(default_factory=dict)

    @property
    def sort_key(self) -> tuple:
        return (self.n, self.graph6, self.pair or (-1, -1))


class VerificationReport(BaseModel):
    theorem: TheoremId
    n_values: list[int]
    t: int | None = None
    source: str
    seed: int | None = None
    instances_checked: int = 0
    hypothesis_hits: int = 0
    # Hypothesis hits that were not vacuous (e.g. some i had d_i <= i for the Chvatal condition).
    nonvacuous_hits: int = 0
    violations: list[Violation] = Field(default_factory=list)
    complete: bool = True
    wall_time: float = Field(default=0.0, exclude=True)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return (
            f"{self.theorem.value}: {self.instances_checked:,} instances, "
            f"{self.hypothesis_hits:,} hypothesis hits ({self.nonvacuous_hits:,} non-vacuous), "
            f"{len(self.violations)} violations in {self.wall_time:.2f}s"
            + ("" if self.complete else " [incomplete: budget exhausted]")
        )


class CheckParams(BaseModel, frozen=True):
    theorem: TheoremId
    t: int | None = None
    engine: Engine = Engine.AUTO
    dp_max_n: int = DEFAULT_DP_MAX_N
    work_budget: int = DEFAULT_WORK_BUDGET
    toughness_max_n: int = DEFAULT_MAX_N

    def hamiltonian(self, g: Graph) -> bool:
        return is_hamiltonian(
            g, engine=self.engine, dp_max_n=self.dp_max_n, work_budget=self.work_budget
        )

    def tough(self, g: Graph, t: int) -> bool:
        return find_tough_violation(g, t, max_n=self.toughness_max_n) is None


class Outcome(NamedTuple):
    hypothesis: bool
    nonvacuous: bool
    violation: Violation | None = None


_SKIP = Outcome(hypothesis=False, nonvacuous=False)


def _violation(
    g: Graph, pair: tuple[int, int] | None = None, **detail: object
) -> Violation:
    return Violation(
        graph6=encode_graph6(g),
        n=g.n,
        pair=pair,
        detail={key: str(value) for key, value in detail.items()},
    )


def _verdict_json(verdict: ConditionVerdict) -> str:
    return verdict.model_dump_json()


def _check_chvatal(g: Graph, params: CheckParams) -> Outcome:
    if g.n < 3:
        return _SKIP
    verdict = chvatal_condition(degree_sequence(g))
    if not verdict.holds:
        return _SKIP
    if params.hamiltonian(g):
        return Outcome(True, verdict.fired)
    return Outcome(True, verdict.fired, _violation(g, condition=_verdict_json(verdict)))


def _check_bc_closure(g: Graph, params: CheckParams) -> Outcome:
    closed, trace = t_closure(g, 0)
    before = params.hamiltonian(g)
    after = params.hamiltonian(closed) if trace.added_edges else before
    if before == after:
        return Outcome(True, bool(trace.added_edges))
    return Outcome(
        True,
        True,
        _violation(
            g,
            hamiltonian=before,
            closure_hamiltonian=after,
            closure_graph6=encode_graph6(closed),
            trace=trace.to_jsonl(),
        ),
    )


def _check_degree_condition(
    condition: Callable[..., ConditionVerdict],
) -> Callable[[Graph, CheckParams], Outcome]:
    def check(g: Graph, params: CheckParams) -> Outcome:
        if g.n < 3:
            return _SKIP
        verdict = condition(degree_sequence(g), params.t)
        if not verdict.holds or not params.tough(g, params.t):
            return _SKIP
        if params.hamiltonian(g):
            return Outcome(True, verdict.fired)
        tau = toughness(g, max_n=params.toughness_max_n)
        return Outcome(
            True,
            verdict.fired,
            _violation(
                g,
                condition=_verdict_json(verdict),
                toughness=str(tau),
                toughness_witness=tau.witness.model_dump_json() if tau.witness else None,
            ),
        )

    return check


def _degree_sum_pairs(g: Graph, threshold: int) -> list[tuple[int, int]]:
    degrees = g.degrees()
    return [(u, v) for u, v in g.non_edges() if degrees[u] + degrees[v] >= threshold]


def _check_pair_equivalence(g: Graph, params: CheckParams, t: int) -> Outcome:
    """For every nonadjacent pair with degree sum >= n - t, ham(G) == ham(G + xy).

    Adding an edge keeps a Hamiltonian graph Hamiltonian, so only the non-Hamiltonian case
    needs the augmented graphs.
    """
    pairs = _degree_sum_pairs(g, g.n - t)
    if not pairs or g.n < 3 or not params.tough(g, t):
        return _SKIP
    if params.hamiltonian(g):
        return Outcome(True, False)
    for u, v in pairs:
        if params.hamiltonian(g.add_edge(u, v)):
            return Outcome(
                True, True, _violation(g, pair=(u, v), hamiltonian=False, augmented=True)
            )
    return Outcome(True, True)


def _check_t_closure_edge(g: Graph, params: CheckParams) -> Outcome:
    return _check_pair_equivalence(g, params, params.t)


def _check_small_n(g: Graph, params: CheckParams) -> Outcome:
    return _check_pair_equivalence(g, params, 1)


def _check_bauer(g: Graph, params: CheckParams) -> Outcome:
    if g.n < 3 or not bauer_bound(g.n, params.t, g.min_degree):
        return _SKIP
    if not params.tough(g, params.t):
        return _SKIP
    if params.hamiltonian(g):
        return Outcome(True, not g.is_complete())
    return Outcome(True, True, _violation(g, min_degree=g.min_degree))


def _check_counterexample(g: Graph, params: CheckParams) -> Outcome:
    """The three defining properties plus a Hamiltonian G - v_{n-3}, with x = 0, y = n - 1."""
    n = g.n
    x, y = 0, n - 1
    failures: dict[str, object] = {}
    if g.has_edge(x, y):
        failures["xy_adjacent"] = True
    elif g.degree(x) + g.degree(y) != n - 1:
        failures["degree_sum"] = g.degree(x) + g.degree(y)
    elif not params.hamiltonian(g.add_edge(x, y)):
        failures["g_plus_xy_hamiltonian"] = False
    if params.hamiltonian(g):
        failures["g_hamiltonian"] = True
    tau = toughness(g, max_n=params.toughness_max_n)
    if tau.value != 1:
        failures["toughness"] = tau
    if not params.hamiltonian(g.remove_vertices([n - 4])):
        failures["g_minus_v_hamiltonian"] = False
    if failures:
        return Outcome(True, True, _violation(g, **failures))
    return Outcome(True, True)


CHECKERS: dict[TheoremId, Callable[[Graph, CheckParams], Outcome]] = {
    TheoremId.THM1_CHVATAL: _check_chvatal,
    TheoremId.THM5_BC_CLOSURE: _check_bc_closure,
    TheoremId.THM_HOANG_SMALL_T: _check_degree_condition(hoang_condition),
    TheoremId.THM_HOANG_LARGE_T: _check_degree_condition(hoang_condition),
    TheoremId.THM4_STRENGTHENED: _check_degree_condition(strengthened_condition),
    TheoremId.THM6_T_CLOSURE_EDGE: _check_t_closure_edge,
    TheoremId.THM6B_BAUER: _check_bauer,
    TheoremId.THM7_COUNTEREXAMPLE: _check_counterexample,
    TheoremId.THM8_SMALL_N: _check_small_n,
    TheoremId.CONJECTURE_PROBE: _check_degree_condition(strengthened_condition),
}


def _resolve_t(theorem: TheoremId, t: int | None) -> int | None:
    """Default t per theorem and reject values outside the theorem's range."""
    ranges = {
        TheoremId.THM_HOANG_SMALL_T: (1, 3, 1),
        TheoremId.THM_HOANG_LARGE_T: (4, None, 4),
        TheoremId.THM4_STRENGTHENED: (4, None, 4),
        TheoremId.THM6_T_CLOSURE_EDGE: (4, None, 4),
        TheoremId.THM6B_BAUER: (0, None, 1),
        TheoremId.CONJECTURE_PROBE: (2, 3, None),
    }
    if theorem not in ranges:
        return None
    low, high, default = ranges[theorem]
    if t is None:
        if default is None:
            raise InputError(f"{theorem.value} needs an explicit t")
        return default
    if t < low or (high is not None and t > high):
        upper = high if high is not None else "inf"
        raise InputError(f"{theorem.value} needs t in [{low}, {upper}], got {t}")
    return t


def _check_config(theorem: TheoremId, config: HarnessConfig) -> None:
    ns = config.n_values
    if theorem is TheoremId.THM7_COUNTEREXAMPLE and any(n < 7 for n in ns):
        raise InputError("The counterexample family exists only for n >= 7")
    if theorem is TheoremId.THM8_SMALL_N and any(not 3 <= n <= 6 for n in ns):
        raise InputError("thm8_small_n covers n in [3, 6] only")
    if config.source is SourceKind.BUILTIN and theorem is not TheoremId.THM7_COUNTEREXAMPLE:
        if any(n > MAX_BUILTIN_N for n in ns):
            raise InputError(
                f"Built-in enumeration stops at n = {MAX_BUILTIN_N}; use an external stream"
            )
        needs_three = theorem not in (TheoremId.THM5_BC_CLOSURE,)
        if needs_three and any(n < 3 for n in ns):
            raise InputError(f"{theorem.value} needs n >= 3")


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _graphs_in_range(n: int, start: int, stop: int) -> Iterator[Graph]:
    pairs = _pairs(n)
    for mask in range(start, stop):
        rows = [0] * n
        bits = mask
        while bits:
            low = bits & -bits
            u, v = pairs[low.bit_length() - 1]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            bits ^= low
        yield Graph.unchecked(tuple(rows))


def enumerate_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on n vertices; bit k of the edge mask is the k-th pair (u, v)
    in lexicographic order.
    """
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    if n > MAX_BUILTIN_N:
        raise InputError(
            f"Built-in enumeration stops at n = {MAX_BUILTIN_N}; use an external graph6 stream"
        )
    return _graphs_in_range(n, 0, 1 << n * (n - 1) // 2)


class _MaskRange(NamedTuple):
    n: int
    start: int
    stop: int


_Chunk = _MaskRange | tuple[Graph, ...]


def _chunk_size(chunk: _Chunk) -> int:
    if isinstance(chunk, _MaskRange):
        return chunk.stop - chunk.start
    return len(chunk)


def _expand(chunk: _Chunk) -> Iterable[Graph]:
    if isinstance(chunk, _MaskRange):
        return _graphs_in_range(*chunk)
    return chunk


class _ChunkResult(NamedTuple):
    instances: int
    hypothesis_hits: int
    nonvacuous_hits: int
    violations: list[Violation]


def _run_chunk(task: tuple[CheckParams, _Chunk]) -> _ChunkResult:
    params, chunk = task
    checker = CHECKERS[params.theorem]
    instances = hits = nonvacuous = 0
    violations = []
    for g in _expand(chunk):
        outcome = checker(g, params)
        instances += 1
        if outcome.hypothesis:
            hits += 1
            nonvacuous += outcome.nonvacuous
        if outcome.violation is not None:
            violations.append(outcome.violation)
    return _ChunkResult(instances, hits, nonvacuous, violations)


def _batched(graphs: Iterable[Graph], size: int) -> Iterator[tuple[Graph, ...]]:
    iterator = iter(graphs)
    while batch := tuple(islice(iterator, size)):
        yield batch


class _Planner:
    """Cuts the configured source into chunks, stopping at the instance budget."""

    def __init__(self, theorem: TheoremId, config: HarnessConfig, stack: ExitStack):
        self.theorem = theorem
        self.config = config
        self.stack = stack
        self.truncated = False

    @property
    def source_label(self) -> str:
        if self.theorem is TheoremId.THM7_COUNTEREXAMPLE:
            return f"family:{FamilyId.COUNTEREXAMPLE.value}"
        if self.config.source is SourceKind.FAMILY:
            return f"family:{self.config.family.value}"
        if self.config.source is SourceKind.RANDOM and self.config.family is not None:
            return f"random:{self.config.family.value}"
        return self.config.source.value

    @property
    def total(self) -> int | None:
        config = self.config
        if self.theorem is TheoremId.THM7_COUNTEREXAMPLE or config.source is SourceKind.FAMILY:
            total = len(config.n_values)
        elif config.source is SourceKind.BUILTIN:
            total = sum(1 << n * (n - 1) // 2 for n in config.n_values)
        elif config.source is SourceKind.RANDOM:
            total = config.sample_size
        else:
            return config.budget
        return total if config.budget is None else min(total, config.budget)

    def _random_graphs(self) -> Iterator[Graph]:
        config = self.config
        rng = random.Random(config.seed)  # noqa: S311
        bases = {
            n: build_family(config.family, n).graph if config.family else complete(n)
            for n in config.n_values
        }
        for _ in range(config.sample_size):
            base = bases[rng.choice(config.n_values)]
            kept = [edge for edge in base.edges() if rng.random() < config.density]
            yield Graph.from_edges(base.n, kept)

    def _stream_graphs(self) -> Iterator[Graph]:
        stream = self.stack.enter_context(open_source(self.config.input_path))
        wanted = set(self.config.n_values)
        for record in stream_reader(stream):
            if not wanted or record.graph.n in wanted:
                yield record.graph

    def _raw(self) -> Iterator[_Chunk]:
        config = self.config
        size = config.chunk_size
        if self.theorem is TheoremId.THM7_COUNTEREXAMPLE:
            family = FamilyId.COUNTEREXAMPLE
            yield from _batched((build_family(family, n).graph for n in config.n_values), size)
        elif config.source is SourceKind.BUILTIN:
            for n in config.n_values:
                total = 1 << n * (n - 1) // 2
                for start in range(0, total, size):
                    yield _MaskRange(n, start, min(total, start + size))
        elif config.source is SourceKind.FAMILY:
            graphs = (build_family(config.family, n).graph for n in config.n_values)
            yield from _batched(graphs, size)
        elif config.source is SourceKind.RANDOM:
            yield from _batched(self._random_graphs(), size)
        else:
            yield from _batched(self._stream_graphs(), size)

    def __iter__(self) -> Iterator[_Chunk]:
        remaining = self.config.budget
        for chunk in self._raw():
            if remaining is None:
                yield chunk
                continue
            if remaining == 0:
                self.truncated = True
                return
            if _chunk_size(chunk) > remaining:
                self.truncated = True
                chunk = (  # noqa: PLW2901
                    _MaskRange(chunk.n, chunk.start, chunk.start + remaining)
                    if isinstance(chunk, _MaskRange)
                    else chunk[:remaining]
                )
            remaining -= _chunk_size(chunk)
            yield chunk


def _map_chunks(
    tasks: Iterator[tuple[CheckParams, _Chunk]], jobs: int
) -> Iterator[_ChunkResult]:
    if jobs == 1:
        yield from map(_run_chunk, tasks)
        return
    with Pool(processes=jobs) as pool:
        yield from pool.imap_unordered(_run_chunk, tasks)


def verify_theorem(
    theorem: TheoremId, config: HarnessConfig, show_progress: bool = False
) -> VerificationReport:
    """Run one theorem over the configured graphs and collect every violation.

    Raises:
        InputError: The configuration cannot be satisfied for this theorem.
    """
    t = _resolve_t(theorem, config.t)
    _check_config(theorem, config)
    params = CheckParams(
        theorem=theorem,
        t=t,
        engine=config.engine,
        dp_max_n=config.dp_max_n,
        work_budget=config.work_budget,
        toughness_max_n=config.toughness_max_n,
    )
    started = time.perf_counter()
    with ExitStack() as stack:
        planner = _Planner(theorem, config, stack)
        report = VerificationReport(
            theorem=theorem,
            n_values=config.n_values,
            t=t,
            source=planner.source_label,
            seed=config.seed,
        )
        LOGGER.info("Verifying %s on n=%s (%s)", theorem.value, config.n_values, report.source)
        tasks = ((params, chunk) for chunk in planner)
        with Progress(
            TextColumn("[subtitle]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=ERR_CONSOLE,
            transient=True,
            disable=not show_progress,
        ) as progress:
            task_id = progress.add_task(theorem.value, total=planner.total)
            for result in _map_chunks(tasks, config.jobs):
                report.instances_checked += result.instances
                report.hypothesis_hits += result.hypothesis_hits
                report.nonvacuous_hits += result.nonvacuous_hits
                report.violations.extend(result.violations)
                progress.advance(task_id, result.instances)
        report.complete = not planner.truncated
    report.violations.sort(key=lambda violation: violation.sort_key)
    report.wall_time = time.perf_counter() - started
    for violation in report.violations:
        LOGGER.warning("Violation of %s on %s: %s", theorem.value, violation.graph6, violation)
    LOGGER.info("%s", report.summary())
    return report


def conjecture_probe(
    t: int, config: HarnessConfig, show_progress: bool = False
) -> VerificationReport:
    """Search for graphs that are t-tough and meet the strengthened condition for t in {2, 3}
    yet are not Hamiltonian. No such graph is known.
    """
    if t not in (2, 3):
        raise InputError(f"The probe covers t = 2 and t = 3 only, got {t}")
    return verify_theorem(
        TheoremId.CONJECTURE_PROBE, config.model_copy(update={"t": t}), show_progress
    )


def replay(
    report: VerificationReport,
    engine: Engine = Engine.AUTO,
    dp_max_n: int = DEFAULT_DP_MAX_N,
    work_budget: int = DEFAULT_WORK_BUDGET,
    toughness_max_n: int = DEFAULT_MAX_N,
) -> bool:
    """Re-check every recorded violation from its graph6 alone; True iff each reproduces."""
    params = CheckParams(
        theorem=report.theorem,
        t=report.t,
        engine=engine,
        dp_max_n=dp_max_n,
        work_budget=work_budget,
        toughness_max_n=toughness_max_n,
    )
    checker = CHECKERS[report.theorem]
    for violation in report.violations:
        outcome = checker(parse_graph6(violation.graph6), params)
        if outcome.violation != violation:
            LOGGER.warning("Violation on %s did not reproduce", violation.graph6)
            return False
    return True
