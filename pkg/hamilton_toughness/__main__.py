__all__ = ["app", "main", "run"]

import json
import logging
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from enum import Enum
from platform import python_version
from typing import Annotated

from pydantic import ValidationError
from typer import Argument, Context, Exit, Option, Typer, echo

from hamilton_toughness import __version__, setup_logging
from hamilton_toughness.closure import t_closure
from hamilton_toughness.codec import (
    GraphFormat,
    GraphRecord,
    encode_edgelist,
    encode_graph6,
    open_source,
    stream_reader,
)
from hamilton_toughness.conditions import ConditionName, evaluate_condition
from hamilton_toughness.console import CONSOLE, ERR_CONSOLE
from hamilton_toughness.errors import ExitCode, HamiltonToughnessError, InputError, exit_code_for
from hamilton_toughness.families import FamilyId, build_family
from hamilton_toughness.graph import degree_sequence
from hamilton_toughness.hamilton import Engine, hamiltonian_cycle
from hamilton_toughness.harness import (
    HarnessConfig,
    SourceKind,
    TheoremId,
    VerificationReport,
    conjecture_probe,
    verify_theorem,
)
from hamilton_toughness.settings import Settings
from hamilton_toughness.toughness import find_tough_violation, toughness
from hamilton_toughness.utils import BaseModel, format_rational, parse_rational

try:
    from typer._click.exceptions import Abort, ClickException  # typer ships its own click
except ImportError:
    from click.exceptions import Abort, ClickException

PROG_NAME = "Hamilton-Toughness"
app = Typer()
LOGGER = logging.getLogger("hamilton-toughness")


class OutputMode(str, Enum):
    JSON = "json"
    HUMAN = "human"


class HamiltonResult(BaseModel):
    line: int | None
    hamiltonian: bool
    certificate: list[int] | None = None


class DecisionResult(BaseModel):
    line: int | None
    t: str
    tough: bool
    witness: list[int] | None = None


InputPath = Annotated[
    str, Argument(show_default=True, help="Graph file to read, or '-' for stdin.")
]
FormatOption = Annotated[
    GraphFormat | None,
    Option(
        "--format",
        "-f",
        case_sensitive=False,
        show_default=False,
        help="Input format. Detected from the first bytes of each line when omitted.",
    ),
]
OutputOption = Annotated[
    OutputMode, Option("--output", "-o", case_sensitive=False, help="Output mode.")
]
EngineOption = Annotated[
    Engine, Option("--engine", case_sensitive=False, help="Hamiltonicity search engine.")
]
DebugOption = Annotated[
    bool,
    Option(
        "--debug",
        help="Enable debug mode to show extra logging information for troubleshooting.",
    ),
]


@app.callback(invoke_without_command=True)
def common(
    ctx: Context,
    version: Annotated[
        bool | None, Option("--version", is_eager=True, help="Show the version and exit.")
    ] = None,
) -> None:
    if ctx.invoked_subcommand:
        return
    if version:
        CONSOLE.print(f"Hamilton Toughness v{__version__}")
        raise Exit


@app.command(name="settings", help="Display the current and default settings.")
def view_settings() -> None:
    Settings.load().display()


def setup(debug: bool = False) -> Settings:
    setup_logging(debug=debug)
    LOGGER.info("Python v%s", python_version())
    LOGGER.info("Hamilton Toughness v%s", __version__)

    settings = Settings.load()
    settings.save()
    return settings


@contextmanager
def handle_errors() -> Iterator[None]:
    try:
        yield
    except ValidationError as err:
        LOGGER.error("%s", err)
        raise Exit(ExitCode.INPUT_ERROR) from err
    except HamiltonToughnessError as err:
        LOGGER.error("%s", err)
        raise Exit(exit_code_for(err)) from err


def read_records(input_path: str, fmt: GraphFormat | None) -> Iterator[GraphRecord]:
    with open_source(input_path) as stream:
        yield from stream_reader(stream, fmt=fmt)


@app.command(name="ham", help="Decide whether each input graph has a Hamiltonian cycle.")
def ham(
    input_path: InputPath = "-",
    certificate: Annotated[
        bool, Option("--certificate", "-c", help="Also print the cycle when one exists.")
    ] = False,
    fmt: FormatOption = None,
    engine: EngineOption = Engine.AUTO,
    output: OutputOption = OutputMode.HUMAN,
    debug: DebugOption = False,
) -> None:
    settings = setup(debug=debug)
    with handle_errors():
        for record in read_records(input_path, fmt):
            cycle = hamiltonian_cycle(
                record.graph,
                engine=engine,
                dp_max_n=settings.hamilton.dp_max_n,
                work_budget=settings.hamilton.work_budget,
            )
            if output is OutputMode.JSON:
                result = HamiltonResult(
                    line=record.source_line,
                    hamiltonian=cycle is not None,
                    certificate=list(cycle.order) if cycle and certificate else None,
                )
                echo(result.model_dump_json())
                continue
            echo("hamiltonian" if cycle else "not hamiltonian")
            if cycle and certificate:
                echo(" ".join(str(v) for v in cycle.order))


@app.command(name="tough", help="Compute the exact toughness of each input graph.")
def tough(
    input_path: InputPath = "-",
    decide: Annotated[
        str | None,
        Option(
            "--decide",
            show_default=False,
            help="Decide whether the graph is t-tough for a rational t such as 3/2.",
        ),
    ] = None,
    fmt: FormatOption = None,
    output: OutputOption = OutputMode.HUMAN,
    debug: DebugOption = False,
) -> None:
    settings = setup(debug=debug)
    max_n = settings.toughness.max_n
    with handle_errors():
        t = parse_rational(decide) if decide is not None else None
        for record in read_records(input_path, fmt):
            if t is None:
                tau = toughness(record.graph, max_n=max_n)
                echo(tau.model_dump_json() if output is OutputMode.JSON else str(tau))
                continue
            witness = find_tough_violation(record.graph, t, max_n=max_n)
            if output is OutputMode.JSON:
                result = DecisionResult(
                    line=record.source_line,
                    t=format_rational(t),
                    tough=witness is None,
                    witness=list(witness.cutset) if witness else None,
                )
                echo(result.model_dump_json())
            else:
                echo("true" if witness is None else "false")


@app.command(name="closure", help="Print the t-closure of each input graph as graph6.")
def closure(
    t: Annotated[int, Option("--t", "-t", min=0, help="Closure threshold is n - t.")],
    input_path: InputPath = "-",
    trace: Annotated[
        bool, Option("--trace", help="Follow each graph with its added edges as JSON lines.")
    ] = False,
    fmt: FormatOption = None,
    debug: DebugOption = False,
) -> None:
    setup(debug=debug)
    with handle_errors():
        for record in read_records(input_path, fmt):
            closed, steps = t_closure(record.graph, t)
            echo(encode_graph6(closed))
            if trace and steps.added_edges:
                echo(steps.to_jsonl())


@app.command(name="cond", help="Evaluate a degree-sequence condition on each input graph.")
def cond(
    which: Annotated[
        ConditionName, Option("--which", "-w", case_sensitive=False, help="Condition to test.")
    ],
    t: Annotated[int, Option("--t", "-t", min=0, help="Toughness parameter.")] = 0,
    input_path: InputPath = "-",
    fmt: FormatOption = None,
    output: OutputOption = OutputMode.JSON,
    debug: DebugOption = False,
) -> None:
    setup(debug=debug)
    with handle_errors():
        for record in read_records(input_path, fmt):
            verdict = evaluate_condition(which, degree_sequence(record.graph), t)
            if output is OutputMode.JSON:
                echo(verdict.model_dump_json())
            elif verdict.holds:
                echo("holds")
            else:
                where = f"i={verdict.violating_i}"
                if verdict.violating_j is not None:
                    where += f", j={verdict.violating_j}"
                echo(f"fails at {where}")


@app.command(name="gen", help="Generate a family member; labels are written to stderr as JSON.")
def gen(
    family: Annotated[FamilyId, Option("--family", case_sensitive=False, help="Family id.")],
    n: Annotated[int | None, Option("--n", "-n", show_default=False, help="Vertex count.")] = None,
    a: Annotated[
        int | None, Option("--a", show_default=False, help="First part of a bipartite graph.")
    ] = None,
    b: Annotated[
        int | None, Option("--b", show_default=False, help="Second part of a bipartite graph.")
    ] = None,
    fmt: Annotated[
        GraphFormat, Option("--format", "-f", case_sensitive=False, help="Output format.")
    ] = GraphFormat.GRAPH6,
    debug: DebugOption = False,
) -> None:
    setup(debug=debug)
    with handle_errors():
        if fmt is GraphFormat.SPARSE6:
            raise InputError("sparse6 output is not supported")
        member = build_family(family, n=n, a=a, b=b)
        if fmt is GraphFormat.EDGELIST:
            echo(encode_edgelist(member.graph), nl=False)
        else:
            echo(encode_graph6(member.graph))
        echo(json.dumps(member.labels, sort_keys=True), err=True)


def build_config(
    settings: Settings,
    n_values: str,
    t: int | None,
    source: str,
    input_path: str | None,
    seed: int | None,
    jobs: int | None,
    sample_size: int | None,
    density: float | None,
    budget: int | None,
    engine: Engine,
) -> HarnessConfig:
    """Turn CLI flags and settings into a harness configuration.

    `source` is builtin, stream, random, random:<family> or family:<family>.
    """
    kind, _, family = source.partition(":")
    try:
        source_kind = SourceKind(kind)
    except ValueError as err:
        raise InputError(f"Unknown source '{source}'") from err
    try:
        return HarnessConfig(
            n_values=n_values,
            t=t,
            source=source_kind,
            family=FamilyId(family) if family else None,
            input_path=input_path,
            seed=seed,
            sample_size=sample_size or settings.harness.sample_size,
            density=settings.harness.density if density is None else density,
            jobs=jobs or settings.harness.jobs,
            chunk_size=settings.harness.chunk_size,
            budget=budget,
            engine=engine,
            dp_max_n=settings.hamilton.dp_max_n,
            work_budget=settings.hamilton.work_budget,
            toughness_max_n=settings.toughness.max_n,
        )
    except ValueError as err:
        raise InputError(str(err)) from err


def emit_report(report: VerificationReport, output: OutputMode) -> None:
    if output is OutputMode.JSON:
        echo(report.model_dump_json())
    else:
        report.display()
    ERR_CONSOLE.print(report.summary(), style="verdict.yes" if report.passed else "verdict.no")
    if not report.passed:
        raise Exit(ExitCode.VIOLATIONS)


NValuesOption = Annotated[
    str, Option("--n", "-n", help="Vertex counts: a value, a range such as 3-6, or a list.")
]
SourceOption = Annotated[
    str,
    Option(
        "--source",
        help="builtin, stream, random, random:<family> or family:<family>.",
    ),
]
InputOption = Annotated[
    str | None,
    Option("--input", "-i", show_default=False, help="graph6/sparse6 file for a stream source."),
]
SeedOption = Annotated[
    int | None, Option("--seed", show_default=False, help="Seed for random sampling.")
]
JobsOption = Annotated[
    int | None, Option("--jobs", "-j", min=1, show_default=False, help="Worker processes.")
]
SampleOption = Annotated[
    int | None,
    Option("--sample-size", min=1, show_default=False, help="Graphs drawn by a random source."),
]
DensityOption = Annotated[
    float | None,
    Option("--density", min=0, max=1, show_default=False, help="Edge keep probability."),
]
BudgetOption = Annotated[
    int | None,
    Option("--budget", min=0, show_default=False, help="Stop after this many instances."),
]


@app.command(name="verify", help="Check a theorem over enumerated, streamed or sampled graphs.")
def verify(
    theorem: Annotated[TheoremId, Option("--theorem", case_sensitive=False, help="Theorem id.")],
    n_values: NValuesOption,
    t: Annotated[
        int | None, Option("--t", "-t", min=0, show_default=False, help="Toughness parameter.")
    ] = None,
    source: SourceOption = "builtin",
    input_path: InputOption = None,
    seed: SeedOption = None,
    jobs: JobsOption = None,
    sample_size: SampleOption = None,
    density: DensityOption = None,
    budget: BudgetOption = None,
    engine: EngineOption = Engine.AUTO,
    output: OutputOption = OutputMode.JSON,
    debug: DebugOption = False,
) -> None:
    settings = setup(debug=debug)
    with handle_errors():
        config = build_config(
            settings,
            n_values,
            t,
            source,
            input_path,
            seed,
            jobs,
            sample_size,
            density,
            budget,
            engine,
        )
        report = verify_theorem(theorem, config, show_progress=ERR_CONSOLE.is_terminal)
    emit_report(report, output)


@app.command(
    name="probe",
    help="Search for non-Hamiltonian t-tough graphs meeting the strengthened condition.",
)
def probe(
    t: Annotated[int, Option("--t", "-t", min=2, max=3, help="Toughness parameter, 2 or 3.")],
    n_values: NValuesOption,
    source: SourceOption = "builtin",
    input_path: InputOption = None,
    seed: SeedOption = None,
    jobs: JobsOption = None,
    sample_size: SampleOption = None,
    density: DensityOption = None,
    budget: BudgetOption = None,
    engine: EngineOption = Engine.AUTO,
    output: OutputOption = OutputMode.JSON,
    debug: DebugOption = False,
) -> None:
    settings = setup(debug=debug)
    with handle_errors():
        config = build_config(
            settings,
            n_values,
            t,
            source,
            input_path,
            seed,
            jobs,
            sample_size,
            density,
            budget,
            engine,
        )
        report = conjecture_probe(t, config, show_progress=ERR_CONSOLE.is_terminal)
    emit_report(report, output)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI without exiting the interpreter; usage errors map to exit code 1."""
    try:
        result = app(
            args=list(argv) if argv is not None else None,
            prog_name=PROG_NAME,
            standalone_mode=False,
        )
    except ClickException as err:
        err.show()
        return ExitCode.INPUT_ERROR
    except Abort:
        return ExitCode.INPUT_ERROR
    return result if isinstance(result, int) else ExitCode.SUCCESS


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
