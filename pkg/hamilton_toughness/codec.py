"""graph6 / sparse6 readers, a graph6 writer and a plain "n m" edge-list format.

graph6 and sparse6 follow the formats shipped with nauty bit for bit. sparse6 is decode only.
"""

__all__ = [
    "GraphFormat",
    "GraphRecord",
    "detect_format",
    "encode_edgelist",
    "encode_graph6",
    "open_source",
    "parse_edgelist",
    "parse_graph6",
    "parse_sparse6",
    "read_graph",
    "stream_reader",
]

import logging
import sys
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import IO

from hamilton_toughness.errors import InputError, ParseError
from hamilton_toughness.graph import Graph
from hamilton_toughness.utils import BaseModel

LOGGER = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
SPARSE6_HEADER = ">>sparse6<<"
MAX_ORDER = 68_719_476_735
_SHORT_LIMIT = 62
_MEDIUM_LIMIT = 258_047


class GraphFormat(str, Enum):
    GRAPH6 = "graph6"
    SPARSE6 = "sparse6"
    EDGELIST = "edgelist"


class GraphRecord(BaseModel, frozen=True, arbitrary_types_allowed=True):
    graph: Graph
    source_line: int | None = None
    format: GraphFormat


def _encode_size(n: int) -> str:
    if n < 0 or n > MAX_ORDER:
        raise InputError(f"graph6 cannot encode n = {n}")
    if n <= _SHORT_LIMIT:
        return chr(n + 63)
    if n <= _MEDIUM_LIMIT:
        return "~" + "".join(chr((n >> shift & 63) + 63) for shift in (12, 6, 0))
    return "~~" + "".join(chr((n >> shift & 63) + 63) for shift in (30, 24, 18, 12, 6, 0))


def _decode_size(data: str, offset: int) -> tuple[int, int]:
    """Read N(n) starting at offset; return (n, offset of the first body byte)."""
    if offset >= len(data):
        raise ParseError("Missing size header", offset=offset)
    if data[offset] != "~":
        return ord(data[offset]) - 63, offset + 1
    if data[offset + 1 : offset + 2] == "~":
        width, start = 6, offset + 2
    else:
        width, start = 3, offset + 1
    if len(data) < start + width:
        raise ParseError("Truncated size header", offset=len(data))
    n = 0
    for char in data[start : start + width]:
        n = n << 6 | (ord(char) - 63)
    return n, start + width


def _check_printable(data: str, offset: int) -> None:
    for position in range(offset, len(data)):
        if not 63 <= ord(data[position]) <= 126:
            raise ParseError(f"Character {data[position]!r} out of range", offset=position)


def _as_text(line: str | bytes) -> str:
    if isinstance(line, bytes):
        try:
            line = line.decode("ascii")
        except UnicodeDecodeError as err:
            raise ParseError("Non-ASCII input", offset=err.start) from err
    return line.rstrip("\r\n")


def encode_graph6(g: Graph, header: bool = False) -> str:
    chars = [_encode_size(g.n)]
    value = count = 0
    rows = g.rows
    for j in range(1, g.n):
        row = rows[j]
        for i in range(j):
            value = value << 1 | (row >> i & 1)
            count += 1
            if count == 6:
                chars.append(chr(value + 63))
                value = count = 0
    if count:
        chars.append(chr((value << (6 - count)) + 63))
    return (GRAPH6_HEADER if header else "") + "".join(chars)


def parse_graph6(text: str | bytes) -> Graph:
    data = _as_text(text)
    offset = len(GRAPH6_HEADER) if data.startswith(GRAPH6_HEADER) else 0
    if offset == len(data):
        raise ParseError("Empty graph6 line", offset=offset)
    _check_printable(data, offset)
    n, start = _decode_size(data, offset)
    bit_count = n * (n - 1) // 2
    expected = -(-bit_count // 6)
    body = data[start:]
    if len(body) < expected:
        raise ParseError(
            f"Truncated adjacency data: expected {expected} bytes, found {len(body)}",
            offset=len(data),
        )
    if len(body) > expected:
        raise ParseError("Trailing data after adjacency bits", offset=start + expected)

    rows = [0] * n
    i, j, seen = 0, 1, 0
    for position, char in enumerate(body, start=start):
        value = ord(char) - 63
        for shift in range(5, -1, -1):
            bit = value >> shift & 1
            if seen == bit_count:
                if bit:
                    raise ParseError("Non-zero padding bits", offset=position)
                continue
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            seen += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph.unchecked(tuple(rows))


def parse_sparse6(text: str | bytes) -> Graph:
    data = _as_text(text)
    offset = len(SPARSE6_HEADER) if data.startswith(SPARSE6_HEADER) else 0
    if data[offset : offset + 1] == ";":
        raise ParseError("Incremental sparse6 is not supported", offset=offset)
    if data[offset : offset + 1] != ":":
        raise ParseError("sparse6 line must start with ':'", offset=offset)
    _check_printable(data, offset + 1)
    n, start = _decode_size(data, offset + 1)
    k = max(1, (n - 1).bit_length())

    body = data[start:]
    total = 6 * len(body)
    value = 0
    for char in body:
        value = value << 6 | (ord(char) - 63)

    rows = [0] * n
    position = v = 0
    while total - position >= 1 + k:
        byte_offset = start + position // 6
        b = value >> (total - 1 - position) & 1
        x = value >> (total - 1 - position - k) & ((1 << k) - 1)
        position += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
            continue
        if x == v:
            raise ParseError(f"Loop at vertex {v}", offset=byte_offset)
        if rows[x] >> v & 1:
            raise ParseError(f"Duplicate edge {{{x}, {v}}}", offset=byte_offset)
        rows[x] |= 1 << v
        rows[v] |= 1 << x
    return Graph.unchecked(tuple(rows))


def encode_edgelist(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}", *(f"{u} {v}" for u, v in edges)]
    return "\n".join(lines) + "\n"


def _is_skippable(line: str) -> bool:
    return not line or line.startswith("#")


def _parse_ints(line: str, line_no: int, what: str) -> tuple[int, int]:
    fields = line.split()
    if len(fields) != 2 or not all(x.isdigit() for x in fields):
        raise ParseError(f"Malformed {what} '{line}'", line=line_no)
    return int(fields[0]), int(fields[1])


def _read_edgelist_block(
    first: tuple[int, str], rest: Iterator[tuple[int, str]]
) -> tuple[Graph, int] | None:
    """Parse one "n m" block whose first line is `first`, pulling edge lines from `rest`."""
    header_no, header = first
    while _is_skippable(header):
        nxt = next(rest, None)
        if nxt is None:
            return None
        header_no, header = nxt
    n, m = _parse_ints(header, header_no, "edge-list header")
    rows = [0] * n
    for _ in range(m):
        line_no, line = next(rest, (None, None))
        while line is not None and _is_skippable(line):
            line_no, line = next(rest, (None, None))
        if line is None:
            raise ParseError(f"Expected {m} edges after header", line=header_no)
        u, v = _parse_ints(line, line_no, "edge")
        if u >= n or v >= n:
            raise ParseError(f"Edge {{{u}, {v}}} outside [0, {n})", line=line_no)
        if u == v:
            raise ParseError(f"Loop at vertex {u}", line=line_no)
        if rows[u] >> v & 1:
            raise ParseError(f"Duplicate edge {{{u}, {v}}}", line=line_no)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph.unchecked(tuple(rows)), header_no


def _numbered_lines(source: Iterable[str | bytes]) -> Iterator[tuple[int, str]]:
    for line_no, raw in enumerate(source, start=1):
        try:
            yield line_no, _as_text(raw).strip()
        except ParseError as err:
            raise err.at_line(line_no) from err


def parse_edgelist(text: str) -> Graph:
    lines = _numbered_lines(text.splitlines())
    first = next(lines, None)
    block = _read_edgelist_block(first, lines) if first else None
    if block is None:
        raise ParseError("No edge-list header found", line=1)
    for line_no, line in lines:
        if not _is_skippable(line):
            raise ParseError("Trailing data after the declared edges", line=line_no)
    return block[0]


def detect_format(line: str) -> GraphFormat:
    """Guess the format of a stripped, non-empty line from its first byte(s)."""
    if line.startswith(GRAPH6_HEADER):
        return GraphFormat.GRAPH6
    if line.startswith((SPARSE6_HEADER, ":", ";")):
        return GraphFormat.SPARSE6
    if line[0].isdigit() or line[0] == "#":
        return GraphFormat.EDGELIST
    if 63 <= ord(line[0]) <= 126:
        return GraphFormat.GRAPH6
    raise ParseError(f"Cannot detect the format of '{line[:16]}'", offset=0)


def stream_reader(
    source: Iterable[str | bytes], fmt: GraphFormat | None = None
) -> Iterator[GraphRecord]:
    """Lazily yield the graphs of a stream in file order.

    graph6/sparse6 carry one graph per line; edge lists are consecutive "n m" blocks.
    The first malformed line raises `ParseError` carrying its line number.
    """
    lines = _numbered_lines(source)
    for line_no, line in lines:
        if _is_skippable(line):
            continue
        try:
            kind = fmt or detect_format(line)
            if kind is GraphFormat.EDGELIST:
                block = _read_edgelist_block((line_no, line), lines)
                if block is None:
                    return
                graph, line_no = block
            elif kind is GraphFormat.SPARSE6:
                graph = parse_sparse6(line)
            else:
                graph = parse_graph6(line)
        except ParseError as err:
            raise err.at_line(err.line or line_no) from err
        LOGGER.debug("Read %s graph on %d vertices from line %d", kind.value, graph.n, line_no)
        yield GraphRecord(graph=graph, source_line=line_no, format=kind)


@contextmanager
def open_source(path: str | Path) -> Iterator[IO[bytes]]:
    """Open a file for binary reading; "-" means stdin."""
    if str(path) == "-":
        yield sys.stdin.buffer
        return
    file = Path(path)
    if not file.is_file():
        raise InputError(f"No such file: '{file}'")
    with file.open("rb") as stream:
        yield stream


def read_graph(text: str, fmt: GraphFormat | None = None) -> Graph:
    """Parse exactly one graph from text in any supported format."""
    records = list(stream_reader(text.splitlines(), fmt=fmt))
    if len(records) != 1:
        raise InputError(f"Expected exactly one graph, found {len(records)}")
    return records[0].graph
