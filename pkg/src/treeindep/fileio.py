"""Parsers and serializers for the .gr / .td formats and sidecar files.

Files are 1-based; everything in memory is 0-based.  The conversion
happens here and only here.  Writers emit a canonical form (sorted edges
and bag contents, no comments) so that serialize(parse(x)) is
byte-identical for canonical files.
"""

from __future__ import annotations

from typing import Optional

from .decomposition import TreeDecomposition, make_decomposition
from .graph import Graph, build_graph


class FileFormatError(ValueError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def parse_graph_text(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, parts in _content_lines(text):
        if parts[0] == "p":
            if n is not None:
                raise FileFormatError("duplicate header line", lineno)
            if len(parts) != 3:
                raise FileFormatError(f"header must be 'p <n> <m>', got {' '.join(parts)}", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise FileFormatError("non-integer header fields", lineno) from None
            if n < 0 or m < 0:
                raise FileFormatError("negative counts in header", lineno)
            continue
        if n is None:
            raise FileFormatError("edge line before header", lineno)
        if len(parts) != 2:
            raise FileFormatError(f"edge line must be '<u> <v>', got {' '.join(parts)}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FileFormatError("non-integer edge endpoints", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise FileFormatError(f"endpoint out of range 1..{n}: {u} {v}", lineno)
        if u == v:
            raise FileFormatError(f"self-loop {u} {v}", lineno)
        if len(edges) == m:
            raise FileFormatError(f"more than the declared {m} edge lines", lineno)
        edges.append((u - 1, v - 1))
    if n is None:
        raise FileFormatError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise FileFormatError(f"declared {m} edges but found {len(edges)} edge lines")
    return build_graph(n, edges)


def parse_graph_file(path) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_graph_text(handle.read())


def graph_to_text(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def write_graph_file(path, g: Graph) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(graph_to_text(g))


def parse_td_text(text: str, host: Optional[Graph] = None) -> TreeDecomposition:
    """Parse a decomposition; validity against the host is a separate step.

    Tree edges forming a cycle are accepted here on purpose: the validate
    operation reports them with a witness.
    """
    header = None
    bags = {}
    edges = []
    for lineno, parts in _content_lines(text):
        if parts[0] == "s":
            if header is not None:
                raise FileFormatError("duplicate 's td' header", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise FileFormatError(
                    f"header must be 's td <bags> <max-bag> <n>', got {' '.join(parts)}",
                    lineno,
                )
            try:
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise FileFormatError("non-integer header fields", lineno) from None
            continue
        if header is None:
            raise FileFormatError("content before 's td' header", lineno)
        count, _max_bag, n = header
        if parts[0] == "b":
            if len(parts) < 2:
                raise FileFormatError("bag line without id", lineno)
            try:
                bag_id = int(parts[1])
                vertices = [int(x) for x in parts[2:]]
            except ValueError:
                raise FileFormatError("non-integer bag contents", lineno) from None
            if not 1 <= bag_id <= count:
                raise FileFormatError(f"bag id {bag_id} out of range 1..{count}", lineno)
            if bag_id in bags:
                raise FileFormatError(f"duplicate bag id {bag_id}", lineno)
            for v in vertices:
                if not 1 <= v <= n:
                    raise FileFormatError(f"bag vertex {v} out of range 1..{n}", lineno)
            bags[bag_id] = frozenset(v - 1 for v in vertices)
            continue
        if len(parts) != 2:
            raise FileFormatError(f"tree edge must be '<id> <id>', got {' '.join(parts)}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise FileFormatError("non-integer tree edge", lineno) from None
        if not (1 <= a <= count and 1 <= b <= count):
            raise FileFormatError(f"tree edge references unknown bag id: {a} {b}", lineno)
        edges.append((a - 1, b - 1))
    if header is None:
        raise FileFormatError("missing 's td' header")
    count, _max_bag, n = header
    if host is not None and host.n != n:
        raise FileFormatError(
            f"decomposition is for {n} vertices but the graph has {host.n}"
        )
    missing = [i for i in range(1, count + 1) if i not in bags]
    if missing:
        raise FileFormatError(f"missing bag lines for ids {missing}")
    return make_decomposition([bags[i] for i in range(1, count + 1)], edges)


def parse_td_file(path, host: Optional[Graph] = None) -> TreeDecomposition:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_td_text(handle.read(), host=host)


def td_to_text(td: TreeDecomposition, n: int) -> str:
    max_bag = max((len(bag) for bag in td.bags), default=0)
    lines = [f"s td {td.node_count} {max_bag} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        contents = " ".join(str(v + 1) for v in sorted(bag))
        lines.append(f"b {i} {contents}".rstrip())
    for a, b in sorted(td.tree_edges):
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def write_td_file(path, td: TreeDecomposition, n: int) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(td_to_text(td, n))


def parse_matching_text(text: str) -> tuple:
    """Sidecar matching file: one '<u> <v>' line per edge, 1-based."""
    edges = []
    for lineno, parts in _content_lines(text):
        if len(parts) != 2:
            raise FileFormatError(f"matching line must be '<u> <v>', got {' '.join(parts)}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FileFormatError("non-integer matching endpoints", lineno) from None
        if u < 1 or v < 1:
            raise FileFormatError("matching endpoints must be positive", lineno)
        edges.append((u - 1, v - 1))
    return tuple(edges)


def parse_matching_file(path) -> tuple:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_matching_text(handle.read())


def parse_sets_text(text: str) -> tuple:
    """Sidecar sets file: one whitespace-separated 1-based set per line."""
    sets = []
    for lineno, parts in _content_lines(text):
        try:
            members = [int(x) for x in parts]
        except ValueError:
            raise FileFormatError("non-integer set member", lineno) from None
        if any(v < 1 for v in members):
            raise FileFormatError("set members must be positive", lineno)
        sets.append(frozenset(v - 1 for v in members))
    return tuple(sets)


def parse_sets_file(path) -> tuple:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_sets_text(handle.read())
