"""Graph interchange formats (graph6, edge lists, DOT) and the JSON report
document written by the verification harness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .graph import Graph, GraphInputError, normalize_edge
from .verdicts import Verdict

__all__ = [
    "FormatError",
    "parse_graph6",
    "write_graph6",
    "read_graph6_lines",
    "parse_edge_list",
    "write_edge_list",
    "write_dot",
    "ClaimResult",
    "CandidateSet",
    "ReportDocument",
    "write_report",
    "read_report",
    "report_to_dict",
    "report_from_dict",
    "REPORT_SCHEMA",
    "SCHEMA_VERSION",
]

GRAPH6_HEADER = b">>graph6<<"
GRAPH6_MAX_N = 68719476735


class FormatError(ValueError):
    """Malformed input; ``offset`` is a byte offset (graph6) or a 1-based
    line number (edge lists)."""

    def __init__(self, message: str, offset: int | None = None):
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(message + where)
        self.offset = offset


# -- graph6 -----------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= GRAPH6_MAX_N:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"n={n} exceeds the graph6 limit")


def write_graph6(g: Graph) -> bytes:
    """Encode ``g`` as graph6 (no header, no trailing newline)."""
    out = bytearray(_encode_n(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        nbrs = g.adjacency[j]
        for i in range(j):
            acc = (acc << 1) | (i in nbrs)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(text: bytes | str) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        data = data[base:]
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b!r} outside graph6 range 63..126", base + i)
    if not data:
        raise FormatError("empty graph6 string", base)

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 8-byte size header", base + len(data))
        n, pos = 0, 8
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
    else:
        if len(data) < 4:
            raise FormatError("truncated 4-byte size header", base + len(data))
        n, pos = 0, 4
        for b in data[1:4]:
            n = (n << 6) | (b - 63)

    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = data[pos:]
    if len(body) < nbytes:
        raise FormatError(
            f"truncated edge data: expected {nbytes} bytes, got {len(body)}", base + len(data)
        )
    if len(body) > nbytes:
        raise FormatError("trailing bytes after edge data", base + pos + nbytes)
    pad = nbytes * 6 - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise FormatError("nonzero padding bits", base + pos + nbytes - 1)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            b = body[k // 6] - 63
            if (b >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def read_graph6_lines(text: bytes | str) -> list[Graph]:
    """Parse a file of graph6 strings, one per line; blank lines skipped."""
    data = text.encode("ascii") if isinstance(text, str) else text
    return [parse_graph6(line.strip()) for line in data.splitlines() if line.strip()]


# -- edge lists ---------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines. ``#`` starts a comment.

    The first line is read as an ``n m`` header when exactly ``m`` edge lines
    follow it and every id fits below ``n``; otherwise it is an edge. A lone
    ``0 0`` is a loop, not an empty header.
    """
    rows: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise FormatError(f"expected two integers, got {line!r}", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise FormatError(f"malformed token in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise FormatError("negative vertex id", lineno)
        rows.append((lineno, u, v))

    n = None
    if rows:
        _, h0, h1 = rows[0]
        rest = rows[1:]
        lone_loop = not rest and h0 == h1
        if not lone_loop and len(rest) == h1 and all(max(u, v) < h0 for _, u, v in rest):
            n, rows = h0, rest
    edges = []
    for lineno, u, v in rows:
        if u == v:
            raise FormatError(f"loop edge {u} {v}", lineno)
        edges.append((u, v))
    if n is None:
        n = max((max(u, v) for u, v in edges), default=-1) + 1
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    if g.n == 0:
        return ""
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# -- DOT ---------------------------------------------------------------------


def write_dot(
    g: Graph,
    added_edges: Iterable[Sequence[int]] = (),
    labeled: Iterable[int] = (),
    name: str = "G",
) -> str:
    """Render ``g`` as a DOT graph. Edges in ``added_edges`` are drawn dashed
    red with ``origin="added"``; vertices in ``labeled`` are filled."""
    added = {normalize_edge(int(e[0]), int(e[1])) for e in added_edges}
    marked = g.check_vertices(labeled)
    for u, v in added:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise GraphInputError(f"annotated edge ({u}, {v}) is not in the graph")
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        if v in marked:
            lines.append(f'  {v} [style=filled, fillcolor=gold, labeled="true"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges():
        if (u, v) in added:
            lines.append(f'  {u} -- {v} [color=red, style=dashed, origin="added"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- reports -------------------------------------------------------------------

SCHEMA_VERSION = "1"

INPUT_FORMATS = ("graph6", "edgelist", "generated", "inline")

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "domstruct verification report",
    "type": "object",
    "required": [
        "schema_version", "graph_id", "input_format", "n", "m", "graph6",
        "claims", "candidate_sets", "oracle_gamma", "runtimes", "counterexample",
    ],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "graph_id": {"type": "string"},
        "input_format": {"enum": list(INPUT_FORMATS)},
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "graph6": {"type": "string"},
        "claims": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "verdict", "details"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "verdict": {"enum": [v.value for v in Verdict]},
                    "details": {"type": "object"},
                },
            },
        },
        "candidate_sets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["role", "members", "size"],
                "additionalProperties": False,
                "properties": {
                    "role": {"type": "string"},
                    "members": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "size": {"type": "integer", "minimum": 0},
                },
            },
        },
        "oracle_gamma": {"type": ["integer", "null"], "minimum": 0},
        "runtimes": {"type": "object", "additionalProperties": {"type": "number"}},
        "counterexample": {"type": ["string", "null"]},
    },
}


@dataclass
class ClaimResult:
    name: str
    verdict: Verdict
    details: dict[str, Any] = field(default_factory=dict)


@dataclass
class CandidateSet:
    role: str
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class ReportDocument:
    graph_id: str
    input_format: str
    n: int
    m: int
    graph6: str = ""
    claims: list[ClaimResult] = field(default_factory=list)
    candidate_sets: list[CandidateSet] = field(default_factory=list)
    oracle_gamma: int | None = None
    runtimes: dict[str, float] = field(default_factory=dict)
    counterexample: str | None = None

    def __post_init__(self) -> None:
        if self.input_format not in INPUT_FORMATS:
            raise ValueError(f"unknown input format {self.input_format!r}")
        if self.counterexample is not None and not any(
            c.verdict in (Verdict.REFUTED, Verdict.STRUCTURE_VIOLATION) for c in self.claims
        ):
            raise ValueError("a counterexample requires a REFUTED or STRUCTURE_VIOLATION claim")

    def claim(self, name: str) -> ClaimResult:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)


def report_to_dict(doc: ReportDocument) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "graph_id": doc.graph_id,
        "input_format": doc.input_format,
        "n": doc.n,
        "m": doc.m,
        "graph6": doc.graph6,
        "claims": [
            {"name": c.name, "verdict": Verdict(c.verdict).value, "details": c.details}
            for c in doc.claims
        ],
        "candidate_sets": [
            {"role": s.role, "members": list(s.members), "size": s.size}
            for s in doc.candidate_sets
        ],
        "oracle_gamma": doc.oracle_gamma,
        "runtimes": dict(doc.runtimes),
        "counterexample": doc.counterexample,
    }


def report_from_dict(d: dict[str, Any]) -> ReportDocument:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise FormatError(f"unsupported report schema version {d.get('schema_version')!r}")
    return ReportDocument(
        graph_id=d["graph_id"],
        input_format=d["input_format"],
        n=d["n"],
        m=d["m"],
        graph6=d["graph6"],
        claims=[ClaimResult(c["name"], Verdict(c["verdict"]), c["details"]) for c in d["claims"]],
        candidate_sets=[CandidateSet(s["role"], tuple(s["members"])) for s in d["candidate_sets"]],
        oracle_gamma=d["oracle_gamma"],
        runtimes=dict(d["runtimes"]),
        counterexample=d["counterexample"],
    )


def write_report(doc: ReportDocument, indent: int | None = 2) -> str:
    """Serialize with a fixed field order; details dicts are key-sorted."""
    payload = report_to_dict(doc)
    for c in payload["claims"]:
        c["details"] = json.loads(json.dumps(c["details"], sort_keys=True))
    return json.dumps(payload, indent=indent)


def read_report(text: str) -> ReportDocument:
    return report_from_dict(json.loads(text))
