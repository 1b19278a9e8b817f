"""Explicit simple graphs read from edge lists, and degree-pair partitions."""

from __future__ import annotations

import io
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ParseError, ValidationError

__all__ = [
    "Graph",
    "DegreePairPartition",
    "load_edge_list",
    "read_edge_list",
    "degree_pair_partition",
    "pair_key",
]


def pair_key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValidationError("vertex_count must be nonnegative")
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValidationError(f"edge ({u}, {v}) has an endpoint outside 0..{self.vertex_count - 1}")
        normal = frozenset(pair_key(u, v) for u, v in self.edges)
        if len(normal) != len(self.edges):
            raise ValidationError("duplicate edge given in both orientations")
        object.__setattr__(self, "edges", normal)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertex_count: int | None = None) -> Graph:
        seen: set[tuple[int, int]] = set()
        top = -1
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            key = pair_key(u, v)
            if key in seen:
                raise ValidationError(f"duplicate edge {key}")
            seen.add(key)
            top = max(top, u, v)
        n = top + 1 if vertex_count is None else vertex_count
        return cls(n, frozenset(seen))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        adj: dict[int, list[int]] = {v: [] for v in range(self.vertex_count)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        todo = deque([0])
        while todo:
            for w in adj[todo.popleft()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.vertex_count


@dataclass(frozen=True)
class DegreePairPartition:
    """Edge counts keyed by the unordered pair of endpoint degrees.

    ``claimed_edges`` is the edge count asserted by a family description,
    when there is one; graphs and plain partitions leave it ``None``.
    """

    counts: Mapping[tuple[int, int], int]
    total_edges: int
    vertex_count: int
    claimed_edges: int | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        counts = {}
        for (i, j), c in self.counts.items():
            if i < 1 or j < 1:
                raise ValueError(f"degree keys must be >= 1, got {(i, j)}")
            key = pair_key(i, j)
            counts[key] = counts.get(key, 0) + int(c)
        object.__setattr__(self, "counts", dict(sorted(counts.items())))

    @classmethod
    def from_counts(cls, counts: Mapping[tuple[int, int], int], vertex_count: int, **kw) -> DegreePairPartition:
        return cls(counts, sum(counts.values()), vertex_count, **kw)


def _parse_int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", line=lineno) from None
    if value < 0:
        raise ParseError(f"negative vertex id {value}", line=lineno)
    return value


def read_edge_list(lines: Iterable[str]) -> Graph:
    """Build a graph from edge-list lines.

    An optional leading ``# n m`` header declares the vertex and edge counts;
    other ``#`` lines are comments.
    """
    declared_n = declared_m = None
    edges = []
    seen_content = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = line[1:].split()
            if not seen_content and declared_n is None and len(fields) == 2 and all(f.isdigit() for f in fields):
                declared_n, declared_m = int(fields[0]), int(fields[1])
            continue
        seen_content = True
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected two vertex ids, got {len(fields)} fields", line=lineno)
        edges.append((_parse_int(fields[0], lineno), _parse_int(fields[1], lineno), lineno))

    seen: set[tuple[int, int]] = set()
    for u, v, lineno in edges:
        if u == v:
            raise ValidationError(f"line {lineno}: self-loop at vertex {u}")
        key = pair_key(u, v)
        if key in seen:
            raise ValidationError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
    top = max((max(u, v) for u, v, _ in edges), default=-1)
    n = top + 1
    if declared_n is not None:
        if declared_n < n:
            raise ValidationError(f"header declares {declared_n} vertices but ids reach {top}")
        if declared_m != len(seen):
            raise ValidationError(f"header declares {declared_m} edges, found {len(seen)}")
        n = declared_n
    return Graph(n, frozenset(seen))


def load_edge_list(text) -> Graph:
    """Parse edge-list text (``str`` or ``bytes``)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return read_edge_list(io.StringIO(text))


def degree_pair_partition(g: Graph) -> DegreePairPartition:
    deg = g.degrees()
    tally = Counter(pair_key(deg[u], deg[v]) for u, v in g.edges)
    return DegreePairPartition(dict(tally), g.edge_count, g.vertex_count)
