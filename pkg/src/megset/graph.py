"""Immutable simple graphs, BFS distances and shortest-path counts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DuplicateEdge, IndexOutOfRange, LoopEdge, ParseError, UnknownEdge, UnknownVertex

# Distance value for vertex pairs in different components. Never a valid hop count,
# so "distance changed" comparisons stay exact.
UNREACHABLE = -1


class EdgeId(NamedTuple):
    """Canonical undirected edge, ``lo < hi``."""

    lo: int
    hi: int

    @classmethod
    def of(cls, u: int, v: int) -> "EdgeId":
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        return cls(u, v) if u < v else cls(v, u)

    def __str__(self) -> str:
        return f"{self.lo}-{self.hi}"


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[EdgeId, ...]
    labels: tuple[str, ...] | None = None
    comments: tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def edge_set(self) -> frozenset[EdgeId]:
        return frozenset(self.edges)

    @cached_property
    def edge_index(self) -> dict[EdgeId, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.edges, self.labels) == (other.n, other.edges, other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and EdgeId.of(u, v) in self.edge_set

    def edge(self, u: int, v: int) -> EdgeId:
        """Return the canonical id of edge ``uv``, raising UnknownEdge if absent."""
        if u == v or EdgeId.of(u, v) not in self.edge_set:
            raise UnknownEdge(f"no edge {u}-{v}")
        return EdgeId.of(u, v)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex(self, token: str) -> int:
        """Resolve a label, or failing that a 0-based index, to a vertex."""
        if self.labels is not None and token in self.label_index:
            return self.label_index[token]
        try:
            v = int(token)
        except ValueError:
            raise UnknownVertex(f"unknown vertex {token!r}") from None
        if not 0 <= v < self.n:
            raise UnknownVertex(f"vertex index {v} out of range")
        return v

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels or ())}

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices``; also returns new-index -> old-index."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        labels = [self.label(v) for v in keep] if self.labels is not None else None
        return build_graph(len(keep), edges, labels), keep

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        labels = None
        if self.labels is not None:
            inv = [0] * self.n
            for v, p in enumerate(perm):
                inv[p] = v
            labels = [self.labels[inv[i]] for i in range(self.n)]
        return build_graph(self.n, edges, labels)

    def with_comments(self, *comments: str) -> "Graph":
        return Graph(self.n, self.edges, self.labels, tuple(comments))


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    labels: Sequence[str] | None = None,
    comments: Sequence[str] = (),
) -> Graph:
    if n < 0:
        raise IndexOutOfRange(f"negative vertex count {n}")
    seen: set[EdgeId] = set()
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
        e = EdgeId.of(u, v)
        if e in seen:
            raise DuplicateEdge(f"edge {e} given twice")
        seen.add(e)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise IndexOutOfRange(f"{len(labels)} labels for {n} vertices")
    return Graph(n, tuple(sorted(seen)), labels, tuple(comments))


# -- distances -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DistanceOracle:
    """All-pairs hop distances and exact shortest-path counts.

    ``dist`` is an int64 matrix using UNREACHABLE for separated pairs;
    ``sigma`` is an object matrix of Python ints (0 for separated pairs).
    """

    dist: np.ndarray
    sigma: np.ndarray

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def d(self, u: int, v: int) -> int:
        return int(self.dist[u, v])

    def count(self, u: int, v: int) -> int:
        return self.sigma[u, v]

    @cached_property
    def sigma_int64(self) -> np.ndarray | None:
        """int64 copy of sigma when every product of two counts fits in int64."""
        if self.n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        if max(self.sigma.flat) >= 2**31:
            return None
        return self.sigma.astype(np.int64)


def _bfs_counts(adj: Sequence[Sequence[int]], source: int, n: int) -> tuple[list[int], list[int]]:
    dist = [UNREACHABLE] * n
    sigma = [0] * n
    dist[source] = 0
    sigma[source] = 1
    queue = deque([source])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dx
                queue.append(y)
            if dist[y] == dx:
                sigma[y] += sigma[x]
    return dist, sigma


def apsp(g: Graph) -> DistanceOracle:
    n = g.n
    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    sigma = np.zeros((n, n), dtype=object)
    for s in range(n):
        d, c = _bfs_counts(g.adj, s, n)
        dist[s] = d
        sigma[s] = c
    dist.setflags(write=False)
    sigma.setflags(write=False)
    return DistanceOracle(dist, sigma)


def dist_without_edge(g: Graph, e: EdgeId | Sequence[int], u: int, v: int) -> int:
    """Distance from u to v in ``g - e``; the graph itself is untouched."""
    x, y = g.edge(*e)
    if u == v:
        return 0
    seen = {u: 0}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for b in g.adj[a]:
            if b in seen or (a == x and b == y) or (a == y and b == x):
                continue
            seen[b] = seen[a] + 1
            if b == v:
                return seen[b]
            queue.append(b)
    return UNREACHABLE


class GraphMetrics(NamedTuple):
    diameter: int
    leaves: int
    connected: bool
    components: tuple[tuple[int, ...], ...]


def components(g: Graph) -> tuple[tuple[int, ...], ...]:
    comp = [-1] * g.n
    parts = []
    for s in range(g.n):
        if comp[s] != -1:
            continue
        comp[s] = len(parts)
        members = [s]
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in g.adj[a]:
                if comp[b] == -1:
                    comp[b] = comp[s]
                    members.append(b)
                    queue.append(b)
        parts.append(tuple(sorted(members)))
    return tuple(parts)


def graph_metrics(g: Graph, oracle: DistanceOracle | None = None) -> GraphMetrics:
    """Diameter over reachable pairs, degree-one count L(G), and components."""
    oracle = oracle or apsp(g)
    diameter = int(oracle.dist.max()) if g.n else 0
    leaves = sum(1 for v in range(g.n) if g.degree(v) == 1)
    parts = components(g)
    return GraphMetrics(diameter, leaves, len(parts) <= 1, parts)


# -- DIMACS edge format ------------------------------------------------------------


def write_dimacs(g: Graph) -> str:
    lines = [f"c {c}" if c else "c" for c in g.comments]
    lines.append(f"p edge {g.n} {g.m}")
    if g.labels is not None:
        lines.extend(f"l {v + 1} {lab}" for v, lab in enumerate(g.labels))
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Graph:
    """Parse ``p edge`` / ``e u v`` / ``l u text`` lines (1-based vertices)."""
    header = None
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    labels: dict[int, str] = {}
    comments: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tag, _, rest = line.partition(" ")
        rest = rest.strip()
        if tag == "c":
            comments.append(rest)
        elif tag == "p":
            fields = rest.split()
            if header is not None:
                raise ParseError("second header line", lineno)
            if len(fields) != 3 or fields[0] != "edge":
                raise ParseError(f"bad header {line!r}, expected 'p edge <n> <m>'", lineno)
            header = (_int(fields[1], lineno, line), _int(fields[2], lineno, line))
        elif tag == "e":
            fields = rest.split()
            if len(fields) != 2:
                raise ParseError(f"bad edge line {line!r}", lineno)
            edges.append((_int(fields[0], lineno, line) - 1, _int(fields[1], lineno, line) - 1))
            edge_lines.append(lineno)
        elif tag == "l":
            idx, _, text_ = rest.partition(" ")
            v = _int(idx, lineno, line) - 1
            if v in labels:
                raise ParseError(f"vertex {v + 1} labelled twice", lineno)
            labels[v] = text_.strip()
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno, raw.find(tag) + 1)
    if header is None:
        raise ParseError("missing 'p edge <n> <m>' header")
    n, m = header
    if m != len(edges):
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    label_list = None
    if labels:
        if set(labels) != set(range(n)):
            raise ParseError("labels must be given for every vertex or none")
        label_list = [labels[v] for v in range(n)]
    seen: set[tuple[int, int]] = set()
    for (u, v), lineno in zip(edges, edge_lines):
        try:
            build_graph(n, [(u, v)])
        except (LoopEdge, IndexOutOfRange) as exc:
            raise ParseError(str(exc), lineno) from exc
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u + 1}-{v + 1}", lineno)
        seen.add(key)
    return build_graph(n, edges, label_list, comments)


def _int(token: str, lineno: int, line: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno, line.find(token) + 1) from None
