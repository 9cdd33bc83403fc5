"""Which vertex pairs monitor which edges, and MEG-set verification.

A pair {u, v} monitors edge e when deleting e changes dist(u, v), i.e. when
every shortest u-v path uses e.  Two criteria are implemented and must agree:

* removal: BFS in g - e and compare distances (slow, obviously correct);
* counting: sigma(u, v) equals the number of shortest u-v paths through e.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

import numpy as np

from .errors import UnknownVertex
from .graph import UNREACHABLE, DistanceOracle, EdgeId, Graph, apsp, dist_without_edge

Pair = tuple[int, int]


def _through(oracle: DistanceOracle, a: int, p: int, q: int, b: int) -> int:
    """Number of shortest a-b paths that traverse p then q (pq an edge)."""
    dap, dqb, dab = oracle.d(a, p), oracle.d(q, b), oracle.d(a, b)
    if UNREACHABLE in (dap, dqb, dab) or dap + 1 + dqb != dab:
        return 0
    return oracle.count(a, p) * oracle.count(q, b)


def pair_monitors_edge(
    g: Graph,
    oracle: DistanceOracle,
    u: int,
    v: int,
    e: EdgeId | tuple[int, int],
    criterion: str = "removal",
) -> bool:
    x, y = g.edge(*e)
    if criterion == "removal":
        return oracle.d(u, v) != dist_without_edge(g, (x, y), u, v)
    if criterion == "count":
        if oracle.d(u, v) == UNREACHABLE:
            return False
        through = _through(oracle, u, x, y, v) + _through(oracle, u, y, x, v)
        return through == oracle.count(u, v)
    raise ValueError(f"unknown criterion {criterion!r}")


def _monitor_block(dist: np.ndarray, sigma: np.ndarray, xs: np.ndarray, ys: np.ndarray, among: np.ndarray) -> np.ndarray:
    """Boolean (edges, k, k) array: does pair (among[a], among[b]) monitor edge (xs[e], ys[e])?"""
    d = dist[np.ix_(among, among)]
    sg = sigma[np.ix_(among, among)]
    reach = d != UNREACHABLE
    total = 0
    for p, q in ((xs, ys), (ys, xs)):
        dp = dist[np.ix_(among, p)].T[:, :, None]  # dist(a, p_e)
        dq = dist[np.ix_(q, among)][:, None, :]  # dist(q_e, b)
        ok = (dp + 1 + dq == d[None]) & (dp != UNREACHABLE) & (dq != UNREACHABLE) & reach[None]
        sp = sigma[np.ix_(among, p)].T[:, :, None]
        sq = sigma[np.ix_(q, among)][:, None, :]
        total = total + np.where(ok, sp * sq, 0)
    return reach[None] & (total == sg[None])


@dataclass(frozen=True, eq=False)
class MonitorTable:
    """Per-edge monitoring pairs of a graph (lexicographically sorted)."""

    graph: Graph
    oracle: DistanceOracle
    pairs: Mapping[EdgeId, tuple[Pair, ...]]

    @cached_property
    def pair_masks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple((1 << u) | (1 << v) for u, v in self.pairs[e]) for e in self.graph.edges)

    def covers(self, mask: int) -> bool:
        for masks in self.pair_masks:
            for pm in masks:
                if pm & mask == pm:
                    break
            else:
                return False
        return True

    def unmonitored(self, mask: int) -> list[EdgeId]:
        out = []
        for e, masks in zip(self.graph.edges, self.pair_masks):
            if not any(pm & mask == pm for pm in masks):
                out.append(e)
        return out


def monitoring_table(
    g: Graph, oracle: DistanceOracle | None = None, among: Iterable[int] | None = None
) -> MonitorTable:
    """Monitoring pairs of every edge.

    With ``among``, only pairs inside that vertex subset are listed; the table
    then answers ``covers`` exactly for sets drawn from the subset.
    """
    if oracle is None and among is None:
        return _cached_table(g)
    return _build_table(g, oracle or apsp(g), among)


@lru_cache(maxsize=128)
def _cached_table(g: Graph) -> MonitorTable:
    return _build_table(g, apsp(g))


_BLOCK_CELLS = 1 << 22


def _build_table(g: Graph, oracle: DistanceOracle, among: Iterable[int] | None = None) -> MonitorTable:
    sigma = oracle.sigma_int64
    if sigma is None:
        sigma = oracle.sigma
    verts = np.arange(g.n) if among is None else np.array(sorted(set(among)), dtype=np.int64)
    k = len(verts)
    pairs: dict[EdgeId, tuple[Pair, ...]] = {}
    if g.m == 0 or k < 2:
        return MonitorTable(g, oracle, {e: () for e in g.edges})
    ia, ib = np.triu_indices(k, k=1)
    xs = np.array([e.lo for e in g.edges], dtype=np.int64)
    ys = np.array([e.hi for e in g.edges], dtype=np.int64)
    step = max(1, _BLOCK_CELLS // (k * k))
    for start in range(0, g.m, step):
        block = _monitor_block(oracle.dist, sigma, xs[start:start + step], ys[start:start + step], verts)
        for off, hit in enumerate(block[:, ia, ib]):
            e = g.edges[start + off]
            pairs[e] = tuple(zip(verts[ia[hit]].tolist(), verts[ib[hit]].tolist()))
    return MonitorTable(g, oracle, pairs)


def monitoring_pairs(g: Graph, e: EdgeId | tuple[int, int], oracle: DistanceOracle | None = None) -> frozenset[Pair]:
    e = g.edge(*e)
    return frozenset(monitoring_table(g, oracle).pairs[e])


# -- MEG-sets ----------------------------------------------------------------------


@dataclass(frozen=True)
class MegVerdict:
    is_meg: bool
    unmonitored: tuple[EdgeId, ...]
    certificate: dict[EdgeId, Pair]

    def to_json(self) -> dict:
        return {
            "is_meg": self.is_meg,
            "unmonitored": [list(e) for e in self.unmonitored],
            "certificate": {f"{e.lo}-{e.hi}": list(p) for e, p in self.certificate.items()},
        }


def to_mask(g: Graph, s: Iterable[int]) -> int:
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise UnknownVertex(f"vertex {v} not in graph of order {g.n}")
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def is_meg_set(g: Graph, s: Iterable[int], table: MonitorTable | None = None) -> MegVerdict:
    table = table or monitoring_table(g)
    mask = to_mask(g, s)
    unmonitored = []
    certificate = {}
    for e, masks in zip(g.edges, table.pair_masks):
        for pm, pair in zip(masks, table.pairs[e]):
            if pm & mask == pm:
                certificate[e] = pair
                break
        else:
            unmonitored.append(e)
    return MegVerdict(not unmonitored, tuple(unmonitored), certificate)


def forced_vertices(g: Graph, table: MonitorTable | None = None) -> frozenset[int]:
    """Vertices lying in every MEG-set: v such that V - {v} is not a MEG-set."""
    table = table or monitoring_table(g)
    full = (1 << g.n) - 1
    return frozenset(v for v in range(g.n) if not table.covers(full & ~(1 << v)))


def unique_minimal_meg(g: Graph, table: MonitorTable | None = None) -> tuple[bool, frozenset[int] | None]:
    table = table or monitoring_table(g)
    forced = forced_vertices(g, table)
    if table.covers(to_mask(g, forced)):
        return True, forced
    return False, None
