import itertools
import random

import networkx as nx
import pytest

from megset.graph import Graph, build_graph, components

ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    """Log one acceptance line (printed in the terminal summary) and assert it."""
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, f"{criterion}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- graph corpora --------------------------------------------------------------------


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build_graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def random_connected(rng: random.Random, n: int) -> Graph:
    p = rng.uniform(0.3, 0.9)
    while True:
        g = random_graph(rng, n, p)
        if len(components(g)) <= 1:
            return g


def random_tree(rng: random.Random, n: int) -> Graph:
    if n <= 2:
        return build_graph(n, [(0, 1)] if n == 2 else [])
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    return build_graph(n, nx.from_prufer_sequence(prufer).edges())


def all_labeled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield build_graph(n, [p for p, b in zip(pairs, bits) if b])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


# -- independent oracles (networkx only) ----------------------------------------------


def nx_monitoring_pairs(g: Graph) -> dict:
    """Edge -> set of pairs whose distance changes when the edge is deleted."""
    h = to_nx(g)
    base = dict(nx.all_pairs_shortest_path_length(h))
    out = {}
    for e in g.edges:
        h.remove_edge(*e)
        cut = dict(nx.all_pairs_shortest_path_length(h))
        h.add_edge(*e)
        out[e] = {(u, v) for u, v in itertools.combinations(range(g.n), 2) if base[u].get(v) != cut[u].get(v)}
    return out


def nx_is_meg(mon: dict, s) -> bool:
    s = set(s)
    return all(any(u in s and v in s for u, v in pairs) for pairs in mon.values())


def nx_meg(g: Graph) -> int:
    mon = nx_monitoring_pairs(g)
    for k in range(g.n + 1):
        if any(nx_is_meg(mon, c) for c in itertools.combinations(range(g.n), k)):
            return k
    raise AssertionError


def count_shortest_paths_by_enumeration(g: Graph, u: int, v: int) -> tuple[int | None, int]:
    """(distance, number of shortest paths) by listing every simple path."""
    if u == v:
        return 0, 1
    lengths = [len(p) - 1 for p in nx.all_simple_paths(to_nx(g), u, v)]
    if not lengths:
        return None, 0
    d = min(lengths)
    return d, lengths.count(d)


@pytest.fixture
def rng():
    return random.Random(20240607)
