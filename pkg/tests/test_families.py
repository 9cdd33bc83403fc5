import pytest

from conftest import nx_meg, random_tree
from megset.errors import BadParameter
from megset.families import (
    C5_KING_HOLES,
    FamilySpec,
    complete,
    cycle,
    cycle_meg_set,
    generate,
    is_star,
    king_torus_witness_c5,
    multipartite,
    pendant_cycle_example,
    path,
    product_provenance,
    tagged_product,
    toroidal_king,
    torus,
    torus_witness,
)
from megset.graph import build_graph, graph_metrics
from megset.monitor import is_meg_set
from megset.products import CARTESIAN, STRONG, cartesian, join_set, strong
from megset.solver import enumerate_minimal_meg_sets, meg_min


def test_spec_parsing():
    assert FamilySpec.parse("torus 5") == FamilySpec("torus", (5,))
    assert FamilySpec.parse("king:3:3") == FamilySpec("king", (3, 3))
    assert str(FamilySpec("grid", (2, 3))) == "grid 2 3"
    with pytest.raises(BadParameter):
        FamilySpec.parse("path x")


def test_generate_examples():
    p4 = generate(FamilySpec("path", (4,)))
    assert (p4.n, len(p4.edges)) == (4, 3)
    assert p4.comments == ("family path 4",)
    assert generate(FamilySpec("torus", (5,))).edges == torus(5).edges
    assert generate(FamilySpec("king", (3, 3))).edges == strong(path(3), path(3)).graph.edges
    assert generate(FamilySpec("pendant_cycle")).n == 7


@pytest.mark.parametrize("text", ["path", "cycle 2", "complete 0", "grid 3", "mobius 5", "pendant_cycle 1"])
def test_generate_rejects(text):
    with pytest.raises((BadParameter, ValueError)):
        generate(FamilySpec.parse(text))


def test_product_provenance_round_trip():
    g = generate(FamilySpec("toroidal_king", (5, 6)))
    assert product_provenance(g) == (STRONG, FamilySpec("cycle", (5,)), FamilySpec("cycle", (6,)))
    t = tagged_product(CARTESIAN, FamilySpec("path", (3,)), FamilySpec("cycle", (5,)))
    assert product_provenance(t) == (CARTESIAN, FamilySpec("path", (3,)), FamilySpec("cycle", (5,)))
    assert product_provenance(path(3)) is None


def test_trees_meg_equals_leaves(rng):
    for _ in range(40):
        g = random_tree(rng, rng.randint(2, 12))
        assert meg_min(g).meg == graph_metrics(g).leaves


def test_paths_and_stars():
    for m in range(2, 9):
        assert meg_min(path(m)).witness == {0, m - 1}
    for k in range(2, 7):
        star = multipartite(1, k)
        assert meg_min(star).meg == k


@pytest.mark.parametrize("m, expected", [(3, 3), (4, 4), (5, 3), (6, 3), (7, 3), (8, 3), (9, 3)])
def test_cycle_meg(m, expected):
    assert meg_min(cycle(m)).meg == expected


def test_cycle_meg_set():
    for m in range(5, 13):
        s = cycle_meg_set(m)
        assert len(s) == 3 and is_meg_set(cycle(m), s).is_meg
    with pytest.raises(BadParameter):
        cycle_meg_set(4)


def test_complete_graphs_need_everything():
    for r in range(2, 7):
        assert meg_min(complete(r)).meg == r


def test_multipartite_non_star_needs_everything():
    for parts in [(2, 2), (2, 3), (3, 3), (1, 1, 2), (2, 2, 2), (1, 2, 3), (2, 3, 3), (4, 4)]:
        assert not is_star(parts)
        g = multipartite(*parts)
        assert meg_min(g).meg == g.n
    assert nx_meg(multipartite(2, 3)) == 5


@pytest.mark.parametrize("m", [5, 6, 7, 8, 9, 10])
def test_torus_witness(m):
    w = torus_witness(m)
    assert len(w) == 3 * m
    assert is_meg_set(torus(m), w).is_meg


def test_torus_witness_rows_are_rotations():
    m = 7
    base = {j for j in range(m) if j in torus_witness(m)}
    for i in range(m):
        row = {j for j in range(m) if i * m + j in torus_witness(m)}
        assert row == {(x - i) % m for x in base}


def test_toroidal_king_c5():
    g = toroidal_king(5)
    w = king_torus_witness_c5()
    assert len(w) == 20
    assert all(u in w or v in w for u, v in g.edges)
    holes = [a * 5 + b for a, b in C5_KING_HOLES]
    assert not any(g.has_edge(u, v) for u in holes for v in holes if u < v)
    # The 20-vertex set leaves the orthogonal edges between holes and their
    # neighbours unmonitored: every vertex of C5 x C5 (strong) is forced.
    verdict = is_meg_set(g, w)
    assert not verdict.is_meg
    assert len(verdict.unmonitored) == 20


def test_pendant_cycle_example():
    g = pendant_cycle_example()
    res = meg_min(g)
    assert res.meg == 3
    assert {g.label(v) for v in res.witness} == {"a'", "b'", "d"}
    t = {g.vertex(x) for x in ("a'", "b'", "c", "e")}
    assert t in enumerate_minimal_meg_sets(g)
    s = res.witness
    p = cartesian(g, g)
    r = join_set(s, s, g, g) - {p.index(g.vertex("d"), g.vertex("d"))}
    assert is_meg_set(p.graph, r).is_meg


def test_multipartite_validation():
    with pytest.raises(BadParameter):
        multipartite(3)
    with pytest.raises(BadParameter):
        multipartite(0, 2)
    assert multipartite(1, 1).edges == build_graph(2, [(0, 1)]).edges
