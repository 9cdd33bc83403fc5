"""Named graph families and the explicit witness sets that go with them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BadParameter
from .graph import Graph, build_graph
from .products import CARTESIAN, STRONG, cartesian, fold_products, product, strong

FAMILIES = ("path", "cycle", "complete", "multipartite", "grid", "king", "torus", "toroidal_king", "pendant_cycle")

# Comment-line tag recording how a product graph was made: "meg-product <kind> <spec> | <spec>".
PRODUCT_TAG = "meg-product"


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        return " ".join([self.tag, *map(str, self.params)])

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        tag, *rest = text.replace(":", " ").split()
        try:
            return cls(tag, tuple(int(x) for x in rest))
        except ValueError:
            raise BadParameter(f"family parameters must be integers: {text!r}") from None


def path(m: int) -> Graph:
    if m < 1:
        raise BadParameter("path needs m >= 1")
    return build_graph(m, [(i, i + 1) for i in range(m - 1)])


def cycle(m: int) -> Graph:
    if m < 3:
        raise BadParameter("cycle needs m >= 3")
    return build_graph(m, [(i, (i + 1) % m) for i in range(m)])


def complete(r: int) -> Graph:
    if r < 1:
        raise BadParameter("complete graph needs r >= 1")
    return build_graph(r, itertools.combinations(range(r), 2))


def multipartite(*parts: int) -> Graph:
    if len(parts) < 2 or min(parts) < 1:
        raise BadParameter("complete multipartite graph needs at least two non-empty parts")
    block = [i for i, size in enumerate(parts) for _ in range(size)]
    n = len(block)
    return build_graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if block[u] != block[v]])


def is_star(parts: tuple[int, ...]) -> bool:
    return len(parts) == 2 and min(parts) == 1


def pendant_cycle_example() -> Graph:
    """The 5-cycle abcde with pendant edges aa' and bb'."""
    labels = ["a", "b", "c", "d", "e", "a'", "b'"]
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6)]
    return build_graph(7, edges, labels)


def _check(spec: FamilySpec, count: int) -> tuple[int, ...]:
    if len(spec.params) != count:
        raise BadParameter(f"family {spec.tag!r} takes {count} parameter(s), got {len(spec.params)}")
    return spec.params


def _tagged(g: Graph, kind: str, a: FamilySpec, b: FamilySpec) -> Graph:
    return g.with_comments(f"{PRODUCT_TAG} {kind} {a} | {b}")


def generate(spec: FamilySpec) -> Graph:
    tag = spec.tag
    if tag == "path":
        (m,) = _check(spec, 1)
        g = path(m)
    elif tag == "cycle":
        (m,) = _check(spec, 1)
        g = cycle(m)
    elif tag == "complete":
        (r,) = _check(spec, 1)
        g = complete(r)
    elif tag == "multipartite":
        g = multipartite(*spec.params)
    elif tag in ("grid", "king"):
        a, b = _check(spec, 2)
        kind = CARTESIAN if tag == "grid" else STRONG
        fa, fb = FamilySpec("path", (a,)), FamilySpec("path", (b,))
        return product(kind, path(a), path(b)).graph.with_comments(
            f"family {spec}", f"{PRODUCT_TAG} {kind} {fa} | {fb}")
    elif tag in ("torus", "toroidal_king"):
        if len(spec.params) == 1:
            a = b = spec.params[0]
        else:
            a, b = _check(spec, 2)
        kind = CARTESIAN if tag == "torus" else STRONG
        fa, fb = FamilySpec("cycle", (a,)), FamilySpec("cycle", (b,))
        return product(kind, cycle(a), cycle(b)).graph.with_comments(
            f"family {spec}", f"{PRODUCT_TAG} {kind} {fa} | {fb}")
    elif tag == "pendant_cycle":
        _check(spec, 0)
        g = pendant_cycle_example()
    else:
        raise BadParameter(f"unknown family {tag!r}; expected one of {', '.join(FAMILIES)}")
    return g.with_comments(f"family {spec}")


def product_provenance(g: Graph) -> tuple[str, FamilySpec, FamilySpec] | None:
    """Recover (kind, spec_G, spec_H) from a product tag comment, if present."""
    for c in g.comments:
        if c.startswith(PRODUCT_TAG + " "):
            kind, _, rest = c[len(PRODUCT_TAG) + 1:].partition(" ")
            left, sep, right = rest.partition("|")
            if kind in (CARTESIAN, STRONG) and sep:
                return kind, FamilySpec.parse(left), FamilySpec.parse(right)
    return None


def tagged_product(kind: str, a: FamilySpec, b: FamilySpec) -> Graph:
    g = product(kind, generate(a), generate(b)).graph
    return _tagged(g, kind, a, b)


def paths_product(lengths: list[int], kinds: list[str]) -> Graph:
    return fold_products([path(m) for m in lengths], kinds)


# -- witness sets ------------------------------------------------------------------


def cycle_meg_set(m: int) -> frozenset[int]:
    """A 3-vertex MEG-set of C_m (m >= 5): every arc between chosen vertices is shorter than m/2.

    Odd m uses {0, m//2, m-1}; for even m that set contains an antipodal pair,
    so {0, m/2 - 1, m/2 + 1} is used instead.
    """
    if m < 5:
        raise BadParameter("C_m has a 3-vertex MEG-set only for m >= 5")
    if m % 2:
        return frozenset({0, m // 2, m - 1})
    return frozenset({0, m // 2 - 1, m // 2 + 1})


def torus_witness(m: int) -> frozenset[int]:
    """Diagonal set {(i, j) : (i + j) mod m in S} over C_m x C_m, S = cycle_meg_set(m)."""
    if m < 5:
        raise BadParameter("torus witness needs m >= 5")
    s = cycle_meg_set(m)
    return frozenset(i * m + j for i in range(m) for j in range(m) if (i + j) % m in s)


C5_KING_HOLES = ((0, 0), (1, 2), (2, 4), (3, 1), (4, 3))


def king_torus_witness_c5() -> frozenset[int]:
    """All of C5 x C5 (strong) except five pairwise non-adjacent vertices."""
    holes = {a * 5 + b for a, b in C5_KING_HOLES}
    return frozenset(v for v in range(25) if v not in holes)


def toroidal_king(m: int) -> Graph:
    return strong(cycle(m), cycle(m)).graph


def torus(m: int) -> Graph:
    return cartesian(cycle(m), cycle(m)).graph
