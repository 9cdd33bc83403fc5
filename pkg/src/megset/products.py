"""Cartesian and strong products, row/column slices, join-sets and product bounds.

Product vertex (a, b) with a in G and b in H has index ``a * |H| + b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from .errors import BadParameter, BudgetExhausted, EmptyFactor
from .graph import Graph, build_graph
from .monitor import unique_minimal_meg
from .solver import DEFAULT_BUDGET, SearchBudget, meg_min

CARTESIAN = "cartesian"
STRONG = "strong"


@dataclass(frozen=True, eq=False)
class ProductGraph:
    graph: Graph
    factors: tuple[Graph, Graph]
    kind: str

    @property
    def width(self) -> int:
        return self.factors[1].n

    def index(self, a: int, b: int) -> int:
        return a * self.width + b

    def pair(self, v: int) -> tuple[int, int]:
        return divmod(v, self.width)


def _product(g: Graph, h: Graph, kind: str) -> ProductGraph:
    if g.n == 0 or h.n == 0:
        raise EmptyFactor("product factors must have at least one vertex")
    w = h.n
    edges = []
    for a in range(g.n):
        for b, d in h.edges:
            edges.append((a * w + b, a * w + d))
    for a, c in g.edges:
        for b in range(w):
            edges.append((a * w + b, c * w + b))
        if kind == STRONG:
            for b, d in h.edges:
                edges.append((a * w + b, c * w + d))
                edges.append((a * w + d, c * w + b))
    labels = [f"({g.label(a)},{h.label(b)})" for a in range(g.n) for b in range(w)]
    return ProductGraph(build_graph(g.n * w, edges, labels), (g, h), kind)


def cartesian(g: Graph, h: Graph) -> ProductGraph:
    return _product(g, h, CARTESIAN)


def strong(g: Graph, h: Graph) -> ProductGraph:
    return _product(g, h, STRONG)


def product(kind: str, g: Graph, h: Graph) -> ProductGraph:
    if kind not in (CARTESIAN, STRONG):
        raise BadParameter(f"unknown product {kind!r}")
    return _product(g, h, kind)


def fold_products(factors: Sequence[Graph], kinds: Sequence[str]) -> Graph:
    """Left fold: ((F0 k0 F1) k1 F2) ... ; ``kinds`` has one entry fewer than ``factors``."""
    if len(kinds) != len(factors) - 1:
        raise BadParameter("need exactly one product kind between consecutive factors")
    if not factors:
        raise EmptyFactor("no factors")
    return reduce(lambda acc, step: product(step[0], acc, step[1]).graph, zip(kinds, factors[1:]), factors[0])


def join_set(s: Iterable[int], t: Iterable[int], g: Graph, h: Graph) -> frozenset[int]:
    """S v T = {(a, b) : a in S or b in T} as product indices."""
    s, t = set(s), set(t)
    w = h.n
    return frozenset(a * w + b for a in range(g.n) for b in range(w) if a in s or b in t)


@dataclass(frozen=True)
class SliceView:
    rows: tuple[frozenset[int], ...]  # rows[x] = {b : (x, b) in S}, subsets of V(H)
    cols: tuple[frozenset[int], ...]  # cols[y] = {a : (a, y) in S}, subsets of V(G)


def slices(p: ProductGraph, s: Iterable[int]) -> SliceView:
    g, h = p.factors
    rows: list[set[int]] = [set() for _ in range(g.n)]
    cols: list[set[int]] = [set() for _ in range(h.n)]
    for v in s:
        a, b = p.pair(v)
        rows[a].add(b)
        cols[b].add(a)
    return SliceView(tuple(map(frozenset, rows)), tuple(map(frozenset, cols)))


# -- bounds ------------------------------------------------------------------------


def lower_bound(meg_g: int, n_g: int, meg_h: int, n_h: int) -> int:
    return max(meg_g * n_h, meg_h * n_g)


def upper_bound(meg_g: int, n_g: int, meg_h: int, n_h: int) -> int:
    return meg_g * n_h + meg_h * n_g - meg_g * meg_h


@dataclass
class BoundsReport:
    n_g: int
    n_h: int
    meg_g: int
    meg_h: int
    unique_g: bool
    unique_h: bool
    lower: int
    upper: int
    meg_cartesian: int | None = None
    meg_strong: int | None = None
    provenance: dict[str, str] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def collapses(self) -> bool:
        """Either factor has a unique minimal MEG-set, so both products attain ``upper``."""
        return self.unique_g or self.unique_h

    def to_json(self) -> dict:
        return {
            "factors": {"G": {"n": self.n_g, "meg": self.meg_g, "unique_minimal": self.unique_g},
                        "H": {"n": self.n_h, "meg": self.meg_h, "unique_minimal": self.unique_h}},
            "lower": self.lower,
            "upper": self.upper,
            "meg_cartesian": self.meg_cartesian,
            "meg_strong": self.meg_strong,
            "provenance": dict(self.provenance),
            "violations": list(self.violations),
        }


def bounds_report(
    g: Graph,
    h: Graph,
    budget: SearchBudget = DEFAULT_BUDGET,
    solve_products: bool = True,
    max_product_order: int = 30,
) -> BoundsReport:
    """Formula bounds from the factors, plus solved product values when affordable.

    Products larger than ``max_product_order`` or exceeding the budget keep their
    solved value as None; ``provenance`` says where each number came from.
    """
    rg, rh = meg_min(g, budget, lexmin=False), meg_min(h, budget, lexmin=False)
    ug, uh = unique_minimal_meg(g)[0], unique_minimal_meg(h)[0]
    rep = BoundsReport(
        g.n, h.n, rg.meg, rh.meg, ug, uh,
        lower_bound(rg.meg, g.n, rh.meg, h.n),
        upper_bound(rg.meg, g.n, rh.meg, h.n),
        provenance={"lower": "formula", "upper": "formula"},
    )
    if rep.lower > rep.upper:
        rep.violations.append("lower > upper")
    if solve_products and g.n * h.n <= max_product_order:
        for kind in (CARTESIAN, STRONG):
            pg = product(kind, g, h).graph
            seed = join_set(rg.witness, rh.witness, g, h)
            try:
                val = meg_min(pg, SearchBudget(budget.nodes, budget.seconds, seed), lexmin=False).meg
            except BudgetExhausted:
                rep.provenance[kind] = "budget"
                continue
            setattr(rep, f"meg_{kind}", val)
            rep.provenance[kind] = "solved"
    if rep.collapses:
        for kind in (CARTESIAN, STRONG):
            if getattr(rep, f"meg_{kind}") is None:
                setattr(rep, f"meg_{kind}", rep.upper)
                rep.provenance[kind] = "formula"
    rep.violations.extend(check_sandwich(rep))
    return rep


def check_sandwich(rep: BoundsReport) -> list[str]:
    """Inequalities between the bounds and whatever product values are known."""
    bad = []
    c, s = rep.meg_cartesian, rep.meg_strong
    if c is not None and not rep.lower <= c:
        bad.append(f"lower {rep.lower} > meg(G□H) {c}")
    if c is not None and s is not None and not c <= s:
        bad.append(f"meg(G□H) {c} > meg(G⊠H) {s}")
    if s is not None and not s <= rep.upper:
        bad.append(f"meg(G⊠H) {s} > upper {rep.upper}")
    if rep.collapses:
        for name, val in (("G□H", c), ("G⊠H", s)):
            if val is not None and val != rep.upper:
                bad.append(f"unique minimal factor but meg({name}) {val} != upper {rep.upper}")
    return bad
