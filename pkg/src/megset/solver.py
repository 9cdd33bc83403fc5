"""Exact meg(G) by branch-and-bound over the per-edge pair-cover formulation.

Each edge needs one of its monitoring pairs fully inside the chosen set.  The
search picks the uncovered edge with the fewest live pairs and branches on
which of those pairs is the first (in branch order) to be fully chosen; pairs
tried in earlier branches become "not both" constraints, so the subtrees are
disjoint.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterable

from .errors import BadParameter, BudgetExhausted, LimitExceeded
from .graph import Graph, components
from .monitor import MonitorTable, forced_vertices, from_mask, monitoring_table, to_mask


@dataclass(frozen=True)
class SearchBudget:
    nodes: int = 10_000_000
    seconds: float | None = None
    # A known MEG-set; the search only looks for strictly smaller sets.
    upper_seed: frozenset[int] | None = None

    def __post_init__(self):
        if self.nodes <= 0:
            raise BadParameter("node limit must be positive")
        if self.seconds is not None and self.seconds <= 0:
            raise BadParameter("time limit must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class SolveResult:
    meg: int
    witness: frozenset[int]
    xmeg: int
    nodes_explored: int

    def to_json(self, g: Graph | None = None) -> dict:
        witness = sorted(self.witness)
        out = {"meg": self.meg, "xmeg": self.xmeg, "witness": witness, "nodes_explored": self.nodes_explored}
        if g is not None and g.labels is not None:
            out["witness_labels"] = [g.label(v) for v in witness]
        return out


class _OutOfBudget(Exception):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Search:
    def __init__(self, table: MonitorTable, budget: SearchBudget):
        self.edges = table.pair_masks
        self.n = table.graph.n
        self.full = (1 << self.n) - 1
        self.budget = budget
        self.nodes = 0
        self.deadline = None if budget.seconds is None else time.monotonic() + budget.seconds
        self.best_size = 0
        self.best_mask = None
        self.stop_at_first = False

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.nodes:
            raise _OutOfBudget
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise _OutOfBudget

    def _propagate(self, s: int, x: int, nogoods: tuple[int, ...], todo: Iterable[int]):
        """Close (s, x) under forced inclusions; None on contradiction.

        Returns the new (s, x) and the live pair lists of still-uncovered edges.
        """
        todo = list(todo)
        while True:
            if s & x:
                return None
            for ng in nogoods:
                inside = ng & s
                if inside == ng:
                    return None
                if inside and not (ng & ~s) & x:
                    x |= ng & ~s
            if s & x:
                return None
            changed = False
            rest = []
            lives = []
            for i in todo:
                live = []
                for pm in self.edges[i]:
                    if pm & s == pm:
                        break
                    if pm & x or pm in nogoods:
                        continue
                    live.append(pm)
                else:
                    if not live:
                        return None
                    common = self.full & ~s
                    for pm in live:
                        common &= pm
                    if common:
                        s |= common
                        changed = True
                    rest.append(i)
                    lives.append(live)
            todo = rest
            if not changed:
                return s, x, todo, lives

    def _lower_bound(self, s: int, lives: list[list[int]]) -> int:
        free = ~s
        items = []
        for live in lives:
            need = 2
            support = 0
            for pm in live:
                extra = pm & free
                support |= extra
                c = 1 if extra & (extra - 1) == 0 else 2
                if c < need:
                    need = c
            items.append((_popcount(support), need, support))
        items.sort(key=lambda t: (t[0], -t[1]))
        used = 0
        bound = 0
        for _, need, support in items:
            if not support & used:
                used |= support
                bound += need
        return _popcount(s) + bound

    def root_bound(self, s: int, x: int) -> int:
        res = self._propagate(s, x, (), range(len(self.edges)))
        if res is None:
            return self.n + 1
        s, x, _, lives = res
        return self._lower_bound(s, lives)

    def run(self, s: int, x: int, nogoods: tuple[int, ...], todo: Iterable[int]):
        self._tick()
        res = self._propagate(s, x, nogoods, todo)
        if res is None:
            return
        s, x, todo, lives = res
        if not todo:
            size = _popcount(s)
            if size < self.best_size:
                self.best_size = size
                self.best_mask = s
            return
        if self._lower_bound(s, lives) >= self.best_size:
            return
        k = min(range(len(todo)), key=lambda i: len(lives[i]))
        free = ~s
        branch = sorted(lives[k], key=lambda pm: (_popcount(pm & free), _low_first(pm)))
        for i, pm in enumerate(branch):
            if _popcount(s | pm) >= self.best_size:
                continue
            self.run(s | pm, x, nogoods + tuple(branch[:i]), todo)
            if self.stop_at_first and self.best_mask is not None:
                return


def _low_first(pm: int) -> tuple[int, int]:
    lo = (pm & -pm).bit_length() - 1
    hi = pm.bit_length() - 1
    return lo, hi


def _search_optimum(
    table: MonitorTable,
    budget: SearchBudget,
    include: int = 0,
    exclude: int = 0,
    below: int | None = None,
    first_only: bool = False,
) -> tuple[int | None, _Search]:
    """Smallest MEG-set with ``include`` in and ``exclude`` out, of size < ``below``."""
    search = _Search(table, budget)
    search.best_size = below if below is not None else table.graph.n + 1
    search.stop_at_first = first_only
    try:
        search.run(include, exclude, (), range(len(search.edges)))
    except _OutOfBudget as exc:
        exc.nodes = search.nodes
        exc.best = search.best_mask
        raise
    return search.best_mask, search


def _solve_connected(g: Graph, budget: SearchBudget, lexmin: bool) -> SolveResult:
    table = monitoring_table(g)
    forced = to_mask(g, forced_vertices(g, table))
    if table.covers(forced):
        witness = from_mask(forced)
        return SolveResult(len(witness), witness, g.n - len(witness), 0)

    seed = to_mask(g, budget.upper_seed) if budget.upper_seed is not None else (1 << g.n) - 1
    if not table.covers(seed):
        raise BadParameter("upper_seed is not a MEG-set")
    best = seed
    nodes = 0
    lower = max(_Search(table, budget).root_bound(forced, 0), _popcount(forced))
    try:
        mask, search = _search_optimum(table, budget, include=forced, below=_popcount(seed))
        nodes += search.nodes
        if mask is not None:
            best = mask
        if lexmin:
            best, extra = _lexmin(table, budget, forced, best)
            nodes += extra
    except _OutOfBudget as exc:
        if exc.best is not None and _popcount(exc.best) < _popcount(best):
            best = exc.best
        upper = _popcount(best)
        raise BudgetExhausted(min(lower, upper), upper, from_mask(best), nodes + exc.nodes) from None
    witness = from_mask(best)
    return SolveResult(len(witness), witness, g.n - len(witness), nodes)


def _lexmin(table: MonitorTable, budget: SearchBudget, forced: int, witness: int) -> tuple[int, int]:
    """Lexicographically smallest optimum, deciding vertices in ascending order."""
    size = _popcount(witness)
    include, exclude = forced, 0
    nodes = 0
    for v in range(table.graph.n):
        bit = 1 << v
        if _popcount(include) == size:
            break
        if include & bit:
            continue
        if not witness & bit:
            mask, search = _search_optimum(table, budget, include | bit, exclude, below=size + 1, first_only=True)
            nodes += search.nodes
            if mask is not None:
                witness = mask
        if witness & bit:
            include |= bit
        else:
            exclude |= bit
    return witness, nodes


def meg_min(g: Graph, budget: SearchBudget = DEFAULT_BUDGET, lexmin: bool = True) -> SolveResult:
    """Minimum MEG-set; disconnected graphs are solved per component."""
    parts = components(g)
    if len(parts) <= 1:
        return _solve_connected(g, budget, lexmin)
    witness: set[int] = set()
    nodes = 0
    seed = budget.upper_seed
    for part in parts:
        sub, back = g.induced(part)
        sub_budget = budget
        if seed is not None:
            pos = {v: i for i, v in enumerate(back)}
            sub_budget = SearchBudget(budget.nodes, budget.seconds, frozenset(pos[v] for v in seed if v in pos))
        try:
            res = _solve_connected(sub, sub_budget, lexmin)
        except BudgetExhausted as exc:
            raise BudgetExhausted(exc.lower, exc.upper, None, nodes + exc.nodes) from None
        witness.update(back[v] for v in res.witness)
        nodes += res.nodes_explored
    w = frozenset(witness)
    return SolveResult(len(w), w, g.n - len(w), nodes)


def meg_decision(g: Graph, k: int, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """Is there a MEG-set of size at most k?"""
    if k < 0:
        raise BadParameter("k must be non-negative")
    if k >= g.n:
        return True
    parts = components(g)
    if len(parts) > 1:
        return meg_min(g, budget, lexmin=False).meg <= k
    table = monitoring_table(g)
    forced = to_mask(g, forced_vertices(g, table))
    if _popcount(forced) > k:
        return False
    try:
        mask, _ = _search_optimum(table, budget, include=forced, below=k + 1, first_only=True)
    except _OutOfBudget as exc:
        raise BudgetExhausted(_popcount(forced), g.n, None, exc.nodes) from None
    return mask is not None


def exhaustive_meg(g: Graph) -> tuple[int, frozenset[int]]:
    """Brute-force optimum over all subsets by increasing size (test oracle)."""
    table = monitoring_table(g)
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            if table.covers(to_mask(g, combo)):
                return size, frozenset(combo)
    raise AssertionError("the full vertex set is always a MEG-set")


def enumerate_minimal_meg_sets(g: Graph, limit: int = 1000) -> list[frozenset[int]]:
    """All inclusion-minimal MEG-sets, sorted; meant for graphs up to ~14 vertices."""
    if limit <= 0:
        raise BadParameter("limit must be positive")
    table = monitoring_table(g)
    forced = to_mask(g, forced_vertices(g, table))
    others = [v for v in range(g.n) if not forced >> v & 1]
    found: list[int] = []
    for size in range(len(others) + 1):
        for combo in itertools.combinations(others, size):
            mask = forced | to_mask(g, combo)
            if any(m & mask == m for m in found):
                continue
            if table.covers(mask):
                found.append(mask)
    result = sorted((from_mask(m) for m in found), key=sorted)
    if len(result) > limit:
        raise LimitExceeded(result[:limit], limit)
    return result
