"""SAT -> MEG reduction: DIMACS CNF input, preprocessing, gadget graph, decision.

Gadget graph for clauses C_1..C_n over variables a_1..a_m:

* per variable i: cycle r+ s+ s- r- t with pendant paths p+ q+ r+ and p- q- r-;
* per clause j: triangle u v w with pendant edges v x and w y;
* per occurrence of a_i in C_j: edge r+ u, a 2-path q+ .. w and a 3-path r- .. .. v
  (signs swapped for an occurrence of the negation);
* z1 adjacent to every v_j, z2 adjacent to every w_j.

The target is k = 3m + 2n; sets of the form {p+, p-, one of s+/s-} per variable
plus {x, y} per clause correspond to truth assignments (s+ chosen <=> a_i true).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import AssumptionViolated, MegError, ParseError
from .graph import Graph, build_graph
from .monitor import MonitorTable, monitoring_table, to_mask
from .solver import DEFAULT_BUDGET, SearchBudget, meg_decision


@dataclass(frozen=True)
class CnfFormula:
    m: int
    clauses: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.clauses)

    @property
    def has_empty_clause(self) -> bool:
        return any(not c for c in self.clauses)

    @classmethod
    def of(cls, m: int, clauses: Sequence[Sequence[int]]) -> "CnfFormula":
        for c in clauses:
            for lit in c:
                if lit == 0 or abs(lit) > m:
                    raise ValueError(f"literal {lit} outside variables 1..{m}")
        return cls(m, tuple(frozenset(c) for c in clauses))

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.m} {self.n}"]
        for c in self.clauses:
            lits = sorted(c, key=lambda l: (abs(l), l < 0))
            lines.append(" ".join(map(str, [*lits, 0])))
        return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> CnfFormula:
    header = None
    clauses: list[frozenset[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            fields = line.split()
            if header is not None:
                raise ParseError("second header line", lineno)
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError(f"bad header {line!r}, expected 'p cnf <vars> <clauses>'", lineno)
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise ParseError(f"bad header {line!r}", lineno) from None
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", lineno)
        col = 0
        for token in line.split():
            col = raw.find(token, col) + 1
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"expected a literal, got {token!r}", lineno, col) from None
            if lit == 0:
                clauses.append(frozenset(current))
                current = []
            elif abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds declared variable count {header[0]}", lineno, col)
            else:
                current.append(lit)
            col += len(token) - 1
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def brute_force_sat(f: CnfFormula) -> tuple[bool, ...] | None:
    """First satisfying assignment in lexicographic order (False < True), or None."""
    for bits in itertools.product((False, True), repeat=f.m):
        if f.satisfied_by(bits):
            return bits
    return None


# -- preprocessing -----------------------------------------------------------------


class Resolution(enum.Enum):
    SAT_EQUIVALENT = "SAT_EQUIVALENT"
    TRIVIALLY_SAT = "TRIVIALLY_SAT"
    TRIVIALLY_UNSAT = "TRIVIALLY_UNSAT"


@dataclass(frozen=True)
class Preprocessed:
    reduced: CnfFormula
    resolution: Resolution
    # Values fixed during preprocessing, keyed by original variable index.
    assignment: dict[int, bool]
    original_m: int
    # reduced variable i (1-based) is original variable var_map[i - 1]
    var_map: tuple[int, ...] = field(default=())

    def lift(self, reduced_assignment: Sequence[bool]) -> tuple[bool, ...]:
        """Extend an assignment of the reduced formula to the original variables."""
        values = dict(self.assignment)
        for i, orig in enumerate(self.var_map):
            values[orig] = reduced_assignment[i]
        return tuple(values.get(v, False) for v in range(1, self.original_m + 1))


def _is_tautology(clause: frozenset[int]) -> bool:
    return any(-lit in clause for lit in clause)


def preprocess(f: CnfFormula) -> Preprocessed:
    """Remove tautologies, fix pure literals to a fixed point, renumber densely.

    Complementary unit clauses {l}, {-l} resolve to the empty clause and give
    TRIVIALLY_UNSAT.  Variables that vanish entirely are set False.
    """
    clauses = [c for c in f.clauses if not _is_tautology(c)]
    fixed: dict[int, bool] = {}
    while True:
        if any(not c for c in clauses):
            return Preprocessed(CnfFormula(0, ()), Resolution.TRIVIALLY_UNSAT, fixed, f.m)
        units = {next(iter(c)) for c in clauses if len(c) == 1}
        if any(-u in units for u in units):
            return Preprocessed(CnfFormula(0, ()), Resolution.TRIVIALLY_UNSAT, fixed, f.m)
        lits = set().union(*clauses) if clauses else set()
        pure = next((v for v in range(1, f.m + 1) if (v in lits) != (-v in lits)), None)
        if pure is None:
            break
        lit = pure if pure in lits else -pure
        fixed[pure] = lit > 0
        clauses = [c for c in clauses if lit not in c]
    used = sorted({abs(l) for c in clauses for l in c})
    for v in range(1, f.m + 1):
        if v not in used:
            fixed.setdefault(v, False)
    if not clauses:
        return Preprocessed(CnfFormula(0, ()), Resolution.TRIVIALLY_SAT, fixed, f.m)
    new = {v: i + 1 for i, v in enumerate(used)}
    reduced = CnfFormula(
        len(used),
        tuple(frozenset(new[abs(l)] * (1 if l > 0 else -1) for l in c) for c in clauses),
    )
    return Preprocessed(reduced, Resolution.SAT_EQUIVALENT, fixed, f.m, tuple(used))


def check_assumptions(f: CnfFormula) -> None:
    for j, c in enumerate(f.clauses, 1):
        if not c:
            raise AssumptionViolated("no empty clause", f"clause {j} is empty")
        if _is_tautology(c):
            raise AssumptionViolated("no clause contains both a_i and not a_i", f"clause {j}")
    lits = set().union(*f.clauses) if f.clauses else set()
    for v in range(1, f.m + 1):
        if v not in lits or -v not in lits:
            raise AssumptionViolated("both a_i and not a_i appear", f"variable {v}")
    if f.n < 2:
        raise AssumptionViolated("n >= 2", f"only {f.n} clause(s)")


# -- construction ------------------------------------------------------------------

VARIABLE_ROLES = ("p+", "q+", "r+", "s+", "s-", "r-", "q-", "p-", "t")
CLAUSE_ROLES = ("u", "v", "w", "x", "y")


@dataclass(frozen=True, eq=False)
class ReductionLayout:
    graph: Graph
    k: int
    formula: CnfFormula
    t: int

    @property
    def m(self) -> int:
        return self.formula.m

    @property
    def n(self) -> int:
        return self.formula.n

    @property
    def roles(self) -> tuple[str, ...]:
        return self.graph.labels

    def vertex(self, role: str, index: int | None = None) -> int:
        """Vertex for e.g. ``("s+", 2)``, ``("u", 1)`` or ``("z_1",)``; indices are 1-based."""
        return self.graph.label_index[role if index is None else f"{role}_{index}"]

    def sidecar(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "t": self.t,
            "roles": {str(v): r for v, r in enumerate(self.roles)},
        }


def build_reduction(f: CnfFormula) -> ReductionLayout:
    check_assumptions(f)
    labels: list[str] = []
    for i in range(1, f.m + 1):
        labels.extend(f"{r}_{i}" for r in VARIABLE_ROLES)
    for j in range(1, f.n + 1):
        labels.extend(f"{r}_{j}" for r in CLAUSE_ROLES)
    index = {lab: v for v, lab in enumerate(labels)}

    def at(role: str, i: int) -> int:
        return index[f"{role}_{i}"]

    edges = []
    for i in range(1, f.m + 1):
        for a, b in (("r+", "s+"), ("s+", "s-"), ("s-", "r-"), ("r-", "t"), ("t", "r+"),
                     ("p+", "q+"), ("q+", "r+"), ("p-", "q-"), ("q-", "r-")):
            edges.append((at(a, i), at(b, i)))
    for j in range(1, f.n + 1):
        for a, b in (("u", "v"), ("v", "w"), ("w", "u"), ("v", "x"), ("w", "y")):
            edges.append((at(a, j), at(b, j)))

    def add_vertex(lab: str) -> int:
        labels.append(lab)
        return len(labels) - 1

    t = 0
    for j, clause in enumerate(f.clauses, 1):
        for lit in sorted(clause, key=abs):
            i = abs(lit)
            same, other = ("+", "-") if lit > 0 else ("-", "+")
            t += 1
            edges.append((at("r" + same, i), at("u", j)))
            c = add_vertex(f"conn_qw_{i}_{j}_0")
            edges += [(at("q" + same, i), c), (c, at("w", j))]
            c1 = add_vertex(f"conn_rv_{i}_{j}_0")
            c2 = add_vertex(f"conn_rv_{i}_{j}_1")
            edges += [(at("r" + other, i), c1), (c1, c2), (c2, at("v", j))]
    z1 = add_vertex("z_1")
    z2 = add_vertex("z_2")
    for j in range(1, f.n + 1):
        edges += [(at("v", j), z1), (at("w", j), z2)]
    g = build_graph(len(labels), edges, labels)
    return ReductionLayout(g, 3 * f.m + 2 * f.n, f, t)


def assignment_to_candidate_set(layout: ReductionLayout, assignment: Sequence[bool]) -> frozenset[int]:
    if len(assignment) != layout.m:
        raise ValueError(f"assignment has {len(assignment)} values for {layout.m} variables")
    out = set()
    for i, value in enumerate(assignment, 1):
        out.add(layout.vertex("p+", i))
        out.add(layout.vertex("p-", i))
        out.add(layout.vertex("s+" if value else "s-", i))
    for j in range(1, layout.n + 1):
        out.add(layout.vertex("x", j))
        out.add(layout.vertex("y", j))
    return frozenset(out)


def candidate_universe(layout: ReductionLayout) -> frozenset[int]:
    """Union of all assignment-form candidate sets."""
    return assignment_to_candidate_set(layout, [True] * layout.m) | assignment_to_candidate_set(layout, [False] * layout.m)


def candidate_sets(layout: ReductionLayout):
    """All 2^m assignment-form sets, as (assignment, set) in lexicographic order."""
    for bits in itertools.product((False, True), repeat=layout.m):
        yield bits, assignment_to_candidate_set(layout, bits)


class CrossCheckFailed(MegError):
    pass


@dataclass(frozen=True)
class SatDecision:
    satisfiable: bool
    resolution: Resolution
    assignment: tuple[bool, ...] | None = None
    layout: ReductionLayout | None = None

    def __bool__(self) -> bool:
        return self.satisfiable


def decide_sat_via_meg(
    f: CnfFormula,
    budget: SearchBudget = DEFAULT_BUDGET,
    cross_check: bool = False,
    table: MonitorTable | None = None,
) -> SatDecision:
    """Decide satisfiability by testing the 2^m assignment-form candidate sets.

    With ``cross_check`` the unrestricted solver also decides meg <= k on the
    gadget graph; disagreement raises CrossCheckFailed.
    """
    pre = preprocess(f)
    if pre.resolution is Resolution.TRIVIALLY_UNSAT:
        return SatDecision(False, pre.resolution)
    if pre.resolution is Resolution.TRIVIALLY_SAT:
        return SatDecision(True, pre.resolution, pre.lift(()))
    layout = build_reduction(pre.reduced)
    table = table or monitoring_table(layout.graph, among=candidate_universe(layout))
    found = None
    for bits, cand in candidate_sets(layout):
        if table.covers(to_mask(layout.graph, cand)):
            found = bits
            break
    if cross_check:
        other = meg_decision(layout.graph, layout.k, budget)
        if other != (found is not None):
            raise CrossCheckFailed(f"candidate enumeration says {found is not None}, solver says {other}")
    lifted = pre.lift(found) if found is not None else None
    return SatDecision(found is not None, pre.resolution, lifted, layout)
