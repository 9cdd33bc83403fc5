"""Command-line interface.

Exit codes: 0 success / true verdict, 1 false verdict, 2 input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .errors import BudgetExhausted, MegError
from .families import FamilySpec, generate, product_provenance, torus_witness
from .graph import Graph, build_graph, components, graph_metrics, parse_dimacs, write_dimacs
from .monitor import forced_vertices, is_meg_set, monitoring_table, to_mask, unique_minimal_meg
from .products import CARTESIAN, STRONG, bounds_report, join_set, lower_bound, product
from .reduction import Resolution, build_reduction, decide_sat_via_meg, parse_dimacs_cnf, preprocess
from .solver import SearchBudget, SolveResult, meg_min

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    return parse_dimacs(_read(path))


def _emit_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _print(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def split_vertex_list(text: str) -> list[str]:
    """Split on commas outside parentheses, so product labels like (0,1) survive."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    out.append("".join(cur).strip())
    return [t for t in out if t]


def parse_vertex_set(g: Graph, text: str) -> frozenset[int]:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    return frozenset(g.vertex(tok) for tok in split_vertex_list(text))


def _fmt_set(g: Graph, s) -> str:
    return "{" + ", ".join(g.label(v) for v in sorted(s)) + "}"


def _budget(args, seed=None) -> SearchBudget:
    return SearchBudget(args.budget_nodes, args.budget_seconds, seed)


# -- solve ---------------------------------------------------------------------------


def solve_with_structure(g: Graph, budget: SearchBudget) -> tuple[SolveResult, str]:
    """meg(g), closing Cartesian products of tagged families by bound plus witness."""
    tag = product_provenance(g)
    if tag is not None and tag[0] == CARTESIAN:
        kind, sa, sb = tag
        fa, fb = generate(sa), generate(sb)
        if product(kind, fa, fb).graph.edges == g.edges and fa.n * fb.n == g.n:
            ra = meg_min(fa, budget)
            rb = meg_min(fb, budget)
            low = lower_bound(ra.meg, fa.n, rb.meg, fb.n)
            table = monitoring_table(g)
            cands = [join_set(ra.witness, rb.witness, fa, fb)]
            if sa.tag == sb.tag == "cycle" and sa.params == sb.params and sa.params[0] >= 5:
                cands.append(torus_witness(sa.params[0]))
            cands = sorted((c for c in cands if table.covers(to_mask(g, c))), key=len)
            if cands and len(cands[0]) == low:
                w = cands[0]
                return SolveResult(len(w), w, g.n - len(w), ra.nodes_explored + rb.nodes_explored), "product-lower-bound+witness"
            if cands:
                return meg_min(g, SearchBudget(budget.nodes, budget.seconds, cands[0])), "search (seeded by join-set)"
    return meg_min(g, budget), "search"


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    try:
        res, method = solve_with_structure(g, _budget(args))
    except BudgetExhausted as exc:
        payload = {"budget_exhausted": True, "lower": exc.lower, "upper": exc.upper, "nodes_explored": exc.nodes}
        _print(args, payload, [f"budget exhausted after {exc.nodes} nodes", f"meg in [{exc.lower}, {exc.upper}]"])
        return EXIT_BUDGET
    payload = res.to_json(g)
    payload["method"] = method
    _print(args, payload, [
        f"meg = {res.meg}",
        f"xmeg = {res.xmeg}",
        f"witness = {_fmt_set(g, res.witness)}",
        f"nodes explored = {res.nodes_explored}",
        f"method = {method}",
    ])
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    s = parse_vertex_set(g, args.set)
    verdict = is_meg_set(g, s)
    lines = [f"{'MEG-set' if verdict.is_meg else 'not a MEG-set'} (|S| = {len(s)})"]
    for e in verdict.unmonitored:
        lines.append(f"unmonitored: {g.label(e.lo)}-{g.label(e.hi)}")
    if args.certificates:
        for e, (a, b) in verdict.certificate.items():
            lines.append(f"{g.label(e.lo)}-{g.label(e.hi)} monitored by {g.label(a)},{g.label(b)}")
    _print(args, verdict.to_json(), lines)
    return EXIT_OK if verdict.is_meg else EXIT_FALSE


def cmd_pairs(args) -> int:
    g = _load_graph(args.graph)
    table = monitoring_table(g)
    payload = {f"{e.lo}-{e.hi}": [list(p) for p in table.pairs[e]] for e in g.edges}
    lines = [
        f"{g.label(e.lo)}-{g.label(e.hi)}: " + " ".join(f"{g.label(a)},{g.label(b)}" for a, b in table.pairs[e])
        for e in g.edges
    ]
    _print(args, payload, lines)
    return EXIT_OK


def cmd_forced(args) -> int:
    g = _load_graph(args.graph)
    table = monitoring_table(g)
    unique, witness = unique_minimal_meg(g, table)
    forced = forced_vertices(g, table)
    payload = {"forced": sorted(forced), "unique_minimal": unique, "unique_set": sorted(witness) if unique else None}
    _print(args, payload, [f"forced = {_fmt_set(g, forced)}", f"unique minimal MEG-set: {'yes' if unique else 'no'}"])
    return EXIT_OK


def cmd_info(args) -> int:
    g = _load_graph(args.graph)
    met = graph_metrics(g)
    payload = {"n": g.n, "m": g.m, "diameter": met.diameter, "leaves": met.leaves, "connected": met.connected,
               "components": [list(c) for c in met.components]}
    _print(args, payload, [f"n = {g.n}", f"m = {g.m}", f"diameter = {met.diameter}", f"L = {met.leaves}",
                           f"connected = {met.connected}"])
    return EXIT_OK


# -- construction -----------------------------------------------------------------


def cmd_family(args) -> int:
    spec = FamilySpec(args.tag, tuple(args.params))
    _emit_text(write_dimacs(generate(spec)), args.output)
    return EXIT_OK


def _family_tag(g: Graph) -> str | None:
    for c in g.comments:
        if c.startswith("family "):
            return c[len("family "):]
    return None


def cmd_product(args) -> int:
    g, h = _load_graph(args.g), _load_graph(args.h)
    p = product(args.op, g, h).graph
    tg, th = _family_tag(g), _family_tag(h)
    if tg and th:
        p = p.with_comments(f"meg-product {args.op} {tg} | {th}")
    _emit_text(write_dimacs(p), args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    g, h = _load_graph(args.g), _load_graph(args.h)
    try:
        rep = bounds_report(g, h, _budget(args), solve_products=not args.no_solve, max_product_order=args.max_order)
    except BudgetExhausted as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    lines = [
        f"meg(G) = {rep.meg_g}, |G| = {rep.n_g}, unique minimal: {rep.unique_g}",
        f"meg(H) = {rep.meg_h}, |H| = {rep.n_h}, unique minimal: {rep.unique_h}",
        f"lower = {rep.lower}",
        f"upper = {rep.upper}",
        f"meg(G□H) = {rep.meg_cartesian} [{rep.provenance.get(CARTESIAN, 'not solved')}]",
        f"meg(G⊠H) = {rep.meg_strong} [{rep.provenance.get(STRONG, 'not solved')}]",
    ]
    lines += [f"VIOLATION: {v}" for v in rep.violations]
    _print(args, rep.to_json(), lines)
    return EXIT_OK


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    while True:
        edges = [(u, v) for u in range(args.n) for v in range(u + 1, args.n) if rng.random() < args.p]
        g = build_graph(args.n, edges)
        if not args.connected or len(components(g)) <= 1:
            break
    _emit_text(write_dimacs(g.with_comments(f"random n={args.n} p={args.p} seed={args.seed}")), args.output)
    return EXIT_OK


# -- reduction ----------------------------------------------------------------------


def cmd_reduce(args) -> int:
    f = parse_dimacs_cnf(_read(args.cnf))
    if not args.no_preprocess:
        pre = preprocess(f)
        if pre.resolution is not Resolution.SAT_EQUIVALENT:
            _print(args, {"resolution": pre.resolution.value}, [f"resolution: {pre.resolution.value} (no graph built)"])
            return EXIT_OK
        f = pre.reduced
    layout = build_reduction(f)
    _emit_text(write_dimacs(layout.graph), args.output)
    if args.sidecar:
        Path(args.sidecar).write_text(json.dumps(layout.sidecar(), indent=2) + "\n")
    if args.output:
        _print(args, {"resolution": "SAT_EQUIVALENT", **{k: v for k, v in layout.sidecar().items() if k != "roles"},
                      "vertices": layout.graph.n, "edges": layout.graph.m},
               [f"vertices = {layout.graph.n}", f"edges = {layout.graph.m}", f"k = {layout.k}"])
    return EXIT_OK


def cmd_decide_sat(args) -> int:
    f = parse_dimacs_cnf(_read(args.cnf))
    try:
        res = decide_sat_via_meg(f, _budget(args), cross_check=args.cross_check)
    except BudgetExhausted as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    payload = {"satisfiable": res.satisfiable, "resolution": res.resolution.value,
               "assignment": list(res.assignment) if res.assignment is not None else None}
    if res.layout is not None:
        payload.update(k=res.layout.k, vertices=res.layout.graph.n)
    lines = [("SATISFIABLE" if res.satisfiable else "UNSATISFIABLE") + f" ({res.resolution.value})"]
    if res.assignment is not None:
        lines.append("assignment = " + " ".join(str(i if v else -i) for i, v in enumerate(res.assignment, 1)))
    _print(args, payload, lines)
    return EXIT_OK if res.satisfiable else EXIT_FALSE


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="megset", description="Monitoring edge-geodetic sets of graphs.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--budget-nodes", type=int, default=10_000_000, help="search node limit")
    p.add_argument("--budget-seconds", type=float, default=None, help="search time limit")
    p.add_argument("--seed", type=int, default=0, help="seed for the random subcommand")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="minimum MEG-set")
    s.add_argument("graph")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check whether a vertex set is a MEG-set")
    s.add_argument("graph")
    s.add_argument("set", help="comma-separated 0-based indices or labels")
    s.add_argument("--certificates", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("pairs", help="monitoring pairs of every edge")
    s.add_argument("graph")
    s.set_defaults(func=cmd_pairs)

    s = sub.add_parser("forced", help="forced vertices and unique minimal MEG-set")
    s.add_argument("graph")
    s.set_defaults(func=cmd_forced)

    s = sub.add_parser("info", help="order, size, diameter, leaves, components")
    s.add_argument("graph")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("family", help="write a named graph")
    s.add_argument("tag")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("product", help="Cartesian or strong product of two graph files")
    s.add_argument("op", choices=[CARTESIAN, STRONG])
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("bounds", help="product bounds from two factor graphs")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("--no-solve", action="store_true", help="formula bounds only")
    s.add_argument("--max-order", type=int, default=30, help="largest product order to solve exactly")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("random", help="random graph G(n, p)")
    s.add_argument("n", type=int)
    s.add_argument("p", type=float)
    s.add_argument("--connected", action="store_true", help="resample until connected")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("reduce", help="build the SAT gadget graph from a DIMACS cnf file")
    s.add_argument("cnf")
    s.add_argument("-o", "--output")
    s.add_argument("--sidecar", help="write {k, roles, t, m, n} JSON here")
    s.add_argument("--no-preprocess", action="store_true", help="build directly; the formula must meet the assumptions")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("decide-sat", help="decide a cnf file through the MEG reduction")
    s.add_argument("cnf")
    s.add_argument("--cross-check", action="store_true", help="also run the unrestricted solver on the gadget graph")
    s.set_defaults(func=cmd_decide_sat)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MegError, InputError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
