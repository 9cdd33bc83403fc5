import json
import subprocess
import sys

import pytest

from megset.cli import main, split_vertex_list
from megset.families import C5_KING_HOLES, torus, torus_witness
from megset.graph import parse_dimacs, write_dimacs


@pytest.fixture
def run(capsys):
    def go(*argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr()
        return code, out.out, out.err

    return go


@pytest.fixture
def family_file(tmp_path, run):
    def make(*spec):
        path = tmp_path / ("_".join(map(str, spec)) + ".dimacs")
        assert run("family", *spec, "-o", path)[0] == 0
        return path

    return make


def test_split_vertex_list():
    assert split_vertex_list("(0,1), (2,3),4") == ["(0,1)", "(2,3)", "4"]
    assert split_vertex_list("") == []


def test_solve_path(run, family_file):
    code, out, _ = run("solve", family_file("path", 4))
    assert code == 0
    assert "meg = 2" in out and "witness = {0, 3}" in out


def test_solve_triangle(run, family_file):
    assert "meg = 3" in run("solve", family_file("complete", 3))[1]


def test_solve_torus_closes_by_bound(run, family_file):
    code, out, _ = run("--json", "solve", family_file("torus", 5))
    data = json.loads(out)
    assert code == 0
    assert data["meg"] == 15 and data["method"] == "product-lower-bound+witness"


def test_solve_budget_exit_code(run, tmp_path):
    # untagged, so no product shortcut
    path = tmp_path / "torus6.dimacs"
    path.write_text(write_dimacs(torus(6)))
    code, out, _ = run("--budget-nodes", 3, "solve", path)
    assert code == 3
    assert "budget exhausted" in out


def test_verify(run, family_file):
    torus = family_file("torus", 5)
    labels = [f"({v // 5},{v % 5})" for v in sorted(torus_witness(5))]
    assert run("verify", torus, ",".join(labels))[0] == 0
    assert run("verify", family_file("cycle", 4), "0,1,2")[0] == 1
    code, out, _ = run("--json", "verify", family_file("cycle", 4), "{0,1,2}")
    assert json.loads(out)["unmonitored"] == [[0, 3], [2, 3]]


def test_verify_king_witness_is_rejected(run, family_file):
    king = family_file("toroidal_king", 5)
    holes = {a * 5 + b for a, b in C5_KING_HOLES}
    s = ",".join(str(v) for v in range(25) if v not in holes)
    code, out, _ = run("verify", king, s)
    assert code == 1 and out.count("unmonitored") == 20


def test_verify_with_certificates(run, family_file):
    code, out, _ = run("verify", "--certificates", family_file("path", 3), "0,2")
    assert code == 0 and "0-1 monitored by 0,2" in out


def test_pairs_forced_info(run, family_file):
    p3 = family_file("path", 3)
    assert json.loads(run("--json", "pairs", p3)[1]) == {"0-1": [[0, 1], [0, 2]], "1-2": [[0, 2], [1, 2]]}
    data = json.loads(run("--json", "forced", family_file("pendant_cycle"))[1])
    assert data["forced"] == [5, 6] and data["unique_minimal"] is False
    info = json.loads(run("--json", "info", family_file("toroidal_king", 5))[1])
    assert (info["n"], info["m"], info["diameter"]) == (25, 100, 2)


def test_family_pendant_cycle(run):
    code, out, _ = run("family", "pendant_cycle")
    g = parse_dimacs(out)
    assert code == 0 and g.n == 7 and g.label(5) == "a'"


def test_product_and_round_trip(run, family_file, tmp_path):
    out = tmp_path / "t.dimacs"
    assert run("product", "cartesian", family_file("cycle", 5), family_file("cycle", 5), "-o", out)[0] == 0
    code, text, _ = run("solve", out)
    assert "meg = 15" in text and "product-lower-bound" in text


def test_bounds(run, family_file):
    c5 = family_file("cycle", 5)
    code, out, _ = run("--json", "bounds", "--no-solve", c5, c5)
    data = json.loads(out)
    assert code == 0 and (data["lower"], data["upper"]) == (15, 21)
    out = run("bounds", family_file("path", 3), family_file("path", 3))[1]
    assert "VIOLATION" in out and "meg(G⊠H) = 9" in out


def test_random_is_seeded(run):
    a = run("--seed", 4, "random", 8, 0.4, "--connected")[1]
    b = run("--seed", 4, "random", 8, 0.4, "--connected")[1]
    assert a == b and parse_dimacs(a).n == 8


def test_reduce(run, tmp_path):
    cnf = tmp_path / "xor.cnf"
    cnf.write_text("p cnf 2 2\n1 2 0\n-1 -2 0\n")
    code, out, _ = run("reduce", cnf)
    g = parse_dimacs(out)
    assert code == 0 and g.n == 42
    side = tmp_path / "side.json"
    code, out, _ = run("--json", "reduce", cnf, "-o", tmp_path / "g.dimacs", "--sidecar", side)
    assert json.loads(out)["k"] == 10
    assert json.loads(side.read_text())["roles"]["40"] == "z_1"


def test_reduce_trivial_and_violation(run, tmp_path):
    cnf = tmp_path / "unit.cnf"
    cnf.write_text("p cnf 1 1\n1 0\n")
    assert "TRIVIALLY_SAT" in run("reduce", cnf)[1]
    code, _, err = run("reduce", "--no-preprocess", cnf)
    assert code == 2 and "error" in err


def test_decide_sat(run, tmp_path):
    sat = tmp_path / "sat.cnf"
    sat.write_text("p cnf 2 2\n1 2 0\n-1 -2 0\n")
    code, out, _ = run("decide-sat", "--cross-check", sat)
    assert code == 0 and out.startswith("SATISFIABLE")
    unsat = tmp_path / "unsat.cnf"
    unsat.write_text("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n")
    code, out, _ = run("--json", "decide-sat", unsat)
    assert code == 1 and json.loads(out)["satisfiable"] is False


def test_input_errors(run, tmp_path):
    assert run("solve", tmp_path / "missing.dimacs")[0] == 2
    bad = tmp_path / "bad.dimacs"
    bad.write_text("p edge 2 1\ne 1 1\n")
    code, _, err = run("info", bad)
    assert code == 2 and "line 2" in err
    assert run("family", "mobius", 5)[0] == 2
    assert run("verify", bad.with_name("x"), "0")[0] == 2


def test_unknown_vertex_is_input_error(run, family_file):
    assert run("verify", family_file("path", 3), "zz")[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "megset.cli", "family", "cycle", "5"], capture_output=True, text=True, check=True
    )
    assert proc.stdout.startswith("c family cycle 5\np edge 5 5\n")
