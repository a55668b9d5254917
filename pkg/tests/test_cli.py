import io
import os

import pytest

import oracle
from fdcnf.cli import main
from fdcnf.cnf import decode, read_dimacs, read_varmap
from fdcnf.sat import ExternalSolver
from test_sat import _fake_solver

AB = "new_int(A, 0, 5)\nnew_int(B, 0, 5)\nint_plus(A, B, 5)\n"


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def ab(tmp_path):
    p = tmp_path / "ab.model"
    p.write_text(AB)
    return str(p)


def test_solve_prints_values_and_stats(ab):
    code, out = run(["solve", ab, "--stats"])
    assert code == 10
    vals = dict(l.split(" = ") for l in out.splitlines() if " = " in l)
    assert int(vals["A"]) + int(vals["B"]) == 5
    stats = dict(l.split("=") for l in out.splitlines() if "=" in l and " = " not in l)
    assert stats["clauses.int_plus"] == "0" and stats["result"] == "SAT"
    assert {"vars", "clauses", "compile_ms", "solve_ms"} <= set(stats)


def test_solve_unsat(tmp_path):
    p = tmp_path / "u.model"
    p.write_text("new_int(x, 0, 3)\nnew_int(y, 0, 3)\nint_lt(x, y)\nint_lt(y, x)\n")
    code, out = run(["solve", str(p)])
    assert code == 20 and out.strip() == "UNSAT"


def test_compile_writes_cnf_and_map(ab, tmp_path):
    cnf = str(tmp_path / "ab.cnf")
    code, out = run(["compile", ab, "-o", cnf, "--stats", "--annotate"])
    assert code == 0 and "clauses=4" in out
    doc = read_dimacs(open(cnf).read())
    assert doc.num_vars == 5 and len(doc.clauses) == 4
    assert open(cnf + ".map").read().splitlines()[0].startswith("int A 0 5 bits")
    code, out = run(["cep", cnf, "--stats"])
    assert code == 10 and "unsat_calls=1" in out


def test_cep_subcommand(tmp_path):
    cnf = tmp_path / "f.cnf"
    # x1 = -x2, x3 true
    cnf.write_text("p cnf 3 3\n1 2 0\n-1 -2 0\n3 0\n")
    code, out = run(["cep", str(cnf)])
    assert code == 10
    assert out.splitlines() == ["3", "1 = -2"]
    code, out = run(["cep", str(cnf), "--backbone-only"])
    assert out.splitlines() == ["3"]
    code, _ = run(["cep", str(cnf), "--vars", "9"])
    assert code == 2


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    bad = tmp_path / "bad.model"
    bad.write_text("new_bool(a)\nint_eq(a, 1)\n")
    code, _ = run(["solve", str(bad)])
    assert code == 2
    assert "line 2, column 8" in capsys.readouterr().err
    code, _ = run(["solve", str(tmp_path / "missing.model")])
    assert code == 2
    code, _ = run(["bench", "girth5", "5"])
    assert code == 2


def test_bench_subcommand(tmp_path):
    code, out = run(["bench", "girth5", "5", "5"])
    assert code == 0 and "bool_arrays_lex" in out and "@sym" in out
    code, out = run(["bench", "girth5", "5", "6", "--solve"])
    assert code == 20
    code, out = run(["bench", "partition", "8", "--solve", "--stats"])
    assert code == 10 and "sums 18/18" in out and "verified=ok" in out
    code, out = run(["bench", "partition", "8", "--solve", "--csv", "--via", "binary"])
    lines = out.splitlines()
    assert code == 10 and lines[0].startswith("family,params") and lines[1].endswith(",SAT,ok")
    code, out = run(["bench", "girth5", "7", "8", "--solve", "--cep", "--min-degree", "1"])
    assert code == 10


def test_external_solver_agrees_with_embedded(tmp_path):
    cmd = _fake_solver(tmp_path)
    rng = oracle.rng(17)
    for k in range(12):
        name = rng.choice(oracle.templates())
        text = oracle.random_instance(name, rng)
        model = tmp_path / ("m%d.model" % k)
        model.write_text(text)
        cnf = str(tmp_path / ("m%d.cnf" % k))
        code_embedded, _ = run(["solve", str(model)])
        code_ext, out = run(["solve", str(model), "--solver", cmd])
        assert code_embedded == code_ext
        run(["compile", str(model), "-o", cnf])
        doc = read_dimacs(open(cnf).read())
        s = ExternalSolver(cmd, doc.num_vars)
        for c in doc.clauses:
            s.add_clause(c)
        ok = s.solve()
        assert ok == (code_embedded == 10)
        if ok and os.path.exists(cnf + ".map"):
            vals = decode(read_varmap(open(cnf + ".map").read()), s.model())
            src_vals = tuple(oracle._norm(v) for v in vals.values())
            assert src_vals in oracle.brute_force(text)
