import itertools
import os
import random
import stat
import sys
import textwrap

import pytest

from fdcnf.sat import BACKEND, ExternalSolver, Solver, available_backends


def brute_sat(n, clauses):
    for bits in itertools.product((False, True), repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def check_model(model, clauses):
    val = {abs(l): l > 0 for l in model}
    return all(any(val[abs(l)] == (l > 0) for l in c) for c in clauses)


def test_default_backend_is_compiled_when_built():
    assert BACKEND in available_backends()
    if "compiled" in available_backends():
        assert Solver.backend == "compiled"


def test_basic(solver_cls):
    s = solver_cls()
    a, b = s.new_var(), s.new_var()
    s.add_clause([a, b])
    s.add_clause([-a])
    assert s.solve()
    assert s.model() == [-1, 2]
    assert s.value(b)
    s.add_clause([-b])
    assert not s.solve()


def test_empty_and_unit_conflicts(solver_cls):
    s = solver_cls(2)
    assert not s.add_clause([])
    assert not s.solve()
    s = solver_cls(1)
    s.add_clause([1])
    assert not s.add_clause([-1]) or not s.solve()
    assert not s.solve()


def test_rejects_bad_literals(solver_cls):
    s = solver_cls(2)
    with pytest.raises(ValueError):
        s.add_clause([3])
    with pytest.raises(ValueError):
        s.add_clause([0])


def pigeonhole(p, h):
    var = lambda i, j: i * h + j + 1
    cls = [[var(i, j) for j in range(h)] for i in range(p)]
    for j in range(h):
        for i, k in itertools.combinations(range(p), 2):
            cls.append([-var(i, j), -var(k, j)])
    return p * h, cls


@pytest.mark.parametrize("p", [3, 5, 6])
def test_pigeonhole_unsat(solver_cls, p):
    n, cls = pigeonhole(p, p - 1)
    s = solver_cls(n)
    for c in cls:
        s.add_clause(c)
    assert not s.solve()


def test_random_against_brute_force(solver_cls):
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 9)
        cls = [[rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(1, 3))]
               for _ in range(rng.randint(1, 5 * n))]
        s = solver_cls(n)
        for c in cls:
            s.add_clause(c)
        res = s.solve()
        assert res == brute_sat(n, cls)
        if res:
            assert check_model(s.model(), cls)


def test_incremental_and_assumptions(solver_cls):
    rng = random.Random(3)
    n = 30
    s = solver_cls(n)
    cls = []
    for _ in range(60):
        c = [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(3)]
        cls.append(c)
        s.add_clause(c)
        assert s.solve()
        assert check_model(s.model(), cls)
        a = rng.choice([1, -1]) * rng.randint(1, n)
        if s.solve([a]):
            assert a in s.model()
    assert s.solve()


def test_blocking_enumeration(solver_cls):
    s = solver_cls(3)
    s.add_clause([1, 2, 3])
    count = 0
    while s.solve():
        count += 1
        s.add_clause([-l for l in s.model()])
    assert count == 7


def test_backends_agree_on_compiled_models():
    from fdcnf.bench import generate
    from fdcnf.compiler import compile_model
    doc = compile_model(generate("girth5", 7, 8).text).doc
    verdicts = set()
    for cls in available_backends().values():
        s = cls(doc.num_vars)
        for c in doc.clauses:
            s.add_clause(c)
        r = s.solve()
        verdicts.add(r)
        if r:
            assert check_model(s.model(), doc.clauses)
    assert len(verdicts) == 1


def _fake_solver(tmp_path):
    script = tmp_path / "fake_solver.py"
    script.write_text(textwrap.dedent("""\
        import sys
        from fdcnf.cnf import read_dimacs
        from fdcnf.sat import PySolver
        doc = read_dimacs(open(sys.argv[1]).read())
        s = PySolver(doc.num_vars)
        for c in doc.clauses:
            s.add_clause(c)
        if s.solve():
            print("s SATISFIABLE")
            print("v " + " ".join(map(str, s.model())) + " 0")
        else:
            print("s UNSATISFIABLE")
        """))
    return "%s %s" % (sys.executable, script)


def test_external_solver(tmp_path):
    cmd = _fake_solver(tmp_path)
    s = ExternalSolver(cmd, 2)
    s.add_clause([1, 2])
    s.add_clause([-1])
    assert s.solve()
    assert s.model() == [-1, 2]
    assert not s.solve([-2])


def test_pure_python_fallback_selected_by_environment():
    import subprocess
    env = dict(os.environ, FDCNF_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import fdcnf.sat as s; print(s.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_solver_benchmark_script_runs():
    import subprocess
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    out = subprocess.run([sys.executable, os.path.join(root, "benchmarks", "bench_solver.py"),
                          "--quick", "--repeat", "1"], capture_output=True, text=True, check=True)
    rows = [l.split() for l in out.stdout.splitlines()[1:] if l.strip()]
    assert {r[1] for r in rows} == set(available_backends()) or "not built" in out.stdout
    by_instance = {}
    for r in rows:
        by_instance.setdefault(r[0], set()).add(r[2])
    assert all(len(v) == 1 for v in by_instance.values())
