"""Compare the compiled and pure-Python CDCL backends on the same CNFs.

    python3 benchmarks/bench_solver.py [--repeat N] [--quick]

Prints one row per (instance, backend): verdict, conflicts and the best
wall time over the repeats, then the speedup of the compiled core.
"""

import argparse
import random
import time

from fdcnf.bench import generate
from fdcnf.compiler import compile_model
from fdcnf.sat import available_backends


def random_3sat(n, ratio, seed):
    rng = random.Random(seed)
    clauses = []
    for _ in range(int(n * ratio)):
        vs = rng.sample(range(1, n + 1), 3)
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return n, clauses


def model_cnf(family, *params, **opts):
    comp = compile_model(generate(family, *params, **opts).text)
    return comp.doc.num_vars, comp.doc.clauses


def instances(quick):
    yield "3sat-n50", random_3sat(50, 4.26, 1)
    yield "3sat-n80", random_3sat(80, 4.26, 2)
    yield "partition-8", model_cnf("partition", 8)
    yield "girth5-10-15", model_cnf("girth5", 10, 15)
    if not quick:
        yield "3sat-n120", random_3sat(120, 4.26, 3)
        yield "partition-12", model_cnf("partition", 12)
        yield "girth5-15-26", model_cnf("girth5", 15, 26)
        yield "fractions-3", model_cnf("fractions", 3)


def run(cls, nvars, clauses):
    s = cls(nvars)
    for c in clauses:
        s.add_clause(c)
    t0 = time.perf_counter()
    ok = s.solve()
    dt = time.perf_counter() - t0
    return ok, dt, s.stats.get("conflicts", 0)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small instances only")
    args = ap.parse_args(argv)
    backends = available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; timing the Python fallback only")
    print("%-14s %-9s %-6s %10s %10s %8s" % ("instance", "backend", "result", "conflicts",
                                            "best_ms", "speedup"))
    for name, (nvars, clauses) in instances(args.quick):
        best = {}
        for bname, cls in sorted(backends.items()):
            times = []
            for _ in range(args.repeat):
                ok, dt, confl = run(cls, nvars, clauses)
                times.append(dt)
            best[bname] = min(times)
            speed = ""
            if bname == "python" and "compiled" in best and best["compiled"] > 0:
                speed = "%.1fx" % (best["python"] / best["compiled"])
            print("%-14s %-9s %-6s %10d %10.1f %8s" % (name, bname, "SAT" if ok else "UNSAT",
                                                      confl, best[bname] * 1000, speed))


if __name__ == "__main__":
    main()
