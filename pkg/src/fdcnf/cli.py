"""Command-line front end: compile, solve, cep, bench."""

import argparse
import sys
import time

from . import sat
from .cnf import DimacsError, read_dimacs, varmap_lines, write_dimacs
from .compiler import compile_model, solve_compiled
from .model import ModelError
from .parser import ParseError

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e.strerror)) from None


def _solver_factory(args):
    if getattr(args, "solver", None):
        cmd = args.solver
        return lambda n=0: sat.ExternalSolver(cmd, n)
    backend = getattr(args, "backend", "auto")
    if backend == "auto":
        return None
    if backend not in sat.available_backends():
        raise UsageError("backend %r is not available" % backend)
    cls = sat.CSolver if backend == "compiled" else sat.PySolver
    return cls


def _print_stats(stats, out):
    for k, v in stats.items():
        out.write("%s=%s\n" % (k, v))


def _format_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _compile(args, text):
    return compile_model(text, card=args.card, cep_groups=args.cep or (), xor=args.xor,
                         annotate=getattr(args, "annotate", False),
                         trace=getattr(args, "trace", False))


def cmd_compile(args, out):
    comp = _compile(args, _read(args.model))
    if args.output == "-":
        write_dimacs(comp.doc, out)
    else:
        with open(args.output, "w") as fh:
            write_dimacs(comp.doc, fh)
    map_path = args.map or (args.output + ".map" if args.output != "-" else None)
    if map_path and not comp.unsat:
        with open(map_path, "w") as fh:
            for line in varmap_lines(comp.model):
                fh.write(line + "\n")
    if args.trace:
        for rule, idx, effect in comp.model.trace:
            sys.stderr.write("%s %s %s\n" % (rule, "-" if idx is None else idx, effect))
    if args.stats:
        comp.stats["result"] = "UNSAT" if comp.unsat else "UNKNOWN"
        _print_stats(comp.stats, sys.stderr if args.output == "-" else out)
    return 0


def cmd_solve(args, out):
    comp = _compile(args, _read(args.model))
    ok, values = solve_compiled(comp, _solver_factory(args))
    if not ok:
        out.write("UNSAT\n")
    else:
        for name, v in values.items():
            out.write("%s = %s\n" % (name, _format_value(v)))
    if args.stats:
        _print_stats(comp.stats, out)
    return EXIT_SAT if ok else EXIT_UNSAT


def cmd_cep(args, out):
    from .cep import backbone, cep
    try:
        doc = read_dimacs(_read(args.cnf))
    except DimacsError as e:
        raise UsageError(str(e)) from None
    tracked = None
    if args.vars:
        try:
            tracked = [int(v) for v in args.vars.split(",") if v]
        except ValueError:
            raise UsageError("--vars expects comma separated variable numbers") from None
        if any(v < 1 or v > doc.num_vars for v in tracked):
            raise UsageError("--vars mentions a variable outside 1..%d" % doc.num_vars)
    factory = _solver_factory(args)
    t0 = time.perf_counter()
    if args.backbone_only:
        res = backbone(doc, tracked, factory)
        ok, calls = res.sat, (res.sat_calls, res.unsat_calls)
        lines = [str(l) for l in res.literals()]
    else:
        run = cep(doc, tracked, factory)
        ok, calls = run.sat, (run.sat_calls, run.unsat_calls)
        lines = run.format_lines()
    if not ok:
        out.write("UNSAT\n")
    for line in lines:
        out.write(line + "\n")
    if args.stats:
        _print_stats({"vars": doc.num_vars, "clauses": doc.num_clauses,
                      "sat_calls": calls[0], "unsat_calls": calls[1],
                      "cep_ms": round((time.perf_counter() - t0) * 1000.0, 1),
                      "result": "SAT" if ok else "UNSAT"}, out)
    return EXIT_SAT if ok else EXIT_UNSAT


def cmd_bench(args, out):
    from .bench import generate
    opts = {}
    if args.family == "partition":
        opts["via"] = args.via
    elif args.via != "pb":
        raise UsageError("--via only applies to the partition family")
    if args.family == "girth5":
        if len(args.params) != 2:
            raise UsageError("girth5 takes NODES EDGES")
        opts["min_degree"] = args.min_degree
    elif len(args.params) != 1:
        raise UsageError("%s takes a single size parameter" % args.family)
    try:
        inst = generate(args.family, *args.params, **opts)
    except ValueError as e:
        raise UsageError(str(e)) from None
    for note in inst.notes:
        sys.stderr.write("warning: %s\n" % note)
    if not args.solve:
        if args.output == "-":
            out.write(inst.text)
        else:
            with open(args.output, "w") as fh:
                fh.write(inst.text)
        return 0
    groups = ["sym"] if args.cep and args.family == "girth5" else ()
    comp = compile_model(inst.text, card=args.card, cep_groups=groups)
    ok, values = solve_compiled(comp, _solver_factory(args))
    verdict = ""
    if ok:
        good, msg = inst.verify(values)
        verdict = "ok" if good else "FAILED"
        comp.stats["verified"] = verdict
    if args.csv:
        keys = ["vars", "clauses", "compile_ms", "solve_ms", "result"]
        out.write("family,params,cep,%s,verified\n" % ",".join(keys))
        out.write("%s,%s,%d,%s,%s\n" % (args.family, " ".join(map(str, args.params)), bool(groups),
                                        ",".join(str(comp.stats.get(k, "")) for k in keys), verdict))
    else:
        if ok:
            out.write("%s\n" % msg)
        else:
            out.write("UNSAT\n")
        if args.stats:
            _print_stats(comp.stats, out)
    if ok and verdict != "ok":
        sys.stderr.write("error: verifier rejected the solution: %s\n" % msg)
        return 1
    return EXIT_SAT if ok else EXIT_UNSAT


def _common(p):
    p.add_argument("--card", choices=("adder", "merger", "hybrid"), default="hybrid",
                   help="cardinality network strategy (default hybrid)")
    p.add_argument("--stats", action="store_true", help="print key=value statistics")


def _solver_opts(p):
    p.add_argument("--solver", metavar="CMD", help="external DIMACS solver command")
    p.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto",
                   help="embedded solver backend")


def build_parser():
    ap = argparse.ArgumentParser(prog="fdcnf", description="Compile finite-domain models to CNF.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a model to DIMACS and a variable map")
    p.add_argument("model", help="model file, or - for stdin")
    p.add_argument("-o", "--output", default="-", help="CNF output (default stdout)")
    p.add_argument("--map", help="varmap path (default OUTPUT.map)")
    p.add_argument("--cep", nargs="+", metavar="LABEL", help="run CEP on these constraint groups")
    p.add_argument("--xor", action="store_true", help="emit xors as extended DIMACS x lines")
    p.add_argument("--annotate", action="store_true", help="clause provenance comments")
    p.add_argument("--trace", action="store_true", help="log rule firings to stderr")
    _common(p)
    p.set_defaults(fn=cmd_compile)

    p = sub.add_parser("solve", help="compile, solve and print identifier values")
    p.add_argument("model")
    p.add_argument("--cep", nargs="+", metavar="LABEL")
    p.add_argument("--xor", action="store_true")
    _common(p)
    _solver_opts(p)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("cep", help="backbone and literal equations of a DIMACS file")
    p.add_argument("cnf")
    p.add_argument("--vars", help="comma separated variables to track (default all)")
    p.add_argument("--backbone-only", action="store_true")
    p.add_argument("--stats", action="store_true")
    _solver_opts(p)
    p.set_defaults(fn=cmd_cep)

    p = sub.add_parser("bench", help="generate (and optionally solve) a benchmark instance")
    p.add_argument("family", choices=("girth5", "fractions", "partition"))
    p.add_argument("params", nargs="+", type=int)
    p.add_argument("--solve", action="store_true", help="solve and verify")
    p.add_argument("--cep", action="store_true", help="CEP on the symmetry group (girth5)")
    p.add_argument("--csv", action="store_true", help="one CSV row of statistics")
    p.add_argument("--via", choices=("pb", "binary"), default="pb",
                   help="square sums for partition")
    p.add_argument("--min-degree", type=int, default=0,
                   help="per-node degree lower bound for girth5 (symmetry group)")
    p.add_argument("-o", "--output", default="-", help="model output when not solving")
    _common(p)
    _solver_opts(p)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args, out)
    except (UsageError, ParseError, ModelError) as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
