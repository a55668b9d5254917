"""Compilation pipeline: parse, lower, simplify, optional CEP, encode, solve."""

import time
from dataclasses import dataclass, field

from .cep import apply_cep_pass
from .cnf import decode, read_varmap, varmap_lines, xor_to_clauses
from .encoder import EncodeOptions, encode
from .model import UNSAT
from .parser import SourceModel, load_model, lower, parse_model
from .sat import Solver
from .simplify import simplify


@dataclass
class Compiled:
    model: object
    doc: object
    stats: dict = field(default_factory=dict)

    @property
    def unsat(self):
        return self.doc.unsat


def compile_model(source, card="hybrid", cep_groups=(), xor=False, annotate=False,
                  half_comparators=False, cep_track="source", trace=False):
    """Compile model text (or a parsed :class:`SourceModel`) to CNF."""
    t0 = time.perf_counter()
    if isinstance(source, SourceModel):
        model = lower(source, card=card)
    elif isinstance(source, str):
        model = load_model(source, card=card)
    else:
        model = source
    if trace:
        model.trace = []
    simplify(model)
    ceq = 0
    for g in cep_groups:
        ceq += apply_cep_pass(model, g, track=cep_track)
    doc = encode(model, EncodeOptions(xor=xor, half_comparators=half_comparators,
                                      annotate=annotate))
    ms = (time.perf_counter() - t0) * 1000.0
    stats = {"vars": doc.num_vars, "clauses": doc.num_clauses, "compile_ms": round(ms, 1)}
    if cep_groups:
        stats["cep_equations"] = ceq
    for tag in sorted(doc.provenance):
        stats["clauses." + tag] = doc.provenance[tag]
    return Compiled(model, doc, stats)


def solve_compiled(comp, solver_factory=None):
    """Solve a compiled model.  Returns (sat, values) with values by identifier."""
    t0 = time.perf_counter()
    if comp.doc.unsat:
        comp.stats["solve_ms"] = 0.0
        comp.stats["result"] = "UNSAT"
        return False, {}
    clauses = comp.doc.clauses
    if comp.doc.xors:
        clauses = clauses + [c for x in comp.doc.xors for c in xor_to_clauses(x)]
    s = (solver_factory or Solver)(comp.doc.num_vars)
    for cl in clauses:
        s.add_clause(cl)
    sat = s.solve()
    comp.stats["solve_ms"] = round((time.perf_counter() - t0) * 1000.0, 1)
    comp.stats["result"] = "SAT" if sat else "UNSAT"
    if not sat:
        return False, {}
    values = decode(_entries(comp.model), s.model())
    return True, values


def _entries(model):
    return read_varmap("\n".join(varmap_lines(model)))


def solve_text(text, **kw):
    comp = compile_model(text, **kw)
    return solve_compiled(comp)


__all__ = ["Compiled", "compile_model", "solve_compiled", "solve_text", "parse_model", "UNSAT"]
