"""Backbones and complete equi-propagation by iterated SAT calls.

``backbone`` keeps a table of the values each tracked variable took in the
models found so far.  Every round adds a clause asking the solver to flip
at least one variable that has only been seen with one value; once that is
unsatisfiable, the single-valued variables are exactly the backbone.

``cep`` reduces equation finding to a backbone: for tracked variables
x_1..x_n and x_0 = true it adds selectors e_ij <-> (x_i <-> x_j) for
0 <= i < j <= n.  A selector with a single value across all models is an
implied equation.  The first round only flips x variables, later rounds
flip any single-valued variable.  Every satisfiable round after the first
splits a block of the partition of {x_0..x_n} induced by the models seen so
far, so there are at most n+1 satisfiable calls and exactly one
unsatisfiable call.
"""

from dataclasses import dataclass, field

from .sat import Solver


class CepInvariantError(AssertionError):
    pass


@dataclass
class BackboneResult:
    sat: bool
    values: dict = field(default_factory=dict)     # var -> True / False / None (free)
    sat_calls: int = 0
    unsat_calls: int = 0

    def literals(self):
        return sorted((v if val else -v for v, val in self.values.items() if val is not None),
                      key=abs)


def _make_solver(num_vars, clauses, solver_factory):
    s = (solver_factory or Solver)(num_vars)
    for cl in clauses:
        s.add_clause(cl)
    return s


def _occurring(clauses):
    occ = set()
    for cl in clauses:
        occ.update(abs(l) for l in cl)
    return occ


def backbone(cnf, tracked=None, solver_factory=None):
    """Backbone of ``cnf`` (a :class:`CnfDoc`) restricted to ``tracked`` variables.

    Variables not occurring in any clause are free.  Returns a
    :class:`BackboneResult`; ``sat`` is False when the formula is
    unsatisfiable.
    """
    clauses = cnf.clauses
    if cnf.xors:
        from .cnf import xor_to_clauses
        clauses = clauses + [c for x in cnf.xors for c in xor_to_clauses(x)]
    if tracked is None:
        tracked = range(1, cnf.num_vars + 1)
    tracked = sorted(set(tracked))
    occ = _occurring(clauses)
    s = _make_solver(cnf.num_vars, clauses, solver_factory)
    res = BackboneResult(False)
    res.sat_calls, res.unsat_calls = 0, 0
    if not s.solve():
        res.unsat_calls = 1
        return res
    res.sat = True
    res.sat_calls = 1
    model = s.model()
    seen = {}
    for v in tracked:
        if v not in occ:
            seen[v] = {True, False}
        else:
            seen[v] = {model[v - 1] > 0}
    while True:
        block = [-v if True in vals else v for v, vals in seen.items() if len(vals) == 1]
        if not block or not s.add_clause(block) or not s.solve():
            res.unsat_calls += 1
            break
        res.sat_calls += 1
        model = s.model()
        for v in seen:
            seen[v].add(model[v - 1] > 0)
    res.values = {v: (next(iter(vals)) if len(vals) == 1 else None) for v, vals in seen.items()}
    return res


@dataclass
class CepRun:
    sat: bool
    n: int
    equations: list = field(default_factory=list)   # (a, b) meaning a = b; b may be negative; a=0 is true
    sat_calls: int = 0
    unsat_calls: int = 0
    partition_sizes: list = field(default_factory=list)   # blocks after each satisfiable call
    tracked: list = field(default_factory=list)

    def backbone_literals(self):
        return [b for a, b in self.equations if a == 0]

    def format_lines(self):
        """Backbone literals, then ``a = b`` / ``a = -b`` lines (DIMACS ids)."""
        out = [str(b) for a, b in self.equations if a == 0]
        out += ["%d = %d" % (a, b) for a, b in self.equations if a != 0]
        return out


def _blocks(signatures):
    """Number of blocks of elements whose signatures agree up to complement."""
    keys = set()
    for sig in signatures:
        if sig and sig[0]:
            sig = tuple(not b for b in sig)
        keys.add(tuple(sig))
    return len(keys)


def cep(cnf, tracked=None, solver_factory=None):
    """Complete equi-propagation over ``tracked`` variables of ``cnf``."""
    clauses = list(cnf.clauses)
    if cnf.xors:
        from .cnf import xor_to_clauses
        clauses += [c for x in cnf.xors for c in xor_to_clauses(x)]
    occ = _occurring(clauses)
    if tracked is None:
        tracked = range(1, cnf.num_vars + 1)
    xs = sorted(v for v in set(tracked) if v in occ)
    n = len(xs)
    nv = cnf.num_vars
    x0 = nv + 1
    nv += 1
    clauses.append([x0])
    lits = [x0] + xs
    sel = {}
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            nv += 1
            e, a, b = nv, lits[i], lits[j]
            sel[(i, j)] = e
            clauses += [[-e, -a, b], [-e, a, -b], [e, a, b], [e, -a, -b]]
    s = (solver_factory or Solver)(nv)
    for cl in clauses:
        s.add_clause(cl)
    run = CepRun(False, n, tracked=xs)
    if not s.solve():
        run.unsat_calls = 1
        return run
    run.sat = True
    run.sat_calls = 1
    models = [s.model()]
    x_vars = xs
    all_vars = xs + [sel[k] for k in sorted(sel)]
    seen = {v: {models[0][v - 1] > 0} for v in all_vars}
    run.partition_sizes.append(_partition_size(models, lits))
    rnd = 2
    while True:
        pool = x_vars if rnd == 2 else all_vars
        block = [-v if True in seen[v] else v for v in pool if len(seen[v]) == 1]
        if rnd == 2 and not block:
            pool = all_vars
            block = [-v if True in seen[v] else v for v in pool if len(seen[v]) == 1]
        rnd += 1
        if not block or not s.add_clause(block) or not s.solve():
            run.unsat_calls += 1
            break
        run.sat_calls += 1
        m = s.model()
        models.append(m)
        for v in all_vars:
            seen[v].add(m[v - 1] > 0)
        run.partition_sizes.append(_partition_size(models, lits))
    # union-find over indices 0..n from single-valued selectors
    parent = list(range(n + 1))
    sign = [False] * (n + 1)

    def find(i):
        flip = False
        while parent[i] != i:
            flip ^= sign[i]
            i = parent[i]
        return i, flip

    for (i, j), e in sorted(sel.items()):
        vals = seen[e]
        if len(vals) != 1:
            continue
        same = next(iter(vals))
        ri, fi = find(i)
        rj, fj = find(j)
        if ri == rj:
            continue
        lo, hi = min(ri, rj), max(ri, rj)
        parent[hi] = lo
        # x_i = x_j xor (not same); relate the roots
        sign[hi] = fi ^ fj ^ (not same)
    for j in range(1, n + 1):
        r, flip = find(j)
        if r == j:
            continue
        if r == 0:
            run.equations.append((0, xs[j - 1] if not flip else -xs[j - 1]))
        else:
            run.equations.append((xs[r - 1], -xs[j - 1] if flip else xs[j - 1]))
    return run


def _partition_size(models, lits):
    sigs = []
    for l in lits:
        sigs.append(tuple(m[l - 1] > 0 for m in models))
    return _blocks(sigs)


def iteration_audit(run):
    """Check the call-count bounds of a completed satisfiable run."""
    if not run.sat:
        raise CepInvariantError("audit needs a satisfiable run")
    stats = {"sat_calls": run.sat_calls, "unsat_calls": run.unsat_calls, "n": run.n,
             "partition": list(run.partition_sizes)}
    if run.sat_calls > run.n + 1:
        raise CepInvariantError("%d satisfiable calls exceed n+1 = %d" % (run.sat_calls, run.n + 1))
    if run.unsat_calls != 1:
        raise CepInvariantError("%d unsatisfiable calls, expected exactly one" % run.unsat_calls)
    sizes = run.partition_sizes
    for a, b in zip(sizes, sizes[1:]):
        if b <= a:
            raise CepInvariantError("partition did not strictly refine: %s" % sizes)
    return stats


# -- compile-time pass ---------------------------------------------------

def apply_cep_pass(model, group, track="source", solver_factory=None):
    """Run CEP on the constraints labelled ``group`` and import the equations.

    Returns the number of equations imported.  ``track`` selects the
    variables whose equations are sought: ``"source"`` (bits of declared
    identifiers) or ``"all"`` (every variable of the group's clauses).
    """
    from .encoder import ENCODERS, EncodeOptions, _Emitter
    from .model import UNSAT, TRUE, UnaryInt, Unsat
    from .simplify import simplify

    simplify(model)
    if model.status == UNSAT:
        return 0
    members = [c for c in model.constraints if c.alive and c.group == group]
    if not members:
        return 0
    e = _Emitter(model, EncodeOptions())
    touched = set()
    for c in members:
        for a in c.args:
            for x in (a if isinstance(a, (list, tuple)) else [a]):
                if isinstance(x, UnaryInt):
                    touched.update(abs(model.resolve(b)) for b in x.bits)
    doms = [c for c in model.constraints if c.alive and c.tag == "int_dom" and c.group != group
            and any(abs(model.resolve(b)) in touched for b in c.args[0].bits)]
    try:
        for c in members + doms:
            ENCODERS[c.tag](e, c)
    except Unsat:
        model.status = UNSAT
        return 0
    used = sorted({abs(l) for cl in e.clauses for l in cl} | {abs(l) for x in e.xors for l in x})
    local = {v: i for i, v in enumerate(used, 1)}
    back = {i: v for v, i in local.items()}

    def ren(cl):
        return [local[l] if l > 0 else -local[-l] for l in cl]

    from .cnf import CnfDoc
    doc = CnfDoc(len(used), [ren(cl) for cl in e.clauses], [ren(x) for x in e.xors])
    if track == "source":
        src = set()
        for ent in model.declarations.values():
            bits = ent.bits if hasattr(ent, "bits") else [ent]
            src.update(abs(model.resolve(b)) for b in bits)
        tracked = [local[v] for v in used if v in src]
    else:
        tracked = list(range(1, len(used) + 1))
    run = cep(doc, tracked, solver_factory)
    if not run.sat:
        model.status = UNSAT
        return 0
    count = 0
    try:
        for a, b in run.equations:
            lb = back[abs(b)] * (1 if b > 0 else -1)
            la = TRUE if a == 0 else back[a]
            if model.equate(la, lb):
                count += 1
    except Unsat:
        model.status = UNSAT
        return count
    model.log("cep", None, "group=%s equations=%d" % (group, count))
    simplify(model)
    return count
