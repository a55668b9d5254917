"""Clause generation for the primitive constraints left after simplification."""

from dataclasses import dataclass

from . import cardinality
from .cnf import CnfDoc, xor_to_clauses
from .model import FALSE, TRUE, UNSAT, BinaryInt, UnaryInt, Unsat


@dataclass
class EncodeOptions:
    xor: bool = False                # keep xors as extended-DIMACS x lines
    half_comparators: bool = False   # 3-clause comparators, only sound for upper-bound networks
    annotate: bool = False           # provenance comments


class _Emitter:
    def __init__(self, model, opts):
        self.model = model
        self.opts = opts
        self.clauses = []
        self.xors = []
        self._seen = set()
        self.count = 0

    def clause(self, lits):
        resolve = self.model.resolve
        out = []
        s = set()
        for l in lits:
            r = resolve(l)
            if r == TRUE or -r in s:
                return
            if r == FALSE or r in s:
                continue
            s.add(r)
            out.append(r)
        if not out:
            raise Unsat("empty clause")
        key = tuple(sorted(out))
        if key in self._seen:
            return
        self._seen.add(key)
        self.clauses.append(out)
        self.count += 1

    def clauses_of(self, cls):
        for c in cls:
            self.clause(c)

    def new_var(self):
        return self.model.new_var()

    def xor(self, lits, parity):
        """XOR(lits) = parity over distinct free variables."""
        lits = list(lits)
        if not parity:
            lits[0] = -lits[0]
        if self.opts.xor:
            key = ("x",) + tuple(sorted(abs(l) for l in lits))
            if key not in self._seen:
                self._seen.add(key)
                self.xors.append(lits)
                self.count += 1
            return
        # Tseitin chain: t1 = l0 ^ l1, t2 = t1 ^ l2, ...; the last step is direct
        while len(lits) > 3:
            t = self.new_var()
            a, b = lits[0], lits[1]
            # t <-> a xor b  ==  XOR(a, b, not t) = 1
            self.clauses_of(xor_to_clauses([a, b, -t]))
            lits = [t] + lits[2:]
        self.clauses_of(xor_to_clauses(lits))


ENCODERS = {}


def encoder(tag):
    def deco(fn):
        ENCODERS[tag] = fn
        return fn
    return deco


def _trim(model, x):
    lo, hi = model.bounds(x)
    return lo, hi, [x.ge(t) for t in range(lo + 1, hi + 1)]


@encoder("int_dom")
def enc_int_dom(e, c):
    (x,) = c.args
    if x.implied:
        return
    for j in range(len(x.bits) - 1):
        e.clause([-x.bits[j + 1], x.bits[j]])


@encoder("bool_array_or")
def enc_or(e, c):
    e.clause(c.args[0])


@encoder("bool_array_xor")
def enc_xor(e, c):
    from .simplify import _xor_normal
    free, parity = _xor_normal(e.model, c.args[0])
    if not free:
        if parity:
            raise Unsat("xor of constants")
        return
    e.xor(free, parity)


@encoder("bool_array_and_reif")
def enc_and_reif(e, c):
    xs, y = c.args
    for x in xs:
        e.clause([-y, x])
    e.clause([y] + [-x for x in xs])


@encoder("comparator")
def enc_comparator(e, c):
    e.clauses_of(cardinality.comparator_clauses(*c.args, half=e.opts.half_comparators))


@encoder("lex_step")
def enc_lex_step(e, c):
    x, y, b, bn = c.args
    # b <-> (x -> y) and ((not x and y) or bn)
    e.clauses_of([[x, -y, b], [x, -bn, b], [-y, -bn, b],
                  [-b, -x, y], [-b, -x, bn], [-b, y, bn]])


@encoder("int_plus")
def enc_int_plus(e, c):
    x, y, z = c.args
    m = e.model
    la, _, a = _trim(m, x)
    lb, _, b = _trim(m, y)
    base = la + lb
    cbits = [z.ge(base + t) for t in range(1, len(a) + len(b) + 1)]
    e.clause([z.ge(base)])
    e.clause([-z.ge(base + len(cbits) + 1)])
    e.clauses_of(cardinality.adder_clauses(a, b, cbits))


@encoder("int_leq")
def enc_int_leq(e, c):
    x, y = c.args
    lx, ux = e.model.bounds(x)
    ly, _ = e.model.bounds(y)
    for t in range(min(lx, ly) + 1, ux + 1):
        e.clause([-x.ge(t), y.ge(t)])


def _value_lits(x, v):
    """Literals whose disjunction means x != v."""
    return [-x.ge(v), x.ge(v + 1)]


@encoder("int_neq")
def enc_int_neq(e, c):
    x, y = c.args
    lx, ux = e.model.bounds(x)
    ly, uy = e.model.bounds(y)
    for v in range(max(lx, ly), min(ux, uy) + 1):
        e.clause(_value_lits(x, v) + _value_lits(y, v))


@encoder("int_leq_reif")
def enc_int_leq_reif(e, c):
    x, y, b = c.args
    lx, ux = e.model.bounds(x)
    ly, uy = e.model.bounds(y)
    for t in range(min(lx, ly) + 1, ux + 1):
        e.clause([-b, -x.ge(t), y.ge(t)])
    # not b -> x >= y + 1
    for t in range(lx + 1, uy + 2):
        e.clause([b, -y.ge(t - 1), x.ge(t)])


@encoder("int_eq_reif")
def enc_int_eq_reif(e, c):
    x, y, b = c.args
    lx, ux = e.model.bounds(x)
    ly, uy = e.model.bounds(y)
    for t in range(min(lx, ly) + 1, max(ux, uy) + 1):
        e.clause([-b, -x.ge(t), y.ge(t)])
        e.clause([-b, x.ge(t), -y.ge(t)])
    for v in range(max(lx, ly), min(ux, uy) + 1):
        e.clause([b] + _value_lits(x, v) + _value_lits(y, v))


@encoder("int_times")
def enc_int_times(e, c):
    x, y, z = c.args
    m = e.model
    ly, uy = m.bounds(y)
    lz, uz = m.bounds(z)
    yw = y.window(ly, uy)
    for a in m.domain(x):
        guard = _value_lits(x, a)
        v = yw.scaled(a)
        for t in range(min(lz, v.lo) + 1, max(uz, v.hi) + 1):
            e.clause(guard + [-z.ge(t), v.ge(t)])
            e.clause(guard + [z.ge(t), -v.ge(t)])


@encoder("int_mod_k")
def enc_int_mod_k(e, c):
    x, k, r = c.args
    m = e.model
    lx, ux = m.bounds(x)
    if k == 2:
        _enc_mod2(e, x, lx, ux, r.ge(1))
        return
    for q in range(lx // k, ux // k + 1):
        base = q * k
        guard = [-x.ge(base), x.ge(base + k)]
        for j in range(1, k):
            e.clause(guard + [-r.ge(j), x.ge(base + j)])
            e.clause(guard + [r.ge(j), -x.ge(base + j)])
        e.clause(guard + [r.ge(0)])
        e.clause(guard + [-r.ge(k)])


def _enc_mod2(e, x, lx, ux, b):
    # parity of lx + #true bits; sortedness makes "odd count" local
    u = [x.ge(t) for t in range(lx + 1, ux + 1)]
    if lx % 2:
        b = -b
    n = len(u)
    U = list(u) + [FALSE]
    for k in range(1, n + 1, 2):
        e.clause([-U[k - 1], U[k], b])
    if n:
        e.clause([-b, U[0]])
    else:
        e.clause([-b])
    for k in range(2, n + 1, 2):
        e.clause([-b, -U[k - 1], U[k]])


def encode(model, opts=None):
    """Encode every live constraint of a simplified model into a :class:`CnfDoc`."""
    opts = opts or EncodeOptions()
    if model.status == UNSAT:
        return CnfDoc.unsatisfiable(["unsatisfiable at compile time"])
    e = _Emitter(model, opts)
    notes = []
    per_tag = {}
    try:
        for c in list(model.constraints):
            if not c.alive:
                continue
            fn = ENCODERS.get(c.tag)
            if fn is None:
                raise RuntimeError("no encoder for %s (constraint not simplified?)" % c.tag)
            before = e.count
            fn(e, c)
            n = e.count - before
            per_tag[c.tag] = per_tag.get(c.tag, 0) + n
            if opts.annotate and n:
                notes.append((before, n, c))
    except Unsat:
        model.status = UNSAT
        return CnfDoc.unsatisfiable(["unsatisfiable at encoding time"])
    return _renumber(model, e, notes, per_tag, opts)


def _declared_roots(model):
    roots = set()
    for ent in model.declarations.values():
        if isinstance(ent, (UnaryInt, BinaryInt)):
            lits = ent.bits
        else:
            lits = [ent]
        for b in lits:
            r = abs(model.resolve(b))
            if r != TRUE:
                roots.add(r)
    return roots


def _renumber(model, e, notes, per_tag, opts):
    used = set(_declared_roots(model))
    for cl in e.clauses:
        used.update(abs(l) for l in cl)
    for x in e.xors:
        used.update(abs(l) for l in x)
    index = {v: i for i, v in enumerate(sorted(used), 1)}
    model.dimacs = index

    def ren(cl):
        return [index[l] if l > 0 else -index[-l] for l in cl]

    doc = CnfDoc(len(index), [ren(cl) for cl in e.clauses], [ren(x) for x in e.xors])
    doc.provenance = {t: n for t, n in per_tag.items()}
    for tag in getattr(model, "source_tags", ()):
        doc.provenance.setdefault(tag, 0)
    if opts.annotate:
        for start, n, c in notes:
            doc.comments.append("clauses %d-%d from %s#%d%s" % (
                start + 1, start + n, c.tag, c.index, " @" + c.group if c.group else ""))
    return doc
