"""Worklist fixpoint of equi-propagation, partial evaluation and decomposition.

Every constraint tag has one rule.  A rule inspects the constraint through
the equivalence store and may bind literals (``model.equate``), post new
constraints (decomposition), or delete the constraint (``model.kill``).
Whenever a literal changes class, every constraint mentioning it is put
back on the FIFO queue.  Odd-even merger expansion of ``int_plus`` nodes is
deferred until the queue is empty so that it only happens to nodes that
equi-propagation could not remove.
"""

from . import cardinality
from .model import FALSE, TRUE, UNSAT, UnaryInt, Unsat

RULES = {}


def rule(*tags):
    def deco(fn):
        for t in tags:
            RULES[t] = fn
        return fn
    return deco


def simplify(model, trace=False):
    """Run all rules to fixpoint.  Returns the number of rule firings."""
    if trace and model.trace is None:
        model.trace = []
    start = model.firings
    if model.status == UNSAT:
        return 0
    model.requeue_all()
    deferred = []
    try:
        while True:
            c = model.pop_pending()
            if c is None:
                if not _expand_deferred(model, deferred):
                    break
                continue
            _fire(model, c, deferred)
    except Unsat:
        model.status = UNSAT
    finally:
        model.group = None
    return model.firings - start


def _fire(model, c, deferred):
    before = model.firings
    nposted = len(model.constraints)
    model.group = c.group
    RULES[c.tag](model, c, deferred)
    if model.firings != before and model.trace is not None:
        effect = []
        nnew = len(model.constraints) - nposted
        if nnew:
            effect.append("posted=%d" % nnew)
        if not c.alive:
            effect.append("deleted")
        if not effect:
            effect.append("propagated")
        model.log("ep_" + c.tag, c, " ".join(effect))


def _expand_deferred(model, deferred):
    done = False
    while deferred:
        c = deferred.pop(0)
        if not c.alive:
            continue
        model.group = c.group
        x, y, z = c.args
        m = _width(model, x)
        p = _width(model, y)
        if cardinality.use_merger(model.card, m, p):
            n0 = len(model.constraints)
            model.kill(c)
            cardinality.decompose_int_plus_merger(model, x, y, z)
            model.log("merger", c, "posted=%d deleted" % (len(model.constraints) - n0))
            done = True
    return done or model._queue


def _width(model, x):
    lo, hi = model.bounds(x)
    return max(0, hi - lo)


# -- helpers -------------------------------------------------------------

def _fixed(model, x):
    return model.value_if_fixed(x)


def _geq(model, x, v):
    return model.equate(x.ge(v), TRUE)


def _lt(model, x, v):
    return model.equate(x.ge(v), FALSE)


def _unify_ints(model, x, y, shift=0):
    """x == y + shift, threshold by threshold."""
    lo = min(x.lo, y.lo + shift)
    hi = max(x.hi, y.hi + shift)
    for t in range(lo, hi + 2):
        model.equate(x.ge(t), y.ge(t - shift))


# -- integer domains -----------------------------------------------------

@rule("int_dom")
def ep_int_dom(model, c, _):
    (x,) = c.args
    while True:
        bits = model.resolved_bits(x)
        n = len(bits)
        changed = False
        last_true = -1
        first_false = n
        seen = {}
        for j, b in enumerate(bits):
            if b == TRUE:
                last_true = j
            elif b == FALSE and first_false == n:
                first_false = j
        if last_true >= first_false:
            raise Unsat("%s: value both >= %d and < %d" % (x, x.offset + last_true + 1,
                                                           x.offset + first_false + 1))
        for j in range(last_true):
            if bits[j] != TRUE:
                changed |= model.equate(x.bits[j], TRUE)
        for j in range(first_false + 1, n):
            if bits[j] != FALSE:
                changed |= model.equate(x.bits[j], FALSE)
        if changed:
            continue
        for j, b in enumerate(bits):
            if b == TRUE or b == FALSE:
                continue
            if b in seen:
                i = seen[b]
                for k in range(i + 1, j):
                    changed |= model.equate(x.bits[k], b)
            elif -b in seen:
                # b_i -> ... and b_j -> b_i with b_j = not b_i: forces b_i true, b_j false
                changed |= model.equate(x.bits[seen[-b]], TRUE)
                changed |= model.equate(x.bits[j], FALSE)
            else:
                seen[b] = j
            if changed:
                break
        if not changed:
            break
    if all(b == TRUE or b == FALSE for b in model.resolved_bits(x)):
        model.kill(c)


# -- Boolean -------------------------------------------------------------

@rule("bool_eq")
def ep_bool_eq(model, c, _):
    a, b = c.args
    model.equate(a, b)
    model.kill(c)


@rule("bool2int")
def ep_bool2int(model, c, _):
    x, i = c.args
    model.equate(x, i.ge(1))
    model.equate(i.ge(0), TRUE)
    model.equate(i.ge(2), FALSE)
    model.kill(c)


@rule("bool_array_and")
def ep_and(model, c, _):
    for x in c.args[0]:
        model.equate(x, TRUE)
    model.kill(c)


@rule("bool_array_or")
def ep_or(model, c, _):
    lits = []
    seen = set()
    for x in c.args[0]:
        r = model.resolve(x)
        if r == TRUE or -r in seen:
            model.kill(c)
            return
        if r == FALSE or r in seen:
            continue
        seen.add(r)
        lits.append(r)
    if not lits:
        raise Unsat("empty clause")
    if len(lits) == 1:
        model.equate(lits[0], TRUE)
        model.kill(c)


def _xor_normal(model, lits):
    """Free literals and required parity of ``XOR(lits) == 1``."""
    parity = 1
    count = {}
    for x in lits:
        r = model.resolve(x)
        if r == TRUE:
            parity ^= 1
        elif r == FALSE:
            continue
        else:
            v = abs(r)
            if r < 0:
                parity ^= 1
            count[v] = count.get(v, 0) + 1
    free = sorted(v for v, k in count.items() if k % 2)
    return free, parity


@rule("bool_array_xor")
def ep_xor(model, c, _):
    free, parity = _xor_normal(model, c.args[0])
    if not free:
        if parity:
            raise Unsat("xor of constants")
        model.kill(c)
    elif len(free) == 1:
        model.equate(free[0], TRUE if parity else FALSE)
        model.kill(c)
    elif len(free) == 2:
        a, b = free
        model.equate(a, -b if parity else b)
        model.kill(c)


@rule("bool_array_iff")
def ep_iff(model, c, _):
    # left fold of <->: value = xor(xs) xor ((n - 1) mod 2)
    xs = list(c.args[0])
    if (len(xs) - 1) % 2:
        xs.append(TRUE)
    model.kill(c)
    model.post("bool_array_xor", xs)


@rule("bool_array_and_reif")
def ep_and_reif(model, c, _):
    xs, y = c.args
    ry = model.resolve(y)
    if ry == TRUE:
        for x in xs:
            model.equate(x, TRUE)
        model.kill(c)
        return
    if ry == FALSE:
        model.kill(c)
        model.post("bool_array_or", [-x for x in xs])
        return
    lits = []
    seen = set()
    for x in xs:
        r = model.resolve(x)
        if r == FALSE or -r in seen:
            model.equate(y, FALSE)
            model.kill(c)
            return
        if r == TRUE or r in seen:
            continue
        seen.add(r)
        lits.append(r)
    if not lits:
        model.equate(y, TRUE)
        model.kill(c)
    elif len(lits) == 1:
        model.equate(y, lits[0])
        model.kill(c)
    elif -ry in seen:
        # y <-> (not y and rest) only holds with y false
        model.equate(y, FALSE)
    elif ry in seen:
        # y <-> (y and rest) is y -> rest
        model.kill(c)
        for r in lits:
            if r != ry:
                model.post("bool_array_or", [-ry, r])


@rule("bool_array_or_reif")
def ep_or_reif(model, c, _):
    xs, y = c.args
    model.kill(c)
    model.post("bool_array_and_reif", [-x for x in xs], -y)


@rule("bool_array_xor_reif")
def ep_xor_reif(model, c, _):
    xs, y = c.args
    model.kill(c)
    model.post("bool_array_xor", list(xs) + [-y])


@rule("bool_array_iff_reif")
def ep_iff_reif(model, c, _):
    xs, y = c.args
    xs = list(xs) + [-y]
    if (len(c.args[0]) - 1) % 2:
        xs.append(TRUE)
    model.kill(c)
    model.post("bool_array_xor", xs)


@rule("bool_or_reif", "bool_and_reif", "bool_xor_reif", "bool_iff_reif")
def ep_bool_op_reif(model, c, _):
    a, b, y = c.args
    op = c.tag[len("bool_"):-len("_reif")]
    model.kill(c)
    model.post("bool_array_%s_reif" % op, [a, b], y)


@rule("comparator")
def ep_comparator(model, c, _):
    a, b, hi, lo = (model.resolve(x) for x in c.args)
    if a == TRUE or b == TRUE:
        other = b if a == TRUE else a
        model.equate(hi, TRUE)
        model.equate(lo, other)
    elif a == FALSE or b == FALSE:
        other = b if a == FALSE else a
        model.equate(hi, other)
        model.equate(lo, FALSE)
    elif a == b:
        model.equate(hi, a)
        model.equate(lo, a)
    elif a == -b:
        model.equate(hi, TRUE)
        model.equate(lo, FALSE)
    elif hi == FALSE:
        model.equate(a, FALSE)
        model.equate(b, FALSE)
        model.equate(lo, FALSE)
    elif lo == TRUE:
        model.equate(a, TRUE)
        model.equate(b, TRUE)
        model.equate(hi, TRUE)
    elif hi == lo:
        # or equals and only when both inputs agree
        model.equate(a, b)
        return
    elif hi == TRUE:
        model.kill(c)
        model.post("bool_array_or", [a, b])
        model.post("bool_array_and_reif", [a, b], lo)
        return
    elif lo == FALSE:
        model.kill(c)
        model.post("bool_array_or", [-a, -b])
        model.post("bool_array_and_reif", [-a, -b], -hi)
        return
    else:
        return
    model.kill(c)


@rule("lex_step")
def ep_lex_step(model, c, _):
    x, y, b, bn = (model.resolve(v) for v in c.args)
    if x == y or (x in (TRUE, FALSE) and x == y):
        model.equate(b, bn)
    elif x == -y:
        # x=0,y=1 -> true ; x=1,y=0 -> false
        model.equate(b, y)
    elif x == TRUE and y != FALSE and not _is_const(y):
        model.kill(c)
        model.post("bool_array_and_reif", [y, bn], b)
        return
    elif y == FALSE and not _is_const(x):
        model.kill(c)
        model.post("bool_array_and_reif", [-x, bn], b)
        return
    elif x == FALSE and not _is_const(y):
        # b <-> y or bn
        model.kill(c)
        model.post("bool_array_and_reif", [-y, -bn], -b)
        return
    elif y == TRUE and not _is_const(x):
        model.kill(c)
        model.post("bool_array_and_reif", [x, -bn], -b)
        return
    elif bn == TRUE:
        # b <-> (x -> y)
        model.kill(c)
        model.post("bool_array_and_reif", [x, -y], -b)
        return
    elif bn == FALSE:
        model.kill(c)
        model.post("bool_array_and_reif", [-x, y], b)
        return
    else:
        return
    model.kill(c)


def _is_const(x):
    return x == TRUE or x == FALSE


# -- integer relations ---------------------------------------------------

@rule("int_eq")
def ep_int_eq(model, c, _):
    x, y = c.args
    _unify_ints(model, x, y)
    model.kill(c)


@rule("int_leq")
def ep_int_leq(model, c, _):
    x, y = c.args
    lx, ux = model.bounds(x)
    ly, uy = model.bounds(y)
    if ux > uy:
        _lt(model, x, uy + 1)
    if ly < lx:
        _geq(model, y, lx)
    lx, ux = model.bounds(x)
    ly, uy = model.bounds(y)
    if ux <= ly:
        model.kill(c)


@rule("int_geq")
def ep_int_geq(model, c, _):
    x, y = c.args
    model.kill(c)
    model.post("int_leq", y, x)


@rule("int_lt")
def ep_int_lt(model, c, _):
    x, y = c.args
    model.kill(c)
    model.post("int_leq", x.shifted(1), y)


@rule("int_gt")
def ep_int_gt(model, c, _):
    x, y = c.args
    model.kill(c)
    model.post("int_leq", y.shifted(1), x)


@rule("int_neq")
def ep_int_neq(model, c, _):
    x, y = c.args
    lx, ux = model.bounds(x)
    ly, uy = model.bounds(y)
    if ux < ly or uy < lx:
        model.kill(c)
        return
    vx = lx if lx == ux else None
    vy = ly if ly == uy else None
    if vx is not None:
        model.equate(y.ge(vx), y.ge(vx + 1))
        model.kill(c)
    elif vy is not None:
        model.equate(x.ge(vy), x.ge(vy + 1))
        model.kill(c)


@rule("int_leq_reif")
def ep_int_leq_reif(model, c, _):
    x, y, b = c.args
    rb = model.resolve(b)
    if rb == TRUE:
        model.kill(c)
        model.post("int_leq", x, y)
        return
    if rb == FALSE:
        model.kill(c)
        model.post("int_leq", y.shifted(1), x)
        return
    lx, ux = model.bounds(x)
    ly, uy = model.bounds(y)
    if ux <= ly:
        model.equate(b, TRUE)
        model.kill(c)
    elif lx > uy:
        model.equate(b, FALSE)
        model.kill(c)


@rule("int_geq_reif")
def ep_int_geq_reif(model, c, _):
    x, y, b = c.args
    model.kill(c)
    model.post("int_leq_reif", y, x, b)


@rule("int_lt_reif")
def ep_int_lt_reif(model, c, _):
    x, y, b = c.args
    model.kill(c)
    model.post("int_leq_reif", x.shifted(1), y, b)


@rule("int_gt_reif")
def ep_int_gt_reif(model, c, _):
    x, y, b = c.args
    model.kill(c)
    model.post("int_leq_reif", y.shifted(1), x, b)


@rule("int_eq_reif")
def ep_int_eq_reif(model, c, _):
    x, y, b = c.args
    rb = model.resolve(b)
    if rb == TRUE:
        model.kill(c)
        model.post("int_eq", x, y)
        return
    if rb == FALSE:
        model.kill(c)
        model.post("int_neq", x, y)
        return
    lx, ux = model.bounds(x)
    ly, uy = model.bounds(y)
    if ux < ly or uy < lx:
        model.equate(b, FALSE)
        model.kill(c)
    elif lx == ux and ly == uy:
        model.equate(b, TRUE if lx == ly else FALSE)
        model.kill(c)


@rule("int_neq_reif")
def ep_int_neq_reif(model, c, _):
    x, y, b = c.args
    model.kill(c)
    model.post("int_eq_reif", x, y, -b)


# -- arithmetic ----------------------------------------------------------

@rule("int_plus")
def ep_int_plus(model, c, deferred):
    x, y, z = c.args
    while True:
        lx, ux = model.bounds(x)
        ly, uy = model.bounds(y)
        lz, uz = model.bounds(z)
        for lo, hi in ((lx, ux), (ly, uy), (lz, uz)):
            if lo > hi:
                raise Unsat("empty domain in int_plus")
        changed = False
        # X>=i, Y>=j -> Z>=i+j ; X<i, Y<j -> Z<i+j-1
        changed |= _geq(model, z, lx + ly)
        changed |= _lt(model, z, ux + uy + 1)
        # Z>=k, X<i -> Y>=k-i+1 ; Z<k, X>=i -> Y<k-i (both directions)
        changed |= _geq(model, y, lz - ux)
        changed |= _lt(model, y, uz - lx + 1)
        changed |= _geq(model, x, lz - uy)
        changed |= _lt(model, x, uz - ly + 1)
        if not changed:
            break
    if lx == ux:
        _unify_ints(model, z, y, lx)
        model.kill(c)
    elif ly == uy:
        _unify_ints(model, z, x, ly)
        model.kill(c)
    elif lz == uz:
        k = lz
        # x >= t  <->  not (y >= k - t + 1)
        for t in range(min(x.lo, k - y.hi), max(x.hi, k - y.lo) + 2):
            model.equate(x.ge(t), -y.ge(k - t + 1))
        model.kill(c)
    elif model.card != "adder":
        if c not in deferred:
            deferred.append(c)


@rule("int_times")
def ep_int_times(model, c, _):
    x, y, z = c.args
    lx, ux = model.bounds(x)
    ly, uy = model.bounds(y)
    corners = [a * b for a in (lx, ux) for b in (ly, uy)]
    _geq(model, z, min(corners))
    _lt(model, z, max(corners) + 1)
    for a, other in ((x, y), (y, x)):
        v = _fixed(model, a)
        if v is not None:
            lo, hi = model.bounds(other)
            _unify_ints(model, z, other.window(lo, hi).scaled(v))
            model.kill(c)
            return


@rule("int_div")
def ep_int_div(model, c, _):
    from .decompose import decompose_div
    model.kill(c)
    decompose_div(model, *c.args)


@rule("int_mod")
def ep_int_mod(model, c, _):
    from .decompose import decompose_mod
    model.kill(c)
    decompose_mod(model, *c.args)


@rule("int_mod_k")
def ep_int_mod_k(model, c, _):
    x, k, r = c.args
    _geq(model, r, 0)
    _lt(model, r, k)
    lx, ux = model.bounds(x)
    if lx // k == ux // k:
        # a single residue window: r = x - qk
        model.kill(c)
        model.post("int_eq", r, x.shifted(-(lx // k) * k))


# composite templates register their rules on import
from . import binary, decompose  # noqa: E402,F401
