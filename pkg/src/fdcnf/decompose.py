"""Decomposition of composite templates into primitive ones."""

from . import cardinality
from .model import FALSE, TRUE, ModelError, UnaryInt, Unsat
from .simplify import rule

_FLIP = {"leq": "geq", "geq": "leq", "lt": "gt", "gt": "lt", "eq": "eq"}


def _sum_bounds(model, xs):
    lo = hi = 0
    for x in xs:
        a, b = model.bounds(x)
        lo += a
        hi += b
    return lo, hi


# -- min / max / abs -----------------------------------------------------

def _thresholds(xs, z):
    lo = min([x.lo for x in xs] + [z.lo])
    hi = max([x.hi for x in xs] + [z.hi])
    return range(lo + 1, hi + 1)


def _post_max(model, xs, z):
    # z >= t  <->  some x >= t
    for t in _thresholds(xs, z):
        model.post("bool_array_and_reif", [-x.ge(t) for x in xs], -z.ge(t))
    _post_range(model, xs, z, max)


def _post_min(model, xs, z):
    # z >= t  <->  every x >= t
    for t in _thresholds(xs, z):
        model.post("bool_array_and_reif", [x.ge(t) for x in xs], z.ge(t))
    _post_range(model, xs, z, min)


def _post_range(model, xs, z, pick):
    lo = pick(x.lo for x in xs)
    hi = pick(x.hi for x in xs)
    model.equate(z.ge(lo), TRUE)
    model.equate(z.ge(hi + 1), FALSE)


@rule("int_max")
def de_int_max(model, c, _):
    x, y, z = c.args
    model.kill(c)
    _post_max(model, [x, y], z)


@rule("int_min")
def de_int_min(model, c, _):
    x, y, z = c.args
    model.kill(c)
    _post_min(model, [x, y], z)


@rule("int_abs")
def de_int_abs(model, c, _):
    x, y = c.args
    model.kill(c)
    _post_max(model, [x, x.negated()], y)


@rule("int_array_max")
def de_array_max(model, c, _):
    xs, z = c.args
    model.kill(c)
    if not xs:
        raise ModelError("int_array_max of an empty array")
    _post_max(model, list(xs), z)


@rule("int_array_min")
def de_array_min(model, c, _):
    xs, z = c.args
    model.kill(c)
    if not xs:
        raise ModelError("int_array_min of an empty array")
    _post_min(model, list(xs), z)


# -- sums and products ---------------------------------------------------

def post_array_plus(model, xs, s):
    xs = list(xs)
    if not xs:
        model.post("int_eq", s, UnaryInt(0))
    elif len(xs) == 1:
        model.post("int_eq", xs[0], s)
    elif len(xs) == 2:
        model.post("int_plus", xs[0], xs[1], s)
    else:
        h = (len(xs) + 1) // 2
        parts = []
        for half in (xs[:h], xs[h:]):
            if len(half) == 1:
                parts.append(half[0])
                continue
            lo, hi = _sum_bounds(model, half)
            t = model.fresh_int(lo, hi)
            post_array_plus(model, half, t)
            parts.append(t)
        model.post("int_plus", parts[0], parts[1], s)


@rule("int_array_plus")
def de_array_plus(model, c, _):
    xs, s = c.args
    model.kill(c)
    post_array_plus(model, xs, s)


def _times_bounds(model, x, y):
    lx, ux = model.bounds(x)
    ly, uy = model.bounds(y)
    corners = [a * b for a in (lx, ux) for b in (ly, uy)]
    return min(corners), max(corners)


@rule("int_array_times")
def de_array_times(model, c, _):
    xs, s = c.args
    model.kill(c)
    xs = list(xs)
    if not xs:
        model.post("int_eq", s, UnaryInt(1))
        return
    acc = xs[0]
    for i, x in enumerate(xs[1:], 2):
        if i == len(xs):
            model.post("int_times", acc, x, s)
            return
        lo, hi = _times_bounds(model, acc, x)
        t = model.fresh_int(lo, hi)
        model.post("int_times", acc, x, t)
        acc = t
    model.post("int_eq", acc, s)


def post_int_rel(model, rel, x, y):
    model.post("int_" + rel, x, y)


def _array_sum_rel(model, xs, rel, rhs):
    if rel == "eq":
        post_array_plus(model, xs, rhs)
        return
    lo, hi = _sum_bounds(model, xs)
    s = model.fresh_int(lo, hi)
    post_array_plus(model, xs, s)
    post_int_rel(model, rel, s, rhs)


def _make_rule_sum(rel):
    @rule("bool_array_sum_" + rel)
    def de_sum(model, c, _):
        xs, rhs = c.args
        model.kill(c)
        cardinality.decompose_sum_rel(model, list(xs), rel, rhs)

    @rule("bool_array_pb_" + rel)
    def de_pb(model, c, _):
        cs, xs, rhs = c.args
        if len(cs) != len(xs):
            raise ModelError("pb: %d coefficients for %d literals" % (len(cs), len(xs)))
        model.kill(c)
        # c*x for c < 0 is c + |c|*(not x)
        lits = []
        shift = 0
        for k, x in zip(cs, xs):
            if k >= 0:
                lits.extend([x] * k)
            else:
                lits.extend([-x] * (-k))
                shift += k
        cardinality.decompose_sum_rel(model, lits, rel, rhs.shifted(-shift))

    @rule("int_array_sum_" + rel)
    def de_int_sum(model, c, _):
        xs, rhs = c.args
        model.kill(c)
        _array_sum_rel(model, list(xs), rel, rhs)

    @rule("int_array_lin_" + rel)
    def de_lin(model, c, _):
        cs, xs, rhs = c.args
        if len(cs) != len(xs):
            raise ModelError("lin: %d coefficients for %d integers" % (len(cs), len(xs)))
        model.kill(c)
        scaled = []
        for k, x in zip(cs, xs):
            if k == 0:
                continue
            lo, hi = model.bounds(x)
            scaled.append(x.window(lo, hi).scaled(k))
        _array_sum_rel(model, scaled, rel, rhs)


for _rel in ("leq", "geq", "eq", "lt", "gt"):
    _make_rule_sum(_rel)


def _check_modulus(k):
    if k <= 0:
        raise ModelError("modulus must be a positive constant, got %d" % k)


@rule("bool_array_sum_modK")
def de_sum_modk(model, c, _):
    xs, k, r = c.args
    _check_modulus(k)
    model.kill(c)
    s = model.fresh_int(0, len(xs))
    cardinality.decompose_sum_eq(model, list(xs), s)
    model.post("int_mod_k", s, k, r)


@rule("int_array_sum_modK")
def de_int_sum_modk(model, c, _):
    xs, k, r = c.args
    _check_modulus(k)
    model.kill(c)
    lo, hi = _sum_bounds(model, xs)
    s = model.fresh_int(lo, hi)
    post_array_plus(model, list(xs), s)
    model.post("int_mod_k", s, k, r)


@rule("int_array_allDiff")
def de_alldiff(model, c, _):
    (xs,) = c.args
    model.kill(c)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            model.post("int_neq", xs[i], xs[j])


# -- division ------------------------------------------------------------

def decompose_div(model, x, y, z):
    """z = floor(x / y)."""
    k = model.value_if_fixed(y)
    if k is not None:
        if k <= 0:
            raise ModelError("int_div needs a positive divisor, got %d" % k)
        # floor(x/k) >= t  <->  x >= k*t
        lx, ux = model.bounds(x)
        lo = min(z.lo, lx // k)
        hi = max(z.hi, ux // k)
        for t in range(lo, hi + 2):
            model.equate(z.ge(t), x.ge(k * t))
        return
    ly, _ = model.bounds(y)
    if ly <= 0:
        raise ModelError("int_div with a variable divisor needs dom(divisor) >= 1")
    _post_division(model, x, y, z, None)


def decompose_mod(model, x, y, r):
    """r = x mod y (floor semantics, 0 <= r < y)."""
    k = model.value_if_fixed(y)
    if k is not None:
        if k <= 0:
            raise ModelError("int_mod needs a positive modulus, got %d" % k)
        model.post("int_mod_k", x, k, r)
        return
    ly, _ = model.bounds(y)
    if ly <= 0:
        raise ModelError("int_mod with a variable modulus needs dom(modulus) >= 1")
    _post_division(model, x, y, None, r)


def _post_division(model, x, y, q, r):
    lx, ux = model.bounds(x)
    ly, uy = model.bounds(y)
    if q is None:
        qs = [a // b for a in (lx, ux) for b in (ly, uy)]
        q = model.fresh_int(min(qs), max(qs), implied=False)
    if r is None:
        r = model.fresh_int(0, uy - 1, implied=False)
    lo, hi = _times_bounds(model, y, q)
    p = model.fresh_int(lo, hi)
    model.post("int_times", y, q, p)
    model.post("int_plus", p, r, x)
    model.post("int_geq", r, UnaryInt(0))
    model.post("int_lt", r, y)


# -- lexicographic order -------------------------------------------------

def _lex_chain(model, xs, ys, first, last):
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        raise ModelError("lex over arrays of different lengths (%d, %d)" % (len(xs), len(ys)))
    n = len(xs)
    if n == 0:
        model.equate(first, last)
        return
    bs = [first] + [model.new_var() for _ in range(n - 1)] + [last]
    for i in range(n):
        model.post("lex_step", xs[i], ys[i], bs[i], bs[i + 1])


@rule("bool_arrays_lex")
def de_lex(model, c, _):
    model.kill(c)
    _lex_chain(model, c.args[0], c.args[1], TRUE, TRUE)


@rule("bool_arrays_lexLt")
def de_lexlt(model, c, _):
    model.kill(c)
    _lex_chain(model, c.args[0], c.args[1], TRUE, FALSE)


@rule("bool_arrays_lex_reif")
def de_lex_reif(model, c, _):
    model.kill(c)
    _lex_chain(model, c.args[0], c.args[1], c.args[2], TRUE)


@rule("bool_arrays_lexLt_reif")
def de_lexlt_reif(model, c, _):
    model.kill(c)
    _lex_chain(model, c.args[0], c.args[1], c.args[2], FALSE)


def _int_lex(model, xs, ys, last):
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        raise ModelError("lex over arrays of different lengths (%d, %d)" % (len(xs), len(ys)))
    n = len(xs)
    if n == 0:
        if last == FALSE:
            raise Unsat("empty arrays are not strictly ordered")
        return
    # b_k <-> (x_k <= y_k) and (x_k < y_k or b_{k+1})
    bs = [TRUE] + [model.new_var() for _ in range(n - 1)] + [last]
    for k in range(n):
        leq = model.new_var()
        lt = model.new_var()
        either = model.new_var()
        model.post("int_leq_reif", xs[k], ys[k], leq)
        model.post("int_leq_reif", xs[k].shifted(1), ys[k], lt)
        model.post("bool_array_and_reif", [-lt, -bs[k + 1]], -either)
        model.post("bool_array_and_reif", [leq, either], bs[k])


@rule("int_arrays_lex")
def de_int_lex(model, c, _):
    model.kill(c)
    _int_lex(model, c.args[0], c.args[1], TRUE)


@rule("int_arrays_lexLt")
def de_int_lexlt(model, c, _):
    model.kill(c)
    _int_lex(model, c.args[0], c.args[1], FALSE)
