"""Cardinality networks: unary adders, odd-even mergers and the hybrid of both.

Sums of literals are built divide-and-conquer: the literals are split into
halves whose counts are order-encoded integers ``T1`` and ``T2`` joined by
``int_plus(T1, T2, Y)``.  Each ``int_plus`` node is then either encoded
directly (the unary adder, no fresh variables) or decomposed as an odd-even
merger into comparators.  The hybrid strategy chooses, node by node, the
expansion with the smaller predicted clause count.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .model import FALSE, TRUE, UnaryInt, Unsat

STRATEGIES = ("adder", "merger", "hybrid")

COMPARATOR_CLAUSES = 6


def adder_cost(m, p):
    """Clauses of the direct unary adder of an m-bit and a p-bit number."""
    return 2 * (m + p + m * p)


def _halves(m, p):
    return ((m + 1) // 2, (p + 1) // 2), (m // 2, p // 2)


def _trivial(m, p):
    return m == 0 or p == 0


def combine_comparators(m, p):
    """Comparators used by the combine step of merging an m-run with a p-run."""
    if _trivial(m, p):
        return 0
    if m == 1 and p == 1:
        return 1
    (mo, po), (me, pe) = _halves(m, p)
    no, ne = mo + po, me + pe
    # pairs (co[i+1], ce[i]) for as long as both sides have elements
    return min(no - 1, ne)


@lru_cache(maxsize=None)
def merger_cost(m, p):
    """(clauses, aux vars) of the odd-even merger of m and p sorted bits."""
    if _trivial(m, p):
        return 0, 0
    return _merger_clauses(m, p), aux_vars("merger", m, p)


@lru_cache(maxsize=None)
def _merger_clauses(m, p):
    if _trivial(m, p):
        return 0
    if m == 1 and p == 1:
        return COMPARATOR_CLAUSES
    (mo, po), (me, pe) = _halves(m, p)
    return (_merger_clauses(mo, po) + _merger_clauses(me, pe)
            + COMPARATOR_CLAUSES * combine_comparators(m, p))


@lru_cache(maxsize=None)
def aux_vars(strategy, m, p):
    """Distinct fresh variables of an int_plus node expanded under ``strategy``.

    Child outputs that a merge step passes straight through are unified
    with the parent's outputs (or with input bits), so the count is taken
    by replaying the network shape on a small union-find.
    """
    if not use_merger(strategy, m, p):
        return 0
    parent = {}

    def find(v):
        while parent.get(v, v) != v:
            v = parent[v]
        return v

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            # keep non-fresh (negative) ids as roots
            if rx < 0:
                parent[ry] = rx
            else:
                parent[rx] = ry
    fresh = []

    def merge(a, b, c):
        if not a or not b:
            for x, z in zip(a or b, c):
                union(z, x)
            return
        if len(a) == 1 and len(b) == 1:
            return
        outs = []
        for x, y in ((a[0::2], b[0::2]), (a[1::2], b[1::2])):
            if not x or not y:
                outs.append(list(x or y))
                continue
            out = list(range(len(fresh) + 1, len(fresh) + len(x) + len(y) + 1))
            fresh.extend(out)
            if use_merger(strategy, len(x), len(y)):
                merge(x, y, out)
            outs.append(out)
        co, ce = outs
        union(c[0], co[0])
        k = 1 + 2 * min(len(co) - 1, len(ce))
        if len(co) - 1 > len(ce):
            union(c[k], co[-1])
        elif len(ce) > len(co) - 1:
            union(c[k], ce[-1])

    a = list(range(-1, -m - 1, -1))
    b = list(range(-m - 1, -m - p - 1, -1))
    c = list(range(-m - p - 1, -2 * (m + p) - 1, -1))
    merge(a, b, c)
    return len({find(v) for v in fresh if find(v) > 0})


@lru_cache(maxsize=None)
def _hybrid(m, p):
    """(clauses, use_merger) under the per-node cheaper choice."""
    if _trivial(m, p):
        return 0, False
    add = adder_cost(m, p)
    if m == 1 and p == 1:
        return add, False
    (mo, po), (me, pe) = _halves(m, p)
    merge = (_hybrid(mo, po)[0] + _hybrid(me, pe)[0]
             + COMPARATOR_CLAUSES * combine_comparators(m, p))
    if add <= merge:
        return add, False
    return merge, True


def hybrid_cost(m, p):
    return _hybrid(m, p)[0], aux_vars("hybrid", m, p)


def strategy_cost(strategy, m, p):
    if strategy == "adder":
        return adder_cost(m, p), 0
    if strategy == "merger":
        return merger_cost(m, p)
    if strategy == "hybrid":
        return hybrid_cost(m, p)
    raise ValueError("unknown strategy %r" % strategy)


def use_merger(strategy, m, p):
    """Whether an int_plus node of widths (m, p) is expanded as a merger."""
    if _trivial(m, p):
        return False
    if strategy == "adder":
        return False
    if strategy == "merger":
        return True
    return _hybrid(m, p)[1]


@dataclass
class SumPlan:
    """Planned expansion of one int_plus node and its merger children."""

    m: int
    p: int
    expansion: str
    clauses: int
    aux: int
    children: list = field(default_factory=list)


def plan(strategy, m, p):
    if _trivial(m, p):
        return SumPlan(m, p, "union", 0, 0)
    if not use_merger(strategy, m, p):
        return SumPlan(m, p, "adder", adder_cost(m, p), 0)
    clauses, aux = strategy_cost(strategy, m, p)
    if m == 1 and p == 1:
        return SumPlan(m, p, "comparator", COMPARATOR_CLAUSES, 0)
    (mo, po), (me, pe) = _halves(m, p)
    kids = [plan(strategy, mo, po), plan(strategy, me, pe)]
    return SumPlan(m, p, "merger", clauses, aux, kids)


def plan_hybrid(a, b, c=None):
    """Plan for ``int_plus(a, b, c)`` over the widths of ``a`` and ``b``."""
    return plan("hybrid", len(a.bits), len(b.bits))


def plan_leaves(sizes, strategy="hybrid"):
    """Balanced sum tree over literal counts; halves differ by at most one."""
    n = sum(sizes) if isinstance(sizes, list) else sizes
    if n <= 1:
        return SumPlan(n, 0, "union", 0, 0)
    if n == 2:
        return SumPlan(1, 1, "comparator", COMPARATOR_CLAUSES, 0)
    n1, n2 = (n + 1) // 2, n // 2
    node = plan(strategy, n1, n2)
    return SumPlan(n1, n2, node.expansion, node.clauses, node.aux,
                   [plan_leaves(n1, strategy), plan_leaves(n2, strategy)] + node.children)


# -- clause families -----------------------------------------------------

def comparator_clauses(a, b, c, d, half=False):
    """c = a or b, d = a and b."""
    out = [[-a, c], [-b, c], [-a, -b, d]]
    if not half:
        out += [[-c, a, b], [-d, a], [-d, b]]
    return out


def adder_clauses(a, b, c):
    """Direct unary adder over bit lists: value(c) = value(a) + value(b).

    ``a`` has m bits, ``b`` has p bits and ``c`` has m+p bits, all with
    offset zero.  Produces exactly 2(m + p + mp) clauses.
    """
    m, p = len(a), len(b)
    A = [TRUE] + list(a) + [FALSE]
    B = [TRUE] + list(b) + [FALSE]
    C = [TRUE] + list(c) + [FALSE]
    out = []
    for i in range(m + 1):
        for j in range(p + 1):
            if i or j:
                out.append([-A[i], -B[j], C[i + j]])
            if i < m or j < p:
                out.append([A[i + 1], B[j + 1], -C[i + j + 1]])
    return out


# -- decompositions ------------------------------------------------------

def _preprocess(model, lits):
    """Resolve, drop false, count true and cancel complementary pairs.

    Returns (free literals, constant contribution).
    """
    const = 0
    out = []
    index = {}
    for x in lits:
        r = model.resolve(x)
        if r == TRUE:
            const += 1
        elif r == FALSE:
            continue
        elif -r in index and index[-r]:
            # x + not x contributes exactly one
            index[-r] -= 1
            out.remove(-r)
            const += 1
        else:
            out.append(r)
            index[r] = index.get(r, 0) + 1
    return out, const


def decompose_sum_eq(model, lits, y):
    """Post constraints equivalent to ``sum(lits) == y``."""
    xs, const = _preprocess(model, lits)
    y = y.shifted(-const) if const else y
    n = len(xs)
    if n == 0:
        model.post("int_eq", y, UnaryInt(0))
        return
    if n == 1:
        model.post("int_eq", y, UnaryInt(0, [xs[0]]))
        return
    lo, hi = model.bounds(y)
    if lo > n or hi < 0:
        raise Unsat("sum of %d literals cannot equal %s" % (n, y))
    if n == 2:
        model.post("int_eq", y, UnaryInt(0, [y.ge(1), y.ge(2)]))
        model.post("comparator", xs[0], xs[1], y.ge(1), y.ge(2))
        return
    cap = min(hi, n)
    n1 = (n + 1) // 2
    h1, h2 = xs[:n1], xs[n1:]
    t1 = model.fresh_int(0, min(len(h1), cap))
    t2 = model.fresh_int(0, min(len(h2), cap))
    model.post("bool_array_sum_eq", h1, t1)
    model.post("bool_array_sum_eq", h2, t2)
    model.post("int_plus", t1, t2, y)


def decompose_sum_leq(model, lits, k):
    """Post constraints equivalent to ``sum(lits) <= k`` for a constant k.

    Uses ``T1 <= T3`` and ``T2 + T3 = k`` so the final adder disappears
    under equi-propagation.
    """
    xs, const = _preprocess(model, lits)
    k -= const
    n = len(xs)
    if k >= n:
        return
    if k < 0:
        raise Unsat("sum bound below zero")
    if k == 0:
        for x in xs:
            model.equate(x, FALSE)
        return
    if k == n - 1:
        model.post("bool_array_or", [-x for x in xs])
        return
    n1 = (n + 1) // 2
    h1, h2 = xs[:n1], xs[n1:]
    t1 = model.fresh_int(0, min(len(h1), k))
    t2 = model.fresh_int(0, min(len(h2), k))
    t3 = model.fresh_int(0, k)
    model.post("bool_array_sum_eq", h1, t1)
    model.post("bool_array_sum_eq", h2, t2)
    model.post("int_plus", t3, t2, UnaryInt(k))
    model.post("int_leq", t1, t3)


def decompose_sum_rel(model, lits, rel, rhs):
    """``sum(lits) rel rhs`` for rel in leq/geq/eq/lt/gt."""
    n = len(lits)
    k = model.value_if_fixed(rhs)
    if rel == "eq":
        decompose_sum_eq(model, lits, rhs)
        return
    if k is None:
        lo, hi = model.bounds(rhs)
        if rel in ("leq", "lt"):
            cap = min(n, hi - (rel == "lt"))
            if cap < 0:
                raise Unsat("sum below zero")
            s = model.fresh_int(0, cap)
            model.post("bool_array_sum_eq", list(lits), s)
            model.post("int_leq" if rel == "leq" else "int_lt", s, rhs)
        else:
            s = model.fresh_int(0, n)
            model.post("bool_array_sum_eq", list(lits), s)
            model.post("int_leq" if rel == "geq" else "int_lt", rhs, s)
        return
    if rel == "lt":
        rel, k = "leq", k - 1
    elif rel == "gt":
        rel, k = "geq", k + 1
    if rel == "leq":
        decompose_sum_leq(model, lits, k)
    else:
        # sum(x) >= k  <=>  sum(not x) <= n - k
        if k == 1:
            model.post("bool_array_or", list(lits))
        else:
            decompose_sum_leq(model, [-x for x in lits], n - k)


def _bit_merge(model, a, b, c):
    """Odd-even merge of sorted bit lists a and b into c (len a + len b)."""
    m, p = len(a), len(b)
    if m == 0 or p == 0:
        for x, z in zip(a or b, c):
            model.equate(z, x)
        return
    if m == 1 and p == 1:
        model.post("comparator", a[0], b[0], c[0], c[1])
        return
    ao, ae = a[0::2], a[1::2]
    bo, be = b[0::2], b[1::2]
    co = _child_output(model, ao, bo)
    ce = _child_output(model, ae, be)
    no, ne = len(co), len(ce)
    model.equate(c[0], co[0])
    k = 1
    for i in range(min(no - 1, ne)):
        model.post("comparator", co[i + 1], ce[i], c[k], c[k + 1])
        k += 2
    # leftovers: at most one element from each side remains
    if no - 1 > ne:
        model.equate(c[k], co[no - 1])
        k += 1
    elif ne > no - 1:
        model.equate(c[k], ce[ne - 1])
        k += 1
    assert k == len(c), (m, p, k)


def _child_output(model, x, y):
    if not x or not y:
        return list(x or y)
    out = model.fresh_int(0, len(x) + len(y))
    model.post("int_plus", UnaryInt(0, x, implied=True), UnaryInt(0, y, implied=True), out)
    return out.bits


def decompose_int_plus_merger(model, a, b, c):
    """Replace ``int_plus(a, b, c)`` by an odd-even merger.

    ``a`` and ``b`` are trimmed to their current bounds; ``c`` is read
    through the window of all possible sums so that out-of-range outputs
    resolve to constants via the sentinel convention.
    """
    la, ua = model.bounds(a)
    lb, ub = model.bounds(b)
    abits = [a.ge(t) for t in range(la + 1, ua + 1)]
    bbits = [b.ge(t) for t in range(lb + 1, ub + 1)]
    base = la + lb
    cbits = [c.ge(base + t) for t in range(1, len(abits) + len(bbits) + 1)]
    # values of c outside [la+lb, ua+ub] are impossible
    model.equate(c.ge(base), TRUE)
    model.equate(c.ge(base + len(cbits) + 1), FALSE)
    _bit_merge(model, abits, bbits, cbits)
