"""Digit fractions x_i / (10*y_i + z_i) summing to 1, denominators cleared."""

from fractions import Fraction
from math import ceil

from . import BenchInstance


def gen_fractions(n):
    if n < 1:
        raise ValueError("fractions needs n >= 1")
    lines = []
    digits = []
    for i in range(n):
        for d in "xyz":
            v = "%s%d" % (d, i)
            digits.append(v)
            lines += ["new_int(%s, 1, 9)" % v, "new_binary(%s, 4)" % v.upper(),
                      "int2binary(%s, %s)" % (v, v.upper())]
        # D_i = 10*y_i + z_i, channelled through binary arithmetic
        lines += ["new_binary(T%d, 8)" % i, "new_binary(D%d, 7)" % i,
                  "binary_times(Y%d, 10, T%d)" % (i, i),
                  "binary_array_sum_eq([T%d, Z%d], D%d)" % (i, i, i)]
    prod, width = _product(lines, ["D%d" % i for i in range(n)], [7] * n, "PD")
    terms = []
    for i in range(n):
        rest = ["D%d" % j for j in range(n) if j != i]
        name, w = _product(lines, ["X%d" % i] + rest, [4] + [7] * (n - 1), "PT%d_" % i)
        terms.append(name)
    lines.append("binary_array_sum_eq([%s], %s)" % (", ".join(terms), prod))
    cap = ceil(n / 3)
    for v in range(1, 10):
        bs = []
        for d in digits:
            b = "e_%s_%d" % (d, v)
            bs.append(b)
            lines += ["new_bool(%s)" % b, "int_eq_reif(%s, %d, %s)" % (d, v, b)]
        lines.append("bool_array_sum_geq([%s], 1)" % ", ".join(bs))
        lines.append("bool_array_sum_leq([%s], %d)" % (", ".join(bs), cap))

    def verify(values):
        return check_fractions(n, [(values["x%d" % i], values["y%d" % i], values["z%d" % i])
                                   for i in range(n)])

    return BenchInstance("fractions", (n,), "\n".join(lines) + "\n", verify)


def _product(lines, factors, widths, prefix):
    """Chain binary_times over ``factors``; returns (name, width) of the product."""
    cur, w = factors[0], widths[0]
    for k, (f, fw) in enumerate(zip(factors[1:], widths[1:])):
        w = w + fw
        out = "%s%d" % (prefix, k)
        lines += ["new_binary(%s, %d)" % (out, w), "binary_times(%s, %s, %s)" % (cur, f, out)]
        cur = out
    return cur, w


def check_fractions(n, triples):
    cap = ceil(n / 3)
    counts = [0] * 10
    for t in triples:
        for d in t:
            if not 1 <= d <= 9:
                return False, "digit %r out of range" % d
            counts[d] += 1
    for v in range(1, 10):
        if not 1 <= counts[v] <= cap:
            return False, "digit %d used %d times" % (v, counts[v])
    total = sum(Fraction(x, 10 * y + z) for x, y, z in triples)
    if total != 1:
        return False, "fractions sum to %s" % total
    return True, " + ".join("%d/%d%d" % t for t in triples) + " = 1"
