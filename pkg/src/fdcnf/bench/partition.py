"""Split {1..n} into two halves of equal size, equal sums and equal square sums."""

from . import BenchInstance


def gen_partition(n, via="pb"):
    if n < 2:
        raise ValueError("partition needs n >= 2")
    if via not in ("pb", "binary"):
        raise ValueError("via must be 'pb' or 'binary'")
    notes = []
    if n % 4:
        notes.append("n=%d is not a multiple of 4; such instances are usually unsatisfiable" % n)
    s = ["s%d" % i for i in range(1, n + 1)]
    lines = ["new_bool(%s)" % x for x in s]
    ss = "[%s]" % ", ".join(s)
    lines.append(_half("bool_array_pb_eq", [1] * n, ss, n, pb=n % 2 == 1))
    total = n * (n + 1) // 2
    lines.append(_half("bool_array_pb_eq", list(range(1, n + 1)), ss, total))
    sq = [i * i for i in range(1, n + 1)]
    if via == "pb":
        lines.append(_half("bool_array_pb_eq", sq, ss, sum(sq)))
    else:
        qs = []
        for i in range(1, n + 1):
            w = i.bit_length()
            lines += ["new_int(u%d, 0, 1)" % i, "new_int(v%d, 0, %d)" % (i, i),
                      "new_binary(b%d, %d)" % (i, w), "new_binary(q%d, %d)" % (i, 2 * w),
                      "bool2int(s%d, u%d)" % (i, i), "int_times(u%d, %d, v%d)" % (i, i, i),
                      "int2binary(v%d, b%d)" % (i, i), "binary_square(b%d, q%d)" % (i, i)]
            qs.append("q%d" % i)
        t = sum(sq)
        if t % 2:
            qs, t = qs + qs, t
        else:
            t //= 2
        lines.append("binary_array_sum_eq([%s], %d)" % (", ".join(qs), t))

    def verify(values):
        a = [i for i in range(1, n + 1) if values["s%d" % i]]
        b = [i for i in range(1, n + 1) if not values["s%d" % i]]
        return check_partition(a, b)

    return BenchInstance("partition", (n,), "\n".join(lines) + "\n", verify, notes)


def _half(tag, weights, xs, total, pb=None):
    if total % 2:
        weights = [2 * w for w in weights]
    else:
        total //= 2
    return "%s([%s], %s, %d)" % (tag, ", ".join(map(str, weights)), xs, total)


def check_partition(a, b):
    if len(a) != len(b):
        return False, "sizes %d and %d differ" % (len(a), len(b))
    if sum(a) != sum(b):
        return False, "sums %d and %d differ" % (sum(a), sum(b))
    qa, qb = sum(x * x for x in a), sum(x * x for x in b)
    if qa != qb:
        return False, "square sums %d and %d differ" % (qa, qb)
    return True, "A=%s sums %d/%d squares %d/%d" % (a, sum(a), sum(b), qa, qb)
