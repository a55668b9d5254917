"""Binary numbers reduced to the unary kernel.

A sum of binary numbers is transposed into buckets, one per bit weight.
Each bucket is counted by a unary sorting network and the counts are
turned back into binary digits from the least significant bucket up:
``U' = U + C``, the digit is ``U' mod 2`` and the carry is ``U' div 2``.
For an order-encoded ``U'`` with offset zero, ``div 2`` simply keeps the
even-positioned bits and ``mod 2`` is a single literal defined in O(|U'|)
clauses.
"""

from .model import FALSE, TRUE, BinaryInt, ModelError, UnaryInt
from .simplify import rule


def transpose(model, numbers):
    """Bucket j holds every non-false bit of weight 2^j."""
    width = max((n.width for n in numbers), default=0)
    buckets = []
    for j in range(width):
        col = []
        for n in numbers:
            if j < n.width:
                r = model.resolve(n.bits[j])
                if r != FALSE:
                    col.append(n.bits[j])
        buckets.append(col)
    return buckets


def unary_div2(u):
    """floor(u / 2) for an offset-zero unary number: its even-positioned bits."""
    if u.offset != 0:
        raise ModelError("unary_div2 expects offset 0")
    return UnaryInt(0, u.bits[1::2], implied=True)


def unary_mod2(model, u):
    """Literal equal to ``u mod 2``."""
    b = model.new_var()
    model.post("int_mod_k", u, 2, UnaryInt(0, [b], implied=True))
    return b


def post_bucket_sum(model, buckets, out_bits):
    """Constrain the binary number ``out_bits`` to sum(2^j * |bucket j|)."""
    counts = []
    for col in buckets:
        if not col:
            counts.append(UnaryInt(0))
            continue
        u = model.fresh_int(0, len(col))
        model.post("bool_array_sum_eq", list(col), u)
        counts.append(u)
    model.post("buckets2binary", counts, BinaryInt(out_bits))


@rule("buckets2binary")
def de_buckets2binary(model, c, _):
    counts, out = c.args
    model.kill(c)
    bits = list(out.bits)
    carry = UnaryInt(0)
    j = 0
    while j < len(counts) or carry.bits:
        if j < len(counts):
            u = counts[j]
            if u.offset != 0:
                u = u.window(0, u.hi)
            if carry.bits and u.bits:
                lu, uu = model.bounds(u)
                lc, uc = model.bounds(carry)
                s = model.fresh_int(0, uu + uc)
                model.post("int_plus", u, carry, s)
            elif carry.bits:
                s = carry
            else:
                s = u
        else:
            s = carry
        digit = bits[j] if j < len(bits) else FALSE
        if s.bits:
            model.post("int_mod_k", s, 2, UnaryInt(0, [digit], implied=True))
        else:
            model.equate(digit, FALSE)
        carry = unary_div2(s)
        j += 1
    for b in bits[j:]:
        model.equate(b, FALSE)


@rule("binary_array_sum_eq")
def de_binary_sum(model, c, _):
    numbers, out = c.args
    model.kill(c)
    numbers = list(numbers)
    if len(numbers) == 1:
        a = numbers[0]
        for j in range(max(a.width, out.width)):
            x = a.bits[j] if j < a.width else FALSE
            y = out.bits[j] if j < out.width else FALSE
            model.equate(x, y)
        return
    post_bucket_sum(model, transpose(model, numbers), out.bits)


def partial_products(model, a, b):
    """Z[i][j] <-> a_i and b_j, one fresh variable per pair."""
    z = []
    for ai in a.bits:
        row = []
        for bj in b.bits:
            v = model.new_var()
            model.post("bool_array_and_reif", [ai, bj], v)
            row.append(v)
        z.append(row)
    return z


@rule("binary_times")
def de_binary_times(model, c, _):
    a, b, out = c.args
    model.kill(c)
    z = partial_products(model, a, b)
    # row j is a shifted left by j, gated by b_j
    rows = []
    for j in range(b.width):
        rows.append(BinaryInt([FALSE] * j + [z[i][j] for i in range(a.width)]))
    if not rows:
        for x in out.bits:
            model.equate(x, FALSE)
        return
    model.post("binary_array_sum_eq", rows, out)


def square_columns(model, a):
    """Columns of a*a after aliasing and promotion of doubled entries.

    Returns (columns, z) where z[(i, j)] for i <= j is the partial product
    literal (a_i itself on the diagonal) and columns[k] lists the literals
    of weight 2^k.
    """
    w = a.width
    z = {}
    for i in range(w):
        z[(i, i)] = a.bits[i]
        for j in range(i + 1, w):
            v = model.new_var()
            model.post("bool_array_and_reif", [a.bits[i], a.bits[j]], v)
            z[(i, j)] = v
    columns = [[] for _ in range(2 * w)]
    for i in range(w):
        columns[2 * i].append(z[(i, i)])
        for j in range(i + 1, w):
            # z_ij and z_ji share column i+j; the pair is worth one bit higher up
            columns[i + j + 1].append(z[(i, j)])
    return columns, z


@rule("binary_square")
def de_binary_square(model, c, _):
    a, out = c.args
    model.kill(c)
    columns, _z = square_columns(model, a)
    post_bucket_sum(model, columns, out.bits)


@rule("int2binary")
def de_int2binary(model, c, _):
    x, out = c.args
    lo, hi = model.bounds(x)
    if lo < 0:
        raise ModelError("int2binary needs a non-negative integer, got domain [%d, %d]" % (lo, hi))
    model.kill(c)
    model.post("buckets2binary", [x.window(0, hi)], BinaryInt(out.bits))
