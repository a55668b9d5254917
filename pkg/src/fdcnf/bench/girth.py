"""Graphs with no cycles of length 3 or 4 and a prescribed number of edges."""

from itertools import combinations

from . import BenchInstance


def _a(i, j):
    return "a_%d_%d" % (i, j)


def four_cycles(n):
    """Canonical 4-cycles (i, j, k, l): i < k, j < l, i < j."""
    out = []
    for i, j, k, l in _quads(n):
        out.append((i, j, k, l))
    return out


def _quads(n):
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                if k == j:
                    continue
                for l in range(j + 1, n):
                    if l != k:
                        yield i, j, k, l


def gen_girth(nodes, edges, min_degree=0, sym_label="sym"):
    """Adjacency-matrix model.  ``min_degree`` adds per-row lower bounds to the
    symmetry group; it is only sound when every solution has that degree, e.g.
    ``min_degree=1`` when ``edges`` is the maximum for ``nodes`` (an isolated
    vertex could then be dropped, leaving more edges than the maximum for
    ``nodes - 1`` allows)."""
    if nodes < 3:
        raise ValueError("girth5 needs at least 3 nodes")
    n = nodes
    lines = []
    for i in range(n):
        for j in range(n):
            lines.append("new_bool(%s)" % _a(i, j))
    at = " @" + sym_label if sym_label else ""
    for i in range(n):
        lines.append("bool_eq(%s, false)%s" % (_a(i, i), at))
        for j in range(i + 1, n):
            lines.append("bool_eq(%s, %s)%s" % (_a(i, j), _a(j, i), at))
    for i, j, k in combinations(range(n), 3):
        lines.append("bool_array_sum_lt([%s, %s, %s], 3)" % (_a(i, j), _a(j, k), _a(k, i)))
    for i, j, k, l in _quads(n):
        lines.append("bool_array_sum_lt([%s, %s, %s, %s], 4)"
                     % (_a(i, j), _a(j, k), _a(k, l), _a(l, i)))
    for i in range(n - 1):
        cols = [c for c in range(n) if c not in (i, i + 1)]
        lines.append("bool_arrays_lex([%s], [%s])%s" % (
            ", ".join(_a(i, c) for c in cols), ", ".join(_a(i + 1, c) for c in cols), at))
    if min_degree:
        for i in range(n):
            lines.append("bool_array_sum_geq([%s], %d)%s" % (
                ", ".join(_a(i, j) for j in range(n) if j != i), min_degree, at))
    upper = [_a(i, j) for i, j in combinations(range(n), 2)]
    lines.append("bool_array_sum_eq([%s], %d)" % (", ".join(upper), edges))

    def verify(values):
        return check_graph(n, edges, [[bool(values[_a(i, j)]) for j in range(n)] for i in range(n)])

    return BenchInstance("girth5", (nodes, edges, min_degree), "\n".join(lines) + "\n", verify)


def check_graph(n, edges, adj):
    """Symmetric, loop-free, ``edges`` edges, no triangle and no 4-cycle."""
    for i in range(n):
        if adj[i][i]:
            return False, "self loop at %d" % i
        for j in range(n):
            if adj[i][j] != adj[j][i]:
                return False, "asymmetric at %d,%d" % (i, j)
    m = sum(adj[i][j] for i, j in combinations(range(n), 2))
    if m != edges:
        return False, "%d edges, expected %d" % (m, edges)
    nb = [{j for j in range(n) if adj[i][j]} for i in range(n)]
    for i, j in combinations(range(n), 2):
        common = len(nb[i] & nb[j])
        if adj[i][j] and common:
            return False, "triangle on edge %d-%d" % (i, j)
        if common > 1:
            return False, "4-cycle through %d and %d" % (i, j)
    return True, "%d edges, girth >= 5" % m


def max_edges_brute(n):
    """Largest edge count of a graph on ``n`` nodes with girth >= 5 (exhaustive)."""
    pairs = list(combinations(range(n), 2))
    best = 0
    for mask in range(1 << len(pairs)):
        m = bin(mask).count("1")
        if m <= best:
            continue
        adj = [[False] * n for _ in range(n)]
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                adj[i][j] = adj[j][i] = True
        if check_graph(n, m, adj)[0]:
            best = m
    return best
