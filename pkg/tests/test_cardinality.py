import itertools

import pytest

import oracle
from fdcnf import cardinality as cd
from fdcnf.compiler import compile_model


def satisfied(clauses, val):
    return all(any(val[abs(l)] == (l > 0) for l in c) for c in clauses)


@pytest.mark.parametrize("half", [False, True])
def test_comparator_exhaustive(half):
    cls = cd.comparator_clauses(2, 3, 4, 5, half=half)
    assert len(cls) == (3 if half else 6)
    for bits in itertools.product((False, True), repeat=4):
        val = dict(zip((2, 3, 4, 5), bits))
        a, b, c, d = bits
        exact = c == (a or b) and d == (a and b)
        if half:
            # only the upward implications: c >= a or b, d >= a and b
            assert satisfied(cls, val) == (c >= (a or b) and d >= (a and b))
        else:
            assert satisfied(cls, val) == exact


def sorted_vectors(n):
    return [tuple([True] * k + [False] * (n - k)) for k in range(n + 1)]


@pytest.mark.parametrize("m,p", [(1, 1), (1, 3), (2, 2), (3, 2), (3, 3), (0, 2)])
def test_adder_exhaustive(m, p):
    # variable 1 is the constant true
    a = list(range(2, m + 2))
    b = list(range(m + 2, m + p + 2))
    c = list(range(m + p + 2, 2 * (m + p) + 2))
    cls = cd.adder_clauses(a, b, c)
    assert len(cls) == cd.adder_cost(m, p)
    for av in sorted_vectors(m):
        for bv in sorted_vectors(p):
            for cv in itertools.product((False, True), repeat=m + p):
                val = dict(zip(a + b + c, av + bv + cv))
                val[1] = True
                want = cv == sorted_vectors(m + p)[sum(av) + sum(bv)]
                assert satisfied(cls, val) == want


def test_costs_match_emitted_networks():
    for card in cd.STRATEGIES:
        for m in range(1, 9):
            for p in range(1, 9):
                text = "new_int(A, 0, %d)\nnew_int(B, 0, %d)\nnew_int(C, 0, %d)\nint_plus(A, B, C)\n" % (
                    m, p, m + p)
                comp = compile_model(text, card=card)
                net = sum(v for k, v in comp.doc.provenance.items() if k != "int_dom")
                assert (net, comp.doc.num_vars - 2 * (m + p)) == cd.strategy_cost(card, m, p)


def test_hybrid_picks_cheaper_node():
    for m in range(1, 40):
        add = cd.adder_cost(m, m)
        c, _ = cd.hybrid_cost(m, m)
        assert c <= add and c <= cd.merger_cost(m, m)[0]
        assert cd.use_merger("hybrid", m, m) == (c < add)


def test_plan_structure():
    pl = cd.plan("merger", 4, 4)
    assert pl.expansion == "merger" and len(pl.children) == 2
    assert cd.plan("adder", 4, 4).expansion == "adder"
    assert cd.plan("hybrid", 0, 3).expansion == "union"
    leaves = cd.plan_leaves(7)
    assert (leaves.m, leaves.p) == (4, 3)


@pytest.mark.parametrize("card", cd.STRATEGIES)
@pytest.mark.parametrize("rel", ["eq", "leq", "geq", "lt", "gt"])
def test_sums_all_strategies(card, rel):
    rng = oracle.rng(hash((card, rel)) % 997)
    for _ in range(12):
        n = rng.randint(1, 7)
        xs = ["x%d" % i for i in range(n)]
        lits = ["-" + x if rng.random() < 0.2 else x for x in xs]
        if rng.random() < 0.3:
            lits.append(rng.choice(lits))
        k = rng.randint(-1, n + 1)
        text = "".join("new_bool(%s)\n" % x for x in xs)
        text += "new_int(y, %d, %d)\n" % (max(-1, k - 2), k + 1)
        text += "bool_array_sum_%s([%s], %s)\n" % (rel, ", ".join(lits), rng.choice([str(k), "y"]))
        bf, got = oracle.check_instance(text, card=card)
        assert bf == got, text


def test_sum_leq_special_cases():
    base = "new_bool(a)\nnew_bool(b)\nnew_bool(c)\n"
    # k >= n: deleted outright
    comp = compile_model(base + "bool_array_sum_leq([a, b, c], 3)\n")
    assert comp.doc.num_clauses == 0
    # k = 0 forces every literal false
    comp = compile_model(base + "bool_array_sum_leq([a, b, c], 0)\n")
    m = comp.model
    assert all(m.resolve(m.declarations[v]) == -1 for v in "abc")
    # k = n - 1 is a single clause
    comp = compile_model(base + "bool_array_sum_leq([a, b, c], 2)\n")
    assert comp.doc.clauses == [[-1, -2, -3]]
    # k < 0 is unsatisfiable at compile time
    assert compile_model(base + "bool_array_sum_leq([a, b, c], -1)\n").unsat
    # geq 1 is a clause
    comp = compile_model(base + "bool_array_sum_geq([a, b, c], 1)\n")
    assert comp.doc.clauses == [[1, 2, 3]]
