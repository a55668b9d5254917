import pytest
from hypothesis import given, settings, strategies as st

import oracle
from fdcnf.model import ModelError
from fdcnf.parser import ParseError, load_model, parse_model, print_model

SAMPLE = """% a comment
new_bool(a)
new_bool(b).
new_int(x, -3, 4)
new_binary(n, 3)
bool_array_or([a, -b]) @grp
int_plus(x, 2, x2)
"""


def test_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_model("new_bool(a)\nint_eq(a, 3)\n")
    assert e.value.line == 2 and e.value.col == 8
    assert str(e.value).startswith("line 2, column 8:")


@pytest.mark.parametrize("text, fragment", [
    ("new_int(x, 3, 1)\n", "empty domain"),
    ("new_bool(a)\nnew_bool(a)\n", "duplicate"),
    ("frobnicate(a)\n", "unknown constraint"),
    ("new_bool(a)\nbool_eq(a)\n", "expects 2 arguments"),
    ("bool_eq(a, b)\n", "undeclared"),
    ("new_int(x, 0, 2)\nint_abs(-x, x)\n", "negated"),
    ("new_bool(true)\n", "reserved"),
    ("new_bool(a)\nbool_eq(a, 2)\n", "0 or 1"),
    ("new_bool(a\n", "expected ')'"),
    ("new_int(x, 0, 3)\nint_array_sum_modK([x], x, x)\n", "constant"),
])
def test_rejections(text, fragment):
    with pytest.raises(ParseError) as e:
        parse_model(text)
    assert fragment in str(e.value)


def test_labels_and_periods():
    src = parse_model(SAMPLE.replace("int_plus(x, 2, x2)\n", ""))
    assert [s.label for s in src.constraints] == ["grp"]
    assert src.symbols["x"] == ("int", -3, 4)
    assert src.symbols["n"] == ("binary", 3)


def test_print_round_trip():
    text = SAMPLE.replace("int_plus(x, 2, x2)\n", "int_plus(x, 2, x)\nint_leq(x, -1)\n")
    src = parse_model(text)
    again = parse_model(print_model(src))
    assert [s.key() for s in again.statements] == [s.key() for s in src.statements]
    assert print_model(again) == print_model(src)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(oracle.templates()), st.integers(0, 10 ** 6))
def test_round_trip_random(name, seed):
    text = oracle.random_instance(name, oracle.rng(seed))
    src = parse_model(text)
    printed = print_model(src)
    assert print_model(parse_model(printed)) == printed


def test_lowering_groups_and_bool2int_domain():
    m = load_model("new_bool(a)\nnew_bool(b)\nbool_eq(a, b) @sym\n")
    assert [c.group for c in m.constraints if c.tag == "bool_eq"] == ["sym"]
    with pytest.raises(ParseError):
        load_model("new_bool(a)\nnew_int(i, 0, 2)\nbool2int(a, i)\n")


def test_int2binary_rejects_negative_domain():
    from fdcnf.compiler import compile_model
    with pytest.raises(ModelError):
        compile_model("new_int(x, -1, 2)\nnew_binary(n, 2)\nint2binary(x, n)\n")
