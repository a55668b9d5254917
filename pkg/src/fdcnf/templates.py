"""Constraint template signatures.

Argument kinds:

``B``  Boolean literal          ``Bs`` list of literals
``I``  order-encoded integer    ``Is`` list of integers
``c``  integer constant         ``cs`` list of integer constants
``N``  binary number            ``Ns`` list of binary numbers
``*``  internal payload (not reachable from the model format)
"""

BOOL_OPS = ("or", "and", "xor", "iff")
INT_RELS = ("leq", "geq", "eq", "lt", "gt", "neq")
LIN_RELS = ("leq", "geq", "eq", "lt", "gt")
INT_OPS = ("plus", "times", "div", "mod", "max", "min")
ARRAY_OPS = ("plus", "times", "max", "min")


def _surface():
    t = {
        "bool2int": ("B", "I"),
        "bool_eq": ("B", "B"),
        "comparator": ("B", "B", "B", "B"),
        "int_array_allDiff": ("Is",),
        "int_abs": ("I", "I"),
        "bool_array_sum_modK": ("Bs", "c", "I"),
        "int_array_sum_modK": ("Is", "c", "I"),
        "bool_arrays_lex": ("Bs", "Bs"),
        "bool_arrays_lexLt": ("Bs", "Bs"),
        "bool_arrays_lex_reif": ("Bs", "Bs", "B"),
        "bool_arrays_lexLt_reif": ("Bs", "Bs", "B"),
        "int_arrays_lex": ("Is", "Is"),
        "int_arrays_lexLt": ("Is", "Is"),
        # binary extension
        "binary_array_sum_eq": ("Ns", "N"),
        "binary_times": ("N", "N", "N"),
        "binary_square": ("N", "N"),
        "int2binary": ("I", "N"),
    }
    for op in BOOL_OPS:
        t["bool_array_%s" % op] = ("Bs",)
        t["bool_array_%s_reif" % op] = ("Bs", "B")
        t["bool_%s_reif" % op] = ("B", "B", "B")
    for rel in INT_RELS:
        t["int_%s" % rel] = ("I", "I")
        t["int_%s_reif" % rel] = ("I", "I", "B")
    for op in INT_OPS:
        t["int_%s" % op] = ("I", "I", "I")
    for op in ARRAY_OPS:
        t["int_array_%s" % op] = ("Is", "I")
    for rel in LIN_RELS:
        t["bool_array_sum_%s" % rel] = ("Bs", "I")
        t["bool_array_pb_%s" % rel] = ("cs", "Bs", "I")
        t["int_array_sum_%s" % rel] = ("Is", "I")
        t["int_array_lin_%s" % rel] = ("cs", "Is", "I")
    return t


SURFACE = _surface()

# tags only produced by decomposition
INTERNAL = {
    "int_dom": ("I",),
    "lex_step": ("B", "B", "B", "B"),
    "int_mod_k": ("I", "c", "I"),
    "buckets2binary": ("*", "N"),
}

SIGNATURES = dict(SURFACE)
SIGNATURES.update(INTERNAL)

DECLARATIONS = {
    "new_bool": ("name",),
    "new_int": ("name", "c", "c"),
    "new_binary": ("name", "c"),
}


def arg_kinds(tag, nargs=None):
    try:
        kinds = SIGNATURES[tag]
    except KeyError:
        raise KeyError("unknown constraint template %r" % tag) from None
    if nargs is not None and nargs != len(kinds):
        raise ValueError("%s expects %d arguments, got %d" % (tag, len(kinds), nargs))
    return kinds
