"""Textual model format.

One term per statement, Prolog style::

    % a comment
    new_int(a, 0, 5)
    new_int(b, 0, 5)
    int_plus(a, b, 5).
    bool_arrays_lex([x, -y], [z, w]) @sym

Arguments are identifiers, signed integers, ``-name`` for a negated
Boolean, ``true``/``false``, or bracketed lists.  A trailing ``@label``
puts the constraint in a named group (used to select CEP groups) and a
trailing period is optional.
"""

import re
from dataclasses import dataclass, field

from .model import FALSE, TRUE, BinaryInt, Model, ModelError, UnaryInt
from .templates import DECLARATIONS, SURFACE


class ParseError(ValueError):
    def __init__(self, msg, line=0, col=0):
        self.msg = msg
        self.line = line
        self.col = col
        super().__init__("line %d, column %d: %s" % (line, col, msg) if line else msg)


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],.@-])
""", re.VERBOSE)


@dataclass
class Arg:
    kind: str          # "id", "int", "list"
    value: object      # name, int value, or list of Arg
    neg: bool = False
    line: int = 0
    col: int = 0

    def key(self):
        if self.kind == "list":
            return ("list", tuple(a.key() for a in self.value))
        return (self.kind, self.value, self.neg)


@dataclass
class Statement:
    name: str
    args: list
    label: str = None
    line: int = 0
    col: int = 0

    def key(self):
        return (self.name, tuple(a.key() for a in self.args), self.label)


@dataclass
class SourceModel:
    statements: list = field(default_factory=list)
    symbols: dict = field(default_factory=dict)

    @property
    def constraints(self):
        return [s for s in self.statements if s.name not in DECLARATIONS]


def _tokens(text):
    pos = 0
    line, line_start = 1, 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], line, pos - line_start + 1)
        kind = m.lastgroup
        tok = m.group()
        if kind not in ("ws", "comment"):
            out.append((kind, tok, line, pos - line_start + 1))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rindex("\n") + 1
        pos = m.end()
    out.append(("eof", "", line, pos - line_start + 1))
    return out


class _Reader:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, tok):
        kind, val, line, col = self.next()
        if val != tok or kind == "eof":
            raise ParseError("expected %r, found %r" % (tok, val or "end of input"), line, col)

    def statement(self):
        kind, name, line, col = self.next()
        if kind != "name":
            raise ParseError("expected a constraint name, found %r" % (name or "end of input"),
                             line, col)
        self.expect("(")
        args = []
        if self.peek()[1] != ")":
            args.append(self.arg())
            while self.peek()[1] == ",":
                self.next()
                args.append(self.arg())
        self.expect(")")
        label = None
        if self.peek()[1] == "@":
            self.next()
            k, label, ln, cl = self.next()
            if k != "name":
                raise ParseError("expected a group label after '@'", ln, cl)
        if self.peek()[1] == ".":
            self.next()
        return Statement(name, args, label, line, col)

    def arg(self):
        kind, val, line, col = self.next()
        if val == "[":
            items = []
            if self.peek()[1] != "]":
                items.append(self.arg())
                while self.peek()[1] == ",":
                    self.next()
                    items.append(self.arg())
            self.expect("]")
            return Arg("list", items, False, line, col)
        if val == "-":
            k2, v2, l2, c2 = self.next()
            if k2 == "int":
                return Arg("int", -int(v2), False, line, col)
            if k2 == "name":
                return Arg("id", v2, True, line, col)
            raise ParseError("expected identifier or integer after '-'", l2, c2)
        if kind == "int":
            return Arg("int", int(val), False, line, col)
        if kind == "name":
            return Arg("id", val, False, line, col)
        raise ParseError("unexpected %r" % (val or "end of input"), line, col)


_BOOL_CONSTS = {"true": 1, "false": 0}


def parse_model(text):
    """Parse and validate model text.  Raises :class:`ParseError`."""
    r = _Reader(text)
    src = SourceModel()
    while r.peek()[0] != "eof":
        st = r.statement()
        if st.name in DECLARATIONS:
            _declare(src, st)
        elif st.name in SURFACE:
            _check(src, st)
        else:
            raise ParseError("unknown constraint template %r" % st.name, st.line, st.col)
        src.statements.append(st)
    return src


def _declare(src, st):
    kinds = DECLARATIONS[st.name]
    if len(st.args) != len(kinds):
        raise ParseError("%s expects %d arguments, got %d" % (st.name, len(kinds), len(st.args)),
                         st.line, st.col)
    name = st.args[0]
    if name.kind != "id" or name.neg:
        raise ParseError("%s: first argument must be an identifier" % st.name, name.line, name.col)
    if name.value in _BOOL_CONSTS:
        raise ParseError("%r is reserved" % name.value, name.line, name.col)
    for a in st.args[1:]:
        if a.kind != "int":
            raise ParseError("%s: expected an integer constant" % st.name, a.line, a.col)
    if name.value in src.symbols:
        raise ParseError("duplicate declaration of %s" % name.value, name.line, name.col)
    if st.name == "new_bool":
        src.symbols[name.value] = ("bool",)
    elif st.name == "new_int":
        lo, hi = st.args[1].value, st.args[2].value
        if lo > hi:
            raise ParseError("empty domain [%d, %d] for %s" % (lo, hi, name.value), st.line, st.col)
        src.symbols[name.value] = ("int", lo, hi)
    else:
        w = st.args[1].value
        if w < 0:
            raise ParseError("negative width for %s" % name.value, st.line, st.col)
        src.symbols[name.value] = ("binary", w)


def _check(src, st):
    kinds = SURFACE[st.name]
    if len(st.args) != len(kinds):
        raise ParseError("%s expects %d arguments, got %d" % (st.name, len(kinds), len(st.args)),
                         st.line, st.col)
    for a, k in zip(st.args, kinds):
        if k.endswith("s"):
            if a.kind != "list":
                raise ParseError("%s: expected a list" % st.name, a.line, a.col)
            for item in a.value:
                _check_scalar(src, st, item, k[:-1])
        else:
            _check_scalar(src, st, a, k)


_KIND_NAMES = {"B": "a Boolean", "I": "an integer", "N": "a binary number", "c": "a constant"}


def _check_scalar(src, st, a, k):
    def fail(msg):
        raise ParseError("%s: %s" % (st.name, msg), a.line, a.col)

    if a.kind == "list":
        fail("unexpected list, expected %s" % _KIND_NAMES[k])
    if k == "c":
        if a.kind != "int":
            fail("expected an integer constant")
        return
    if a.kind == "int":
        if k == "B" and a.value not in (0, 1):
            fail("Boolean constant must be 0 or 1")
        if k == "N" and a.value < 0:
            fail("binary constants are unsigned")
        return
    if a.value in _BOOL_CONSTS:
        if k != "B":
            fail("expected %s, found %s" % (_KIND_NAMES[k], a.value))
        return
    sym = src.symbols.get(a.value)
    if sym is None:
        fail("undeclared identifier %s" % a.value)
    want = {"B": "bool", "I": "int", "N": "binary"}[k]
    if sym[0] != want:
        fail("%s is %s, expected %s" % (a.value, sym[0], _KIND_NAMES[k]))
    if a.neg and k != "B":
        fail("only Boolean literals can be negated")


# -- printer -------------------------------------------------------------

def _fmt_arg(a):
    if a.kind == "list":
        return "[" + ", ".join(_fmt_arg(x) for x in a.value) + "]"
    if a.kind == "int":
        return str(a.value)
    return ("-" if a.neg else "") + a.value


def format_statement(st):
    s = "%s(%s)" % (st.name, ", ".join(_fmt_arg(a) for a in st.args))
    if st.label:
        s += " @" + st.label
    return s


def print_model(src):
    """Canonical text: one term per line, no trailing periods."""
    return "".join(format_statement(st) + "\n" for st in src.statements)


# -- lowering ------------------------------------------------------------

def lower(src, card="hybrid"):
    """Build a :class:`Model` from a validated source model."""
    m = Model(card=card)
    m.source_tags = set()
    for st in src.statements:
        if st.name == "new_bool":
            m.new_bool(st.args[0].value)
        elif st.name == "new_int":
            m.new_int(st.args[1].value, st.args[2].value, name=st.args[0].value)
        elif st.name == "new_binary":
            m.new_binary(st.args[1].value, name=st.args[0].value)
    for st in src.statements:
        if st.name in DECLARATIONS:
            continue
        kinds = SURFACE[st.name]
        args = [_lower_arg(m, a, k) for a, k in zip(st.args, kinds)]
        if st.name == "bool2int":
            lo, hi = m.bounds(args[1])
            if lo < 0 or hi > 1:
                raise ParseError("bool2int needs an integer with domain within [0, 1], got [%d, %d]"
                                 % (lo, hi), st.line, st.col)
        m.source_tags.add(st.name)
        m.post(st.name, *args, group=st.label)
    return m


def _lower_arg(m, a, k):
    if k.endswith("s"):
        return [_lower_arg(m, x, k[:-1]) for x in a.value]
    if k == "c":
        return a.value
    if a.kind == "int":
        if k == "B":
            return TRUE if a.value else FALSE
        if k == "I":
            return UnaryInt(a.value)
        return BinaryInt.constant(a.value)
    if a.value in _BOOL_CONSTS:
        return TRUE if _BOOL_CONSTS[a.value] else FALSE
    ent = m.declarations[a.value]
    if k == "B":
        return -ent if a.neg else ent
    return ent


def load_model(text, card="hybrid"):
    """Parse and lower in one step."""
    try:
        return lower(parse_model(text), card=card)
    except ModelError as e:
        raise ParseError(str(e)) from None
