"""Literals, order-encoded integers, binary integers, constraints and models.

Literals are plain ints.  Variable 1 is reserved for the constant ``TRUE``,
so ``TRUE == 1`` and ``FALSE == -1``; every other variable id is >= 2 and a
negative int is the negated literal.  An integer in the order encoding is a
:class:`UnaryInt`: an offset plus a monotone bit vector where bit ``j``
(1-based) stands for ``value >= offset + j``.

Equalities between literals live in an :class:`EquivStore`, a union-find
with parity.  Every equality detected during compilation is recorded there
and all later reads go through :meth:`Model.resolve`, which is how an
equation propagates to every constraint mentioning the variable.
"""

from collections import defaultdict, deque

TRUE = 1
FALSE = -1

OPEN = "open"
UNSAT = "unsat_at_compile_time"


class Unsat(Exception):
    """Raised internally when the model is found inconsistent."""


class ModelError(ValueError):
    """Malformed model: bad domain, bad argument shape, unsupported form."""


def neg(lit):
    return -lit


def is_const(lit):
    return lit == TRUE or lit == FALSE


def lit_of_bool(b):
    return TRUE if b else FALSE


class EquivStore:
    """Union-find over variable ids with a parity bit per edge.

    ``find(v)`` returns ``(root, parity)`` with ``v == root`` when parity is
    False and ``v == -root`` otherwise.  The class of the constant lives
    under variable 1 which always stays the root of its class.
    """

    def __init__(self):
        self.parent = [0, 1]
        self.parity = [False, False]
        self.members = {1: [1]}

    def __len__(self):
        return len(self.parent) - 1

    def add_var(self):
        v = len(self.parent)
        self.parent.append(v)
        self.parity.append(False)
        self.members[v] = [v]
        return v

    def find(self, v):
        parent = self.parent
        parity = self.parity
        path = []
        while parent[v] != v:
            path.append(v)
            v = parent[v]
        root = v
        # compress: walk back accumulating parity towards the root
        acc = False
        for u in reversed(path):
            acc ^= parity[u]
            parity[u] = acc
            parent[u] = root
        return root, (parity[path[0]] if path else False)

    def resolve(self, lit):
        v = lit if lit > 0 else -lit
        root, par = self.find(v)
        if (lit < 0) ^ par:
            return -root
        return root

    def union(self, a, b):
        """Assert literal ``a`` equals literal ``b``.

        Returns the list of variables whose representative changed (empty
        when the equality was already known).  Raises :class:`Unsat` when
        ``a`` is already known to equal ``-b``.
        """
        ra = self.resolve(a)
        rb = self.resolve(b)
        if ra == rb:
            return []
        if ra == -rb:
            raise Unsat("%d = %d contradicts %d = %d" % (a, b, ra, -rb))
        A, B = abs(ra), abs(rb)
        flip = (ra < 0) != (rb < 0)
        # A and B are distinct roots; hang the smaller class below the larger,
        # except that the constant root never moves
        if B == TRUE or (A != TRUE and len(self.members[A]) <= len(self.members[B])):
            child, root = A, B
        else:
            child, root = B, A
        self.parent[child] = root
        self.parity[child] = flip
        moved = self.members.pop(child)
        self.members[root].extend(moved)
        return moved

    def same_class(self, a, b):
        """Whether a and b are equal or complementary."""
        return abs(self.resolve(a)) == abs(self.resolve(b))


class UnaryInt:
    """Order-encoded integer: ``value = offset + #(leading true bits)``."""

    __slots__ = ("offset", "bits", "name", "implied")

    def __init__(self, offset, bits=(), name=None, implied=False):
        self.offset = offset
        self.bits = list(bits)
        self.name = name
        # implied: monotonicity follows from the defining network, no clauses needed
        self.implied = implied

    @property
    def lo(self):
        return self.offset

    @property
    def hi(self):
        return self.offset + len(self.bits)

    def ge(self, v):
        """Raw literal for ``self >= v`` with sentinel padding."""
        j = v - self.offset
        if j <= 0:
            return TRUE
        if j > len(self.bits):
            return FALSE
        return self.bits[j - 1]

    def is_const(self):
        return not self.bits

    def __repr__(self):
        label = self.name or "int"
        return "%s<%d..%d>" % (label, self.lo, self.hi)

    # views sharing the same literals
    def shifted(self, d):
        return UnaryInt(self.offset + d, self.bits, implied=True)

    def negated(self):
        return UnaryInt(-(self.offset + len(self.bits)), [-b for b in reversed(self.bits)],
                        implied=True)

    def scaled(self, c):
        if c == 0:
            return UnaryInt(0)
        if c < 0:
            return self.negated().scaled(-c)
        bits = [b for b in self.bits for _ in range(c)]
        return UnaryInt(c * self.offset, bits, implied=True)

    def window(self, lo, hi):
        return UnaryInt(lo, [self.ge(t) for t in range(lo + 1, hi + 1)], implied=True)


class BinaryInt:
    """Unsigned binary number, least significant bit first."""

    __slots__ = ("bits", "name")

    def __init__(self, bits, name=None):
        self.bits = list(bits)
        self.name = name

    @property
    def width(self):
        return len(self.bits)

    @classmethod
    def constant(cls, value, width=None):
        if value < 0:
            raise ModelError("binary constants are unsigned, got %d" % value)
        if width is None:
            width = max(1, value.bit_length())
        if value >> width:
            raise ModelError("%d does not fit in %d bits" % (value, width))
        return cls([TRUE if (value >> i) & 1 else FALSE for i in range(width)])

    def __repr__(self):
        return "%s<bin%d>" % (self.name or "binary", self.width)


class Constraint:
    __slots__ = ("tag", "args", "group", "alive", "index")

    def __init__(self, tag, args, group=None):
        self.tag = tag
        self.args = tuple(args)
        self.group = group
        self.alive = True
        self.index = -1

    def __repr__(self):
        return "%s#%d%s" % (self.tag, self.index, "" if self.alive else "(dead)")


def _collect_vars(obj, out):
    if isinstance(obj, int) and not isinstance(obj, bool):
        return
    if isinstance(obj, UnaryInt) or isinstance(obj, BinaryInt):
        for b in obj.bits:
            v = abs(b)
            if v != TRUE:
                out.add(v)
    elif isinstance(obj, (list, tuple)):
        for x in obj:
            if isinstance(x, int) and not isinstance(x, bool):
                continue
            _collect_vars(x, out)


def _literal_vars(args, kinds):
    out = set()
    for a, k in zip(args, kinds):
        if k == "B":
            if abs(a) != TRUE:
                out.add(abs(a))
        elif k == "Bs":
            out.update(abs(x) for x in a if abs(x) != TRUE)
        elif k != "c" and k != "cs":
            _collect_vars(a, out)
    return out


class Model:
    """Constraint model under compilation.

    Holds the equivalence store, the list of constraints (dead ones are kept
    with ``alive=False`` so indices stay stable), the declared source
    identifiers and a FIFO worklist used by the simplifier.
    """

    def __init__(self, card="hybrid"):
        self.store = EquivStore()
        self.constraints = []
        self.ints = []
        self.declarations = {}
        self.status = OPEN
        self.card = card
        self.trace = None
        self.firings = 0
        self.group = None
        self._queue = deque()
        self._queued = []
        self._incidence = defaultdict(list)

    # -- variables -------------------------------------------------------
    def new_var(self):
        return self.store.add_var()

    def new_bool(self, name=None):
        v = self.store.add_var()
        if name is not None:
            self._declare(name, v)
        return v

    def new_int(self, lo, hi, name=None, implied=False):
        if lo > hi:
            raise ModelError("empty domain [%d, %d]%s" % (lo, hi, " for " + name if name else ""))
        x = UnaryInt(lo, [self.store.add_var() for _ in range(hi - lo)], name, implied)
        self.ints.append(x)
        if x.bits:
            self.post("int_dom", x)
        if name is not None:
            self._declare(name, x)
        return x

    def fresh_int(self, lo, hi, implied=True):
        """Intermediate integer.

        ``implied`` marks integers that are outputs of a defining network, so
        their monotonicity needs no clauses of its own.
        """
        return self.new_int(lo, hi, implied=implied)

    def new_binary(self, width, name=None):
        if width < 0:
            raise ModelError("negative width")
        b = BinaryInt([self.store.add_var() for _ in range(width)], name)
        if name is not None:
            self._declare(name, b)
        return b

    def _declare(self, name, entity):
        if name in self.declarations:
            raise ModelError("duplicate declaration of %s" % name)
        self.declarations[name] = entity

    # -- resolution ------------------------------------------------------
    def resolve(self, lit):
        if lit == TRUE or lit == FALSE:
            return lit
        return self.store.resolve(lit)

    def ge(self, x, v):
        return self.resolve(x.ge(v))

    def lt(self, x, v):
        return -self.resolve(x.ge(v))

    def resolved_bits(self, x):
        return [self.resolve(b) for b in x.bits]

    def bounds(self, x):
        """Tightest ``(lb, ub)`` readable from constant bits of ``x``."""
        bits = self.resolved_bits(x)
        lb = x.offset
        ub = x.offset + len(bits)
        for j, b in enumerate(bits, 1):
            if b == TRUE:
                lb = x.offset + j
            elif b == FALSE:
                ub = x.offset + j - 1
                break
        return lb, ub

    def value_if_fixed(self, x):
        lb, ub = self.bounds(x)
        return lb if lb == ub else None

    def trimmed(self, x):
        lb, ub = self.bounds(x)
        if ub < lb:
            raise Unsat("empty domain")
        return x.window(lb, ub)

    # -- equalities ------------------------------------------------------
    def equate(self, a, b):
        """Record ``a == b``; True if this was new information."""
        if self.status == UNSAT:
            raise Unsat("model already inconsistent")
        try:
            moved = self.store.union(a, b)
        except Unsat:
            self.status = UNSAT
            raise
        if not moved:
            return False
        self.firings += 1
        incidence = self._incidence
        for v in moved:
            for ci in incidence.get(v, ()):
                self._enqueue(ci)
        return True

    def _guarded(self, a, b):
        try:
            self.equate(a, b)
            return True
        except Unsat:
            return False

    def assert_geq(self, x, v):
        """Force ``x >= v``.  Returns False when the model became inconsistent."""
        return self._guarded(x.ge(v), TRUE)

    def assert_lt(self, x, v):
        return self._guarded(x.ge(v), FALSE)

    def remove_value(self, x, v):
        """Exclude value ``v`` from ``dom(x)`` by equating adjacent thresholds."""
        return self._guarded(x.ge(v), x.ge(v + 1))

    def domain(self, x):
        """Values of ``x`` not excluded by constant or equal adjacent bits."""
        lb, ub = self.bounds(x)
        out = []
        for v in range(lb, ub + 1):
            if self.ge(x, v) != self.ge(x, v + 1):
                out.append(v)
        return out

    # -- constraints -----------------------------------------------------
    def post(self, tag, *args, group=None):
        from .templates import arg_kinds
        c = Constraint(tag, args, group if group is not None else self.group)
        c.index = len(self.constraints)
        self.constraints.append(c)
        self._queued.append(False)
        kinds = arg_kinds(tag, len(args))
        for v in _literal_vars(args, kinds):
            self._incidence[v].append(c.index)
        self._enqueue(c.index)
        return c

    def kill(self, c):
        if c.alive:
            c.alive = False
            self.firings += 1

    def alive(self):
        return [c for c in self.constraints if c.alive]

    def _enqueue(self, ci):
        if not self._queued[ci] and self.constraints[ci].alive:
            self._queued[ci] = True
            self._queue.append(ci)

    def requeue_all(self):
        for c in self.constraints:
            if c.alive:
                self._enqueue(c.index)

    def pop_pending(self):
        while self._queue:
            ci = self._queue.popleft()
            self._queued[ci] = False
            c = self.constraints[ci]
            if c.alive:
                return c
        return None

    def log(self, rule, c, effect):
        if self.trace is not None:
            self.trace.append((rule, c.index if c is not None else -1, effect))
