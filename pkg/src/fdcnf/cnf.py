"""CNF documents, DIMACS reading/writing and the variable map sidecar."""

from dataclasses import dataclass, field

from .model import FALSE, TRUE, BinaryInt, UnaryInt


@dataclass
class CnfDoc:
    num_vars: int = 0
    clauses: list = field(default_factory=list)
    xors: list = field(default_factory=list)   # each means XOR(lits) = 1
    comments: list = field(default_factory=list)
    unsat: bool = False
    provenance: dict = field(default_factory=dict)   # tag -> clauses emitted

    @classmethod
    def unsatisfiable(cls, comments=()):
        return cls(0, [[]], [], list(comments), True)

    @property
    def num_clauses(self):
        return len(self.clauses) + len(self.xors)


def write_dimacs(doc, sink):
    """Write ``doc`` to a text sink (anything with ``write``)."""
    for c in doc.comments:
        sink.write("c %s\n" % c)
    sink.write("p cnf %d %d\n" % (doc.num_vars, doc.num_clauses))
    for cl in doc.clauses:
        sink.write(" ".join(map(str, cl)))
        sink.write(" 0\n" if cl else "0\n")
    for x in doc.xors:
        sink.write("x" + " ".join(map(str, x)) + " 0\n")


def dimacs_text(doc):
    import io
    buf = io.StringIO()
    write_dimacs(doc, buf)
    return buf.getvalue()


class DimacsError(ValueError):
    pass


def read_dimacs(text):
    """Parse DIMACS (with optional ``x`` xor lines) into a :class:`CnfDoc`."""
    doc = CnfDoc()
    header = None
    cur = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            doc.comments.append(line[2:] if line.startswith("c ") else line[1:])
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError("line %d: bad header %r" % (lineno, line))
            header = (int(parts[2]), int(parts[3]))
            continue
        if line.startswith("%"):
            break
        target = doc.clauses
        if line.startswith("x"):
            if cur:
                raise DimacsError("line %d: xor line inside a clause" % lineno)
            line = line[1:]
            target = doc.xors
        try:
            nums = [int(t) for t in line.split()]
        except ValueError:
            raise DimacsError("line %d: not a clause: %r" % (lineno, raw)) from None
        for v in nums:
            if v == 0:
                target.append(cur)
                cur = []
            else:
                cur.append(v)
    if cur:
        doc.clauses.append(cur)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    doc.num_vars = max([header[0]] + [abs(v) for c in doc.clauses + doc.xors for v in c])
    doc.unsat = any(not c for c in doc.clauses)
    return doc


def xor_to_clauses(lits):
    """Direct CNF of XOR(lits) = 1 (exponential; used for short xors)."""
    n = len(lits)
    out = []
    for mask in range(1 << n):
        # forbid assignments with even parity: the clause falsified by that assignment
        if bin(mask).count("1") % 2 == 0:
            out.append([-l if (mask >> i) & 1 else l for i, l in enumerate(lits)])
    return out


# -- variable map --------------------------------------------------------

def _map_lit(model, lit):
    r = model.resolve(lit)
    if r == TRUE:
        return "T"
    if r == FALSE:
        return "F"
    v = model.dimacs[abs(r)]
    return str(v if r > 0 else -v)


def varmap_lines(model):
    """One line per declared identifier, in declaration order."""
    out = []
    for name, ent in model.declarations.items():
        if isinstance(ent, UnaryInt):
            bits = [_map_lit(model, b) for b in ent.bits]
            if all(b in ("T", "F") for b in bits):
                lo, _ = model.bounds(ent)
                out.append("int %s %d %d const %d" % (name, ent.lo, ent.hi, lo))
            else:
                out.append("int %s %d %d bits %s" % (name, ent.lo, ent.hi, " ".join(bits)))
        elif isinstance(ent, BinaryInt):
            bits = [_map_lit(model, b) for b in ent.bits]
            if all(b in ("T", "F") for b in bits):
                val = sum(1 << i for i, b in enumerate(bits) if b == "T")
                out.append("binary %s %d const %d" % (name, ent.width, val))
            else:
                out.append("binary %s %d bits %s" % (name, ent.width, " ".join(bits)))
        else:
            m = _map_lit(model, ent)
            if m in ("T", "F"):
                out.append("bool %s const %d" % (name, m == "T"))
            elif model.resolve(ent) == ent:
                out.append("bool %s var %s" % (name, m))
            else:
                out.append("bool %s alias %s" % (name, m))
    return out


def write_varmap(model, sink):
    for line in varmap_lines(model):
        sink.write(line + "\n")


def read_varmap(text):
    """Parse a varmap into a list of (kind, name, info) entries."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        kind, name = parts[0], parts[1]
        if kind == "bool":
            mode, val = parts[2], parts[3]
            entries.append((kind, name, {"lit": _parse_map_lit(val if mode != "const" else
                                                                ("T" if val == "1" else "F"))}))
        elif kind == "int":
            lo, hi, mode = int(parts[2]), int(parts[3]), parts[4]
            if mode == "const":
                entries.append((kind, name, {"lo": lo, "hi": hi, "const": int(parts[5])}))
            else:
                entries.append((kind, name, {"lo": lo, "hi": hi,
                                             "bits": [_parse_map_lit(b) for b in parts[5:]]}))
        elif kind == "binary":
            width, mode = int(parts[2]), parts[3]
            if mode == "const":
                entries.append((kind, name, {"width": width, "const": int(parts[4])}))
            else:
                entries.append((kind, name, {"width": width,
                                             "bits": [_parse_map_lit(b) for b in parts[4:]]}))
        else:
            raise ValueError("varmap line %d: unknown kind %r" % (lineno, kind))
    return entries


def _parse_map_lit(tok):
    if tok == "T":
        return True
    if tok == "F":
        return False
    return int(tok)


def decode(entries, assignment):
    """Decode identifier values from a DIMACS assignment.

    ``assignment`` is an iterable of signed DIMACS literals (a model line);
    variables missing from it read as false.
    """
    true = {v for v in assignment if v > 0}

    def val(lit):
        if lit is True or lit is False:
            return lit
        return (abs(lit) in true) == (lit > 0)

    out = {}
    for kind, name, info in entries:
        if kind == "bool":
            out[name] = val(info["lit"])
        elif kind == "int":
            if "const" in info:
                out[name] = info["const"]
            else:
                top = 0
                for j, b in enumerate(info["bits"], 1):
                    if val(b):
                        top = j
                out[name] = info["lo"] + top
        else:
            if "const" in info:
                out[name] = info["const"]
            else:
                out[name] = sum(1 << i for i, b in enumerate(info["bits"]) if val(b))
    return out
