"""Solver interface backed by an external DIMACS solver process.

The whole clause set is written out on every call, so learnt clauses are not
reused between calls; results are otherwise identical to the embedded
solver.  The command receives the CNF path as its last argument and must
print ``s SATISFIABLE`` / ``s UNSATISFIABLE`` and ``v`` lines.
"""

import os
import shlex
import subprocess
import tempfile


class ExternalSolverError(RuntimeError):
    pass


class ExternalSolver:
    backend = "external"

    def __init__(self, command, nvars=0, timeout=None):
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        self.timeout = timeout
        self._n = nvars
        self._clauses = []
        self._occurs = set()
        self._model = None
        self.stats = {"solves": 0}

    @property
    def nvars(self):
        return self._n

    def new_var(self):
        self._n += 1
        return self._n

    def ensure_vars(self, n):
        self._n = max(self._n, n)

    def occurs(self, var):
        return var in self._occurs

    def add_clause(self, lits):
        lits = list(lits)
        for lit in lits:
            if lit == 0 or abs(lit) > self._n:
                raise ValueError("literal %r refers to an unallocated variable" % lit)
            self._occurs.add(abs(lit))
        self._clauses.append(lits)
        return True

    def solve(self, assumptions=()):
        self.stats["solves"] += 1
        self._model = None
        clauses = self._clauses + [[a] for a in assumptions]
        fd, path = tempfile.mkstemp(suffix=".cnf")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write("p cnf %d %d\n" % (self._n, len(clauses)))
                for c in clauses:
                    fh.write(" ".join(map(str, c)) + " 0\n")
            proc = subprocess.run(self.command + [path], capture_output=True,
                                  text=True, timeout=self.timeout)
        finally:
            os.unlink(path)
        return self._parse(proc.stdout)

    def _parse(self, out):
        status = None
        values = {}
        for line in out.splitlines():
            if line.startswith("s "):
                word = line.split()[1]
                if word == "SATISFIABLE":
                    status = True
                elif word == "UNSATISFIABLE":
                    status = False
            elif line.startswith("v "):
                for tok in line.split()[1:]:
                    lit = int(tok)
                    if lit:
                        values[abs(lit)] = lit > 0
        if status is None:
            raise ExternalSolverError("solver produced no status line")
        if status:
            self._model = [v if values.get(v, False) else -v for v in range(1, self._n + 1)]
        return status

    def model(self):
        if self._model is None:
            raise RuntimeError("no model available")
        return list(self._model)

    def value(self, var):
        if self._model is None:
            raise RuntimeError("no model available")
        return self._model[var - 1] > 0
