"""Pure-Python CDCL solver.

Two-literal watching, first-UIP learning with local minimisation, VSIDS
branching with phase saving, Luby restarts and LBD-based clause database
reduction.  Literals are DIMACS integers.  The solver is incremental:
clauses may be added between calls to :meth:`Solver.solve` and all learnt
clauses are kept.

The compiled core in ``_csolver.pyx`` implements the same algorithm; both
backends are deterministic, but they are not guaranteed to return the same
model for the same formula.
"""

import heapq


class _Clause(list):
    __slots__ = ("learnt", "lbd", "act")

    def __init__(self, lits, learnt=False, lbd=0):
        super().__init__(lits)
        self.learnt = learnt
        self.lbd = lbd
        self.act = 0.0


def _luby(i):
    # i is 0-based
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


class Solver:
    """Incremental CDCL SAT solver (pure Python backend)."""

    backend = "python"

    def __init__(self, nvars=0, restarts=True):
        self.restarts = restarts
        self._n = 0
        self._val = {}
        self._level = [0]
        self._reason = [None]
        self._act = [0.0]
        self._phase = [False]
        self._seen = [False]
        self._occurs = [False]
        self._watches = {}
        self._trail = []
        self._trail_lim = []
        self._qhead = 0
        self._clauses = []
        self._learnts = []
        self._heap = []
        self._var_inc = 1.0
        self._cla_inc = 1.0
        self._ok = True
        self._model = None
        self._max_learnts = 0.0
        self.stats = {"solves": 0, "conflicts": 0, "decisions": 0,
                      "propagations": 0, "restarts": 0}
        for _ in range(nvars):
            self.new_var()

    # -- variables -------------------------------------------------------
    @property
    def nvars(self):
        return self._n

    def new_var(self):
        self._n += 1
        v = self._n
        self._val[v] = 0
        self._val[-v] = 0
        self._watches[v] = []
        self._watches[-v] = []
        self._level.append(0)
        self._reason.append(None)
        self._act.append(0.0)
        self._phase.append(False)
        self._seen.append(False)
        self._occurs.append(False)
        heapq.heappush(self._heap, (-0.0, v))
        return v

    def ensure_vars(self, n):
        while self._n < n:
            self.new_var()

    def occurs(self, var):
        return 0 < var <= self._n and self._occurs[var]

    # -- clauses ---------------------------------------------------------
    def add_clause(self, lits):
        lits = list(lits)
        for lit in lits:
            v = abs(lit)
            if lit == 0 or v > self._n:
                raise ValueError("literal %r refers to an unallocated variable" % lit)
            self._occurs[v] = True
        if not self._ok:
            return False
        self._cancel_until(0)
        val = self._val
        out = []
        seen = set()
        for lit in lits:
            if lit in seen:
                continue
            if -lit in seen or val[lit] == 1:
                return True
            if val[lit] == -1:
                continue
            seen.add(lit)
            out.append(lit)
        if not out:
            self._ok = False
            return False
        if len(out) == 1:
            self._enqueue(out[0], None)
            if self._propagate() is not None:
                self._ok = False
                return False
            return True
        c = _Clause(out)
        self._clauses.append(c)
        self._watches[c[0]].append(c)
        self._watches[c[1]].append(c)
        return True

    # -- core ------------------------------------------------------------
    def _enqueue(self, lit, reason):
        v = lit if lit > 0 else -lit
        self._val[lit] = 1
        self._val[-lit] = -1
        self._level[v] = len(self._trail_lim)
        self._reason[v] = reason
        self._trail.append(lit)

    def _propagate(self):
        val = self._val
        watches = self._watches
        trail = self._trail
        confl = None
        nprops = 0
        while self._qhead < len(trail):
            p = trail[self._qhead]
            self._qhead += 1
            nprops += 1
            false_lit = -p
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if val[first] == 1:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if val[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if val[first] == -1:
                        confl = c
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                    else:
                        self._enqueue(first, c)
            del ws[j:]
            if confl is not None:
                self._qhead = len(trail)
                break
        self.stats["propagations"] += nprops
        return confl

    def _bump_var(self, v):
        act = self._act
        act[v] += self._var_inc
        if act[v] > 1e100:
            for u in range(1, self._n + 1):
                act[u] *= 1e-100
            self._var_inc *= 1e-100
            self._heap = [(-act[u], u) for u in range(1, self._n + 1)
                          if self._val[u] == 0]
            heapq.heapify(self._heap)
        elif self._val[v] == 0:
            heapq.heappush(self._heap, (-act[v], v))

    def _bump_clause(self, c):
        c.act += self._cla_inc
        if c.act > 1e20:
            for d in self._learnts:
                d.act *= 1e-20
            self._cla_inc *= 1e-20

    def _analyze(self, confl):
        seen = self._seen
        level = self._level
        reason = self._reason
        trail = self._trail
        cur = len(self._trail_lim)
        learnt = [0]
        path = 0
        p = 0
        idx = len(trail) - 1
        c = confl
        while True:
            if c.learnt:
                self._bump_clause(c)
            for q in (c if p == 0 else c[1:]):
                v = q if q > 0 else -q
                if not seen[v] and level[v] > 0:
                    self._bump_var(v)
                    seen[v] = True
                    if level[v] >= cur:
                        path += 1
                    else:
                        learnt.append(q)
            while True:
                lit = trail[idx]
                idx -= 1
                if seen[lit if lit > 0 else -lit]:
                    break
            p = lit
            pv = p if p > 0 else -p
            c = reason[pv]
            seen[pv] = False
            path -= 1
            if path == 0:
                break
        learnt[0] = -p
        # local minimisation: drop literals implied by other learnt literals
        keep = [learnt[0]]
        for q in learnt[1:]:
            v = q if q > 0 else -q
            r = reason[v]
            if r is None:
                keep.append(q)
                continue
            for x in r[1:]:
                xv = x if x > 0 else -x
                if not seen[xv] and level[xv] > 0:
                    keep.append(q)
                    break
        for q in learnt[1:]:
            seen[q if q > 0 else -q] = False
        learnt = keep
        if len(learnt) == 1:
            bt = 0
        else:
            mi = 1
            for k in range(2, len(learnt)):
                if level[abs(learnt[k])] > level[abs(learnt[mi])]:
                    mi = k
            learnt[1], learnt[mi] = learnt[mi], learnt[1]
            bt = level[abs(learnt[1])]
        lbd = len({level[abs(q)] for q in learnt})
        return learnt, bt, lbd

    def _cancel_until(self, lvl):
        if len(self._trail_lim) <= lvl:
            return
        val = self._val
        trail = self._trail
        phase = self._phase
        act = self._act
        heap = self._heap
        stop = self._trail_lim[lvl]
        for k in range(len(trail) - 1, stop - 1, -1):
            lit = trail[k]
            v = lit if lit > 0 else -lit
            val[lit] = 0
            val[-lit] = 0
            self._reason[v] = None
            phase[v] = lit > 0
            heapq.heappush(heap, (-act[v], v))
        del trail[stop:]
        del self._trail_lim[lvl:]
        self._qhead = len(trail)
        if len(heap) > 8 * self._n + 64:
            self._heap = [(-act[u], u) for u in range(1, self._n + 1) if val[u] == 0]
            heapq.heapify(self._heap)

    def _pick_branch(self):
        heap = self._heap
        val = self._val
        act = self._act
        while heap:
            a, v = heapq.heappop(heap)
            if val[v] == 0 and -a == act[v]:
                return v if self._phase[v] else -v
        return 0

    def _reduce_db(self):
        reason = self._reason
        learnts = sorted(self._learnts, key=lambda c: (-c.lbd, c.act))
        half = len(learnts) // 2
        dead = set()
        for c in learnts[:half]:
            if c.lbd <= 2 or len(c) <= 2:
                continue
            if reason[abs(c[0])] is c:
                continue
            dead.add(id(c))
        if not dead:
            return
        self._learnts = [c for c in self._learnts if id(c) not in dead]
        for lit, ws in self._watches.items():
            ws[:] = [c for c in ws if id(c) not in dead]

    def _search(self, nconfl, assumptions):
        conflicts = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.stats["conflicts"] += 1
                conflicts += 1
                if len(self._trail_lim) == 0:
                    return False
                learnt, bt, lbd = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    c = _Clause(learnt, learnt=True, lbd=lbd)
                    self._learnts.append(c)
                    self._watches[c[0]].append(c)
                    self._watches[c[1]].append(c)
                    self._bump_clause(c)
                    self._enqueue(c[0], c)
                self._var_inc *= 1.0 / 0.95
                self._cla_inc *= 1.0 / 0.999
            else:
                if nconfl >= 0 and conflicts >= nconfl:
                    self._cancel_until(0)
                    return None
                if len(self._learnts) - len(self._trail) >= self._max_learnts:
                    self._reduce_db()
                    self._max_learnts *= 1.1
                lit = 0
                while len(self._trail_lim) < len(assumptions):
                    a = assumptions[len(self._trail_lim)]
                    va = self._val[a]
                    if va == 1:
                        self._trail_lim.append(len(self._trail))
                    elif va == -1:
                        return False
                    else:
                        lit = a
                        break
                if lit == 0:
                    lit = self._pick_branch()
                    if lit == 0:
                        return True
                    self.stats["decisions"] += 1
                self._trail_lim.append(len(self._trail))
                self._enqueue(lit, None)

    def solve(self, assumptions=()):
        """Return True (SAT) or False (UNSAT) under optional assumption literals."""
        self.stats["solves"] += 1
        self._model = None
        assumptions = list(assumptions)
        for a in assumptions:
            if a == 0 or abs(a) > self._n:
                raise ValueError("assumption %r refers to an unallocated variable" % a)
        if not self._ok:
            return False
        self._cancel_until(0)
        if self._propagate() is not None:
            self._ok = False
            return False
        self._max_learnts = max(len(self._clauses) / 3.0, 2000.0)
        status = None
        k = 0
        while status is None:
            budget = 100 * _luby(k) if self.restarts else -1
            status = self._search(budget, assumptions)
            if status is None:
                self.stats["restarts"] += 1
            k += 1
        if status:
            val = self._val
            self._model = [v if val[v] == 1 else -v for v in range(1, self._n + 1)]
        elif not assumptions:
            self._ok = False
        self._cancel_until(0)
        return status

    def model(self):
        """DIMACS-style model of the last satisfiable call, one literal per variable."""
        if self._model is None:
            raise RuntimeError("no model available")
        return list(self._model)

    def value(self, var):
        if self._model is None:
            raise RuntimeError("no model available")
        return self._model[var - 1] > 0
