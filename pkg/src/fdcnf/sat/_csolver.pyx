# distutils: language = c++
"""Compiled CDCL core.

Same algorithm as ``_pysolver`` (two watched literals, first-UIP learning,
VSIDS with phase saving, Luby restarts, LBD clause-database reduction),
implemented over C++ vectors.  Internal literal code: ``2*v`` for ``v`` and
``2*v+1`` for ``-v``.
"""

from libcpp.vector cimport vector


cdef inline int _code(int lit):
    return 2 * lit if lit > 0 else -2 * lit + 1


cdef inline int _dimacs(int code):
    return code >> 1 if (code & 1) == 0 else -(code >> 1)


cdef long _luby(long i):
    cdef long size = 1, seq = 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


cdef class Solver:
    """Incremental CDCL SAT solver (compiled backend)."""

    cdef int _n
    cdef vector[signed char] _val
    cdef vector[int] _level
    cdef vector[int] _reason
    cdef vector[double] _act
    cdef vector[signed char] _phase
    cdef vector[signed char] _seen
    cdef vector[signed char] _occurs
    cdef vector[vector[int]] _watches
    cdef vector[vector[int]] _cls
    cdef vector[signed char] _learnt
    cdef vector[signed char] _deleted
    cdef vector[int] _lbd
    cdef vector[double] _cact
    cdef vector[int] _learnts
    cdef vector[int] _trail
    cdef vector[int] _trail_lim
    cdef int _qhead
    cdef vector[int] _heap
    cdef vector[int] _hidx
    cdef double _var_inc
    cdef double _cla_inc
    cdef bint _ok
    cdef double _max_learnts
    cdef object _model
    cdef public bint restarts
    cdef public dict stats

    backend = "compiled"

    def __cinit__(self):
        self._n = 0
        self._qhead = 0
        self._var_inc = 1.0
        self._cla_inc = 1.0
        self._ok = True
        self._max_learnts = 0.0
        # index 0 unused so that vectors can be indexed by var / code directly
        self._val.resize(2, 0)
        self._watches.resize(2)
        self._level.push_back(0)
        self._reason.push_back(-1)
        self._act.push_back(0.0)
        self._phase.push_back(0)
        self._seen.push_back(0)
        self._occurs.push_back(0)
        self._hidx.push_back(-1)

    def __init__(self, nvars=0, restarts=True):
        self.restarts = restarts
        self._model = None
        self.stats = {"solves": 0, "conflicts": 0, "decisions": 0,
                      "propagations": 0, "restarts": 0}
        for _ in range(nvars):
            self.new_var()

    # -- heap ------------------------------------------------------------
    cdef inline bint _better(self, int a, int b):
        return self._act[a] > self._act[b] or (self._act[a] == self._act[b] and a < b)

    cdef void _heap_up(self, int i):
        cdef int v = self._heap[i]
        cdef int parent
        while i > 0:
            parent = (i - 1) >> 1
            if not self._better(v, self._heap[parent]):
                break
            self._heap[i] = self._heap[parent]
            self._hidx[self._heap[i]] = i
            i = parent
        self._heap[i] = v
        self._hidx[v] = i

    cdef void _heap_down(self, int i):
        cdef int v = self._heap[i]
        cdef int n = self._heap.size()
        cdef int child
        while 2 * i + 1 < n:
            child = 2 * i + 1
            if child + 1 < n and self._better(self._heap[child + 1], self._heap[child]):
                child += 1
            if not self._better(self._heap[child], v):
                break
            self._heap[i] = self._heap[child]
            self._hidx[self._heap[i]] = i
            i = child
        self._heap[i] = v
        self._hidx[v] = i

    cdef void _heap_insert(self, int v):
        if self._hidx[v] >= 0:
            return
        self._heap.push_back(v)
        self._hidx[v] = self._heap.size() - 1
        self._heap_up(self._heap.size() - 1)

    cdef int _heap_pop(self):
        cdef int top = self._heap[0]
        cdef int last = self._heap.back()
        self._heap.pop_back()
        self._hidx[top] = -1
        if self._heap.size() > 0:
            self._heap[0] = last
            self._hidx[last] = 0
            self._heap_down(0)
        return top

    # -- variables -------------------------------------------------------
    @property
    def nvars(self):
        return self._n

    def new_var(self):
        self._n += 1
        cdef int v = self._n
        self._val.push_back(0)
        self._val.push_back(0)
        self._watches.resize(2 * v + 2)
        self._level.push_back(0)
        self._reason.push_back(-1)
        self._act.push_back(0.0)
        self._phase.push_back(0)
        self._seen.push_back(0)
        self._occurs.push_back(0)
        self._hidx.push_back(-1)
        self._heap_insert(v)
        return v

    def ensure_vars(self, int n):
        while self._n < n:
            self.new_var()

    def occurs(self, int var):
        return 0 < var <= self._n and self._occurs[var] != 0

    # -- clauses ---------------------------------------------------------
    def add_clause(self, lits):
        cdef list ls = list(lits)
        cdef int lit, v, c
        for lit in ls:
            v = lit if lit > 0 else -lit
            if lit == 0 or v > self._n:
                raise ValueError("literal %r refers to an unallocated variable" % lit)
            self._occurs[v] = 1
        if not self._ok:
            return False
        self._cancel_until(0)
        cdef vector[int] out
        cdef set seen = set()
        for lit in ls:
            if lit in seen:
                continue
            c = _code(lit)
            if -lit in seen or self._val[c] == 1:
                return True
            if self._val[c] == -1:
                continue
            seen.add(lit)
            out.push_back(c)
        if out.size() == 0:
            self._ok = False
            return False
        if out.size() == 1:
            self._enqueue(out[0], -1)
            if self._propagate() >= 0:
                self._ok = False
                return False
            return True
        self._attach(out, False, 0)
        return True

    cdef int _attach(self, vector[int]& lits, bint learnt, int lbd):
        cdef int cid = self._cls.size()
        self._cls.push_back(lits)
        self._learnt.push_back(learnt)
        self._deleted.push_back(0)
        self._lbd.push_back(lbd)
        self._cact.push_back(0.0)
        self._watches[lits[0]].push_back(cid)
        self._watches[lits[1]].push_back(cid)
        if learnt:
            self._learnts.push_back(cid)
        return cid

    # -- core ------------------------------------------------------------
    cdef inline void _enqueue(self, int code, int reason):
        cdef int v = code >> 1
        self._val[code] = 1
        self._val[code ^ 1] = -1
        self._level[v] = self._trail_lim.size()
        self._reason[v] = reason
        self._trail.push_back(code)

    cdef int _propagate(self):
        cdef int confl = -1
        cdef int p, false_lit, i, j, n, cid, first, k, lk, sz
        cdef long nprops = 0
        cdef int* c
        while self._qhead < <int>self._trail.size():
            p = self._trail[self._qhead]
            self._qhead += 1
            nprops += 1
            false_lit = p ^ 1
            i = 0
            j = 0
            n = self._watches[false_lit].size()
            while i < n:
                cid = self._watches[false_lit][i]
                i += 1
                if self._deleted[cid]:
                    continue
                c = self._cls[cid].data()
                sz = self._cls[cid].size()
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if self._val[first] == 1:
                    self._watches[false_lit][j] = cid
                    j += 1
                    continue
                k = 2
                while k < sz:
                    lk = c[k]
                    if self._val[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        self._watches[lk].push_back(cid)
                        break
                    k += 1
                if k < sz:
                    continue
                self._watches[false_lit][j] = cid
                j += 1
                if self._val[first] == -1:
                    confl = cid
                    while i < n:
                        self._watches[false_lit][j] = self._watches[false_lit][i]
                        j += 1
                        i += 1
                else:
                    self._enqueue(first, cid)
            self._watches[false_lit].resize(j)
            if confl >= 0:
                self._qhead = self._trail.size()
                break
        self.stats["propagations"] += nprops
        return confl

    cdef void _bump_var(self, int v):
        cdef int u
        self._act[v] += self._var_inc
        if self._act[v] > 1e100:
            for u in range(1, self._n + 1):
                self._act[u] *= 1e-100
            self._var_inc *= 1e-100
        if self._hidx[v] >= 0:
            self._heap_up(self._hidx[v])

    cdef void _bump_clause(self, int cid):
        cdef int k
        self._cact[cid] += self._cla_inc
        if self._cact[cid] > 1e20:
            for k in range(self._learnts.size()):
                self._cact[self._learnts[k]] *= 1e-20
            self._cla_inc *= 1e-20

    cdef int _analyze(self, int confl, vector[int]& learnt, int* lbd_out):
        cdef int cur = self._trail_lim.size()
        cdef int path = 0
        cdef int p = -1
        cdef int idx = self._trail.size() - 1
        cdef int cid = confl
        cdef int k, q, v, start, sz, x, xv, mi, bt
        cdef bint redundant
        cdef vector[int] keep
        learnt.clear()
        learnt.push_back(0)
        while True:
            if self._learnt[cid]:
                self._bump_clause(cid)
            start = 0 if p < 0 else 1
            sz = self._cls[cid].size()
            for k in range(start, sz):
                q = self._cls[cid][k]
                v = q >> 1
                if not self._seen[v] and self._level[v] > 0:
                    self._bump_var(v)
                    self._seen[v] = 1
                    if self._level[v] >= cur:
                        path += 1
                    else:
                        learnt.push_back(q)
            while True:
                q = self._trail[idx]
                idx -= 1
                if self._seen[q >> 1]:
                    break
            p = q
            cid = self._reason[p >> 1]
            self._seen[p >> 1] = 0
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1
        keep.push_back(learnt[0])
        for k in range(1, learnt.size()):
            q = learnt[k]
            cid = self._reason[q >> 1]
            if cid < 0:
                keep.push_back(q)
                continue
            redundant = True
            for x in range(1, self._cls[cid].size()):
                xv = self._cls[cid][x] >> 1
                if not self._seen[xv] and self._level[xv] > 0:
                    redundant = False
                    break
            if not redundant:
                keep.push_back(q)
        for k in range(1, learnt.size()):
            self._seen[learnt[k] >> 1] = 0
        learnt.swap(keep)
        if learnt.size() == 1:
            bt = 0
        else:
            mi = 1
            for k in range(2, learnt.size()):
                if self._level[learnt[k] >> 1] > self._level[learnt[mi] >> 1]:
                    mi = k
            q = learnt[1]
            learnt[1] = learnt[mi]
            learnt[mi] = q
            bt = self._level[learnt[1] >> 1]
        cdef set levels = set()
        for k in range(learnt.size()):
            levels.add(self._level[learnt[k] >> 1])
        lbd_out[0] = len(levels)
        return bt

    cdef void _cancel_until(self, int lvl):
        if <int>self._trail_lim.size() <= lvl:
            return
        cdef int stop = self._trail_lim[lvl]
        cdef int k, code, v
        k = self._trail.size() - 1
        while k >= stop:
            code = self._trail[k]
            v = code >> 1
            self._val[code] = 0
            self._val[code ^ 1] = 0
            self._reason[v] = -1
            self._phase[v] = 1 if (code & 1) == 0 else 0
            self._heap_insert(v)
            k -= 1
        self._trail.resize(stop)
        self._trail_lim.resize(lvl)
        self._qhead = self._trail.size()

    cdef int _pick_branch(self):
        cdef int v
        while self._heap.size() > 0:
            v = self._heap_pop()
            if self._val[2 * v] == 0:
                return 2 * v if self._phase[v] else 2 * v + 1
        return -1

    cdef void _reduce_db(self):
        cdef int k, cid, code, i, j, n
        cdef list order = sorted(
            [self._learnts[k] for k in range(self._learnts.size())],
            key=lambda c: (-self._lbd[c], self._cact[c]))
        cdef int half = len(order) // 2
        cdef int ndead = 0
        for k in range(half):
            cid = order[k]
            if self._lbd[cid] <= 2 or self._cls[cid].size() <= 2:
                continue
            if self._reason[self._cls[cid][0] >> 1] == cid:
                continue
            self._deleted[cid] = 1
            self._cls[cid].clear()
            self._cls[cid].shrink_to_fit()
            ndead += 1
        if ndead == 0:
            return
        cdef vector[int] alive
        for k in range(self._learnts.size()):
            if not self._deleted[self._learnts[k]]:
                alive.push_back(self._learnts[k])
        self._learnts.swap(alive)
        for code in range(self._watches.size()):
            n = self._watches[code].size()
            j = 0
            for i in range(n):
                cid = self._watches[code][i]
                if not self._deleted[cid]:
                    self._watches[code][j] = cid
                    j += 1
            self._watches[code].resize(j)

    cdef int _search(self, long nconfl, vector[int]& assumptions):
        # returns 1 SAT, 0 UNSAT, -1 restart
        cdef long conflicts = 0
        cdef int confl, bt, lbd, cid, code, a, va
        cdef vector[int] learnt
        while True:
            confl = self._propagate()
            if confl >= 0:
                self.stats["conflicts"] += 1
                conflicts += 1
                if self._trail_lim.size() == 0:
                    return 0
                bt = self._analyze(confl, learnt, &lbd)
                self._cancel_until(bt)
                if learnt.size() == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    cid = self._attach(learnt, True, lbd)
                    self._bump_clause(cid)
                    self._enqueue(learnt[0], cid)
                self._var_inc *= 1.0 / 0.95
                self._cla_inc *= 1.0 / 0.999
            else:
                if nconfl >= 0 and conflicts >= nconfl:
                    self._cancel_until(0)
                    return -1
                if <double>self._learnts.size() - <double>self._trail.size() >= self._max_learnts:
                    self._reduce_db()
                    self._max_learnts *= 1.1
                code = -1
                while self._trail_lim.size() < assumptions.size():
                    a = assumptions[self._trail_lim.size()]
                    va = self._val[a]
                    if va == 1:
                        self._trail_lim.push_back(self._trail.size())
                    elif va == -1:
                        return 0
                    else:
                        code = a
                        break
                if code < 0:
                    code = self._pick_branch()
                    if code < 0:
                        return 1
                    self.stats["decisions"] += 1
                self._trail_lim.push_back(self._trail.size())
                self._enqueue(code, -1)

    def solve(self, assumptions=()):
        """Return True (SAT) or False (UNSAT) under optional assumption literals."""
        self.stats["solves"] += 1
        self._model = None
        cdef vector[int] assum
        cdef int a
        for a in assumptions:
            if a == 0 or abs(a) > self._n:
                raise ValueError("assumption %r refers to an unallocated variable" % a)
            assum.push_back(_code(a))
        if not self._ok:
            return False
        self._cancel_until(0)
        if self._propagate() >= 0:
            self._ok = False
            return False
        self._max_learnts = max(self._cls.size() / 3.0, 2000.0)
        cdef int status = -1
        cdef long k = 0
        cdef long budget
        while status < 0:
            budget = 100 * _luby(k) if self.restarts else -1
            status = self._search(budget, assum)
            if status < 0:
                self.stats["restarts"] += 1
            k += 1
        cdef int v
        if status == 1:
            self._model = [v if self._val[2 * v] == 1 else -v for v in range(1, self._n + 1)]
        elif assum.size() == 0:
            self._ok = False
        self._cancel_until(0)
        return status == 1

    def model(self):
        """DIMACS-style model of the last satisfiable call, one literal per variable."""
        if self._model is None:
            raise RuntimeError("no model available")
        return list(self._model)

    def value(self, int var):
        if self._model is None:
            raise RuntimeError("no model available")
        return self._model[var - 1] > 0
