"""Incremental SAT facility.

``Solver`` is the compiled CDCL core when the extension is built, otherwise
the pure-Python implementation.  Set ``FDCNF_PURE_PYTHON=1`` to force the
fallback.  Both expose the same interface::

    s = Solver()
    a, b = s.new_var(), s.new_var()
    s.add_clause([a, -b])
    if s.solve():
        s.model()        # [1, -2] style DIMACS literals
"""

import os

from ._pysolver import Solver as PySolver

CSolver = None
if not os.environ.get("FDCNF_PURE_PYTHON"):
    try:
        from ._csolver import Solver as CSolver
    except ImportError:  # extension not built
        CSolver = None

Solver = CSolver if CSolver is not None else PySolver
BACKEND = Solver.backend

from .external import ExternalSolver  # noqa: E402


def available_backends():
    out = {"python": PySolver}
    if CSolver is not None:
        out["compiled"] = CSolver
    return out


__all__ = ["Solver", "PySolver", "CSolver", "ExternalSolver", "BACKEND",
           "available_backends"]
