"""Component groups of Néron models from explicit Galois-lattice data.

Thin wrapper over the C++ core: groups are dicts ``{prime: [parts]}``,
models and plans are the same JSON documents the command line tool uses.
"""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    Error,
    InvalidArgument,
    ModelError,
    NotRealizable,
    PrecisionError,
    PreconditionError,
)

__all__ = [
    "delta", "smith_form", "cokernel_l_part", "rhs_bound", "is_realizable", "plan", "verify_plan",
    "end_to_end_check", "example", "compute_phi", "check_thm33", "run_suite", "suite_names",
    "BudgetExceeded", "Error", "InvalidArgument", "ModelError", "NotRealizable", "PrecisionError",
    "PreconditionError",
]


def _group(g):
    return json.dumps({str(k): list(v) for k, v in g.items()})


def _doc(x):
    return x if isinstance(x, str) else json.dumps(x)


def _rows(m):
    return [[str(int(x)) for x in row] for row in m]


def delta(group):
    d = json.loads(_core.delta(_group(group)))
    return int(d["delta"]), int(d["delta_prime"])


def smith_form(matrix):
    return [int(x) for x in _core.smith_form(_rows(matrix))]


def cokernel_l_part(matrix, l):
    parts, corank = _core.cokernel_l_part(_rows(matrix), l)
    return list(parts), corank


def rhs_bound(group, t, p=0):
    from fractions import Fraction
    return Fraction(_core.rhs_bound(_group(group), t, p))


def is_realizable(group, t, a, u, p=0):
    return _core.is_realizable(_group(group), t, a, u, p)


def plan(group, t, a, u, p=0):
    return json.loads(_core.plan(_group(group), t, a, u, p))


def verify_plan(plan_doc):
    return _core.verify_plan(_doc(plan_doc))


def end_to_end_check(plan_doc):
    return _core.end_to_end_check(_doc(plan_doc))


def example(name, l=2, i=1, r=1, s=1, precision=0, ns=(), dim=1):
    return json.loads(_core.example(name, l, i, r, s, precision, [str(n) for n in ns], dim))


def compute_phi(model):
    return json.loads(_core.compute_phi(_doc(model)))


def check_thm33(model):
    return list(_core.check_thm33(_doc(model)))


def run_suite(name, seed=0, budget=0):
    return json.loads(_core.run_suite(name, seed, budget))


def suite_names():
    return list(_core.suite_names())
