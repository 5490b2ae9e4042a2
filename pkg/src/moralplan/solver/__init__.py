"""Heuristic search for Pareto-undominated non-stationary policies.

:func:`mplan` explores state-time nodes from ``(s0, 0)``, keeping at each node
the undominated worth vectors reachable under some policy, and extracts every
policy realising an undominated root vector.
"""

from moralplan.solver._backup import backup
from moralplan.solver._extract import extract_policies
from moralplan.solver._pareto import pprune
from moralplan.solver._search import MPlanResult, SolveStats, mplan
from moralplan.solver._workspace import Entry, Producer, SolverWorkspace, converged

__all__ = [
    "Entry",
    "MPlanResult",
    "Producer",
    "SolveStats",
    "SolverWorkspace",
    "backup",
    "converged",
    "extract_policies",
    "mplan",
    "pprune",
]
