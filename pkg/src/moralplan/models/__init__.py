"""Data model for multi-moral planning problems.

This package re-exports the public symbols of its sub-modules so callers can
import everything from ``moralplan.models``.

Sub-modules
-----------
- :mod:`moralplan.models._base`   - :class:`YamlSerializable`, :func:`read_yaml`, :class:`DomainError`, :class:`CapacityError`
- :mod:`moralplan.models.worth`   - worth tags, :class:`Consideration`, aggregation and dominance
- :mod:`moralplan.models.mmmdp`   - :class:`Mmmdp`, :class:`Theory`, :class:`SspExtension`, ``Q`` operators, :func:`validate`
- :mod:`moralplan.models.policy`  - :class:`Policy`, :class:`NonStationaryWorth`, backward induction
- :mod:`moralplan.models.domain`  - :class:`DomainFile`, :class:`Heuristic`, :class:`SolverConfig`, parse/serialize
"""

from moralplan.models._base import CapacityError, DomainError, YamlSerializable, read_yaml
from moralplan.models.domain import (
    DomainFile,
    Heuristic,
    SolverConfig,
    default_heuristic,
    parse,
    serialize,
)
from moralplan.models.mmmdp import (
    Mmmdp,
    SspExtension,
    StateTime,
    Theory,
    Transition,
    q_state_action,
    q_with_outcome,
    validate,
)
from moralplan.models.policy import (
    NonStationaryWorth,
    Policy,
    consideration_optimal,
    expected_cost,
    goal_reach,
    is_proper,
    policy_worth,
    reachable_state_times,
)
from moralplan.models.worth import (
    Consideration,
    ConsiderationKind,
    Worth,
    WorthVector,
    aggregate,
    consistent,
    pareto_dominates,
)

__all__ = [
    "CapacityError",
    "Consideration",
    "ConsiderationKind",
    "DomainError",
    "DomainFile",
    "Heuristic",
    "Mmmdp",
    "NonStationaryWorth",
    "Policy",
    "SolverConfig",
    "SspExtension",
    "StateTime",
    "Theory",
    "Transition",
    "Worth",
    "WorthVector",
    "YamlSerializable",
    "aggregate",
    "consideration_optimal",
    "consistent",
    "default_heuristic",
    "expected_cost",
    "goal_reach",
    "is_proper",
    "pareto_dominates",
    "parse",
    "policy_worth",
    "q_state_action",
    "q_with_outcome",
    "reachable_state_times",
    "read_yaml",
    "serialize",
    "validate",
]
