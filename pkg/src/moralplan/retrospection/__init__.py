"""Hypothetical retrospection over a set of candidate policies.

Every history of every policy supports the argument that the policy was the
right choice. A moral theory lets an argument attack one from another policy
when its history ended better and its policy was foreseeably better, unless a
strictly higher-ranked theory prefers the target's policy. Policies whose
arguments are least attacked, weighted by history probability, are selected.
"""

from moralplan.retrospection._arguments import (
    Argument,
    Attack,
    AttackIndex,
    attackers,
    attacks,
    blocked,
    non_acceptability,
)
from moralplan.retrospection._histories import History, extract_histories
from moralplan.retrospection._render import build_argument_graph, emit_argumentation_dot
from moralplan.retrospection._select import MehrResult, select

__all__ = [
    "Argument",
    "Attack",
    "AttackIndex",
    "History",
    "MehrResult",
    "attackers",
    "attacks",
    "blocked",
    "build_argument_graph",
    "emit_argumentation_dot",
    "extract_histories",
    "non_acceptability",
    "select",
]
