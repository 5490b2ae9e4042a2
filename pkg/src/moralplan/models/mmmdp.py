"""The multi-moral decision problem and its one-step worth operators.

An :class:`Mmmdp` is a finite-horizon MDP whose reward is replaced by a list of
typed considerations and a list of ranked moral theories. Attaching an
:class:`SspExtension` (goals, budget, cost consideration) turns it into the
stochastic-shortest-path variant.

States and actions are referred to by their integer index into
:attr:`Mmmdp.states` and :attr:`Mmmdp.actions`; names only matter at the I/O
boundary.
"""

import math
from collections import defaultdict
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from moralplan.models.worth import Consideration, ConsiderationKind, Worth, aggregate, check_worth

PROBABILITY_TOLERANCE = 1e-9

StateTime = tuple[int, int]


@dataclass(kw_only=True, frozen=True)
class Transition:
    """One entry of the sparse transition function ``P(to | from, action)``."""

    source: int
    action: int
    target: int
    prob: float


@dataclass(kw_only=True, frozen=True)
class Theory:
    """A moral theory owning a single consideration.

    Attributes:
        name: Unique theory name.
        consideration: Index of the consideration the theory argues from.
        rank: Lexicographic rank; smaller values take priority.
    """

    name: str
    consideration: int
    rank: Fraction


@dataclass(kw_only=True, frozen=True)
class SspExtension:
    """Goal states, cost consideration and budget of a shortest-path problem."""

    goals: frozenset[int]
    budget: float
    cost_consideration: int


@dataclass(kw_only=True, frozen=True)
class Mmmdp:
    """A multi-moral Markov decision problem over horizon ``H``.

    Instances are immutable. Use :func:`validate` to check the invariants; the
    domain parser refuses to hand out models that fail it.
    """

    states: tuple[str, ...]
    actions: tuple[str, ...]
    transitions: tuple[Transition, ...]
    s0: int
    horizon: int
    considerations: tuple[Consideration, ...]
    theories: tuple[Theory, ...] = ()
    ssp: SspExtension | None = field(default=None)

    @cached_property
    def _table(self) -> Mapping[tuple[int, int], tuple[tuple[int, float], ...]]:
        grouped: dict[tuple[int, int], list[tuple[int, float]]] = defaultdict(list)
        for t in self.transitions:
            grouped[(t.source, t.action)].append((t.target, t.prob))
        return {key: tuple(sorted(entries)) for key, entries in grouped.items()}

    @cached_property
    def _applicable(self) -> tuple[tuple[int, ...], ...]:
        by_state: list[set[int]] = [set() for _ in self.states]
        for s, a in self._table:
            if 0 <= s < len(self.states):
                by_state[s].add(a)
        return tuple(tuple(sorted(actions)) for actions in by_state)

    def has_transitions(self, s: int, a: int) -> bool:
        """Whether ``(s, a)`` has at least one transition entry."""
        return (s, a) in self._table

    def applicable(self, s: int) -> tuple[int, ...]:
        """Actions with transitions at *s*, in index order."""
        return self._applicable[s]

    def successors(self, s: int, a: int) -> tuple[tuple[int, float], ...]:
        """Positive-probability ``(state, prob)`` outcomes of ``(s, a)``, sorted by state."""
        return tuple((s2, p) for s2, p in self._table.get((s, a), ()) if p > 0.0)

    @property
    def is_ssp(self) -> bool:
        """Whether the model carries goals, a budget and a cost consideration."""
        return self.ssp is not None

    @property
    def state_time_count(self) -> int:
        """Size of the decision state-time space ``|S|·H``."""
        return len(self.states) * self.horizon

    def state_index(self, name: str) -> int:
        """Index of the state called *name*."""
        return self.states.index(name)

    def action_index(self, name: str) -> int:
        """Index of the action called *name*."""
        return self.actions.index(name)


def q_with_outcome(
    model: Mmmdp,
    consideration: Consideration,
    next_worth_row: Sequence[Worth] | Mapping[int, Worth],
    s: int,
    a: int,
    successors: Sequence[int],
    probs: Sequence[float],
) -> Worth:
    """Aggregate ``(s, a)`` over an explicit outcome set.

    The history walk uses this with a single successor and probability ``1.0``.

    Args:
        model: The decision problem.
        consideration: Consideration to evaluate.
        next_worth_row: Worth at ``t+1``, indexable by state.
        s: Source state.
        a: Action taken.
        successors: Outcome states.
        probs: Probability of each outcome.

    Returns:
        The aggregated worth.
    """
    return aggregate(
        consideration,
        [next_worth_row[s2] for s2 in successors],
        [consideration.judgement(s, a, s2) for s2 in successors],
        probs,
    )


def q_state_action(
    model: Mmmdp,
    consideration: Consideration,
    next_worth_row: Sequence[Worth] | Mapping[int, Worth],
    s: int,
    a: int,
) -> Worth:
    """State-action aggregation ``Q(s, a)`` against the worth row at ``t+1``.

    Raises:
        ValueError: If ``(s, a)`` has no transitions.
    """
    if not model.has_transitions(s, a):
        raise ValueError(f"({model.states[s]}, {model.actions[a]}) has no transitions")  # noqa: TRY003
    outcomes = model.successors(s, a)
    return q_with_outcome(
        model,
        consideration,
        next_worth_row,
        s,
        a,
        [s2 for s2, _ in outcomes],
        [p for _, p in outcomes],
    )


def _name(names: Sequence[str], index: int) -> str:
    return names[index] if 0 <= index < len(names) else f"#{index}"


def _validate_transitions(model: Mmmdp) -> list[str]:
    violations: list[str] = []
    n_states, n_actions = len(model.states), len(model.actions)
    mass: dict[tuple[int, int], float] = defaultdict(float)
    seen: set[tuple[int, int, int]] = set()
    for i, t in enumerate(model.transitions):
        if not (0 <= t.source < n_states and 0 <= t.target < n_states and 0 <= t.action < n_actions):
            violations.append(f"transition {i} references an unknown state or action")
            continue
        key = (t.source, t.action, t.target)
        if key in seen:
            violations.append(
                f"duplicate transition ({model.states[t.source]}, {model.actions[t.action]}, {model.states[t.target]})"
            )
        seen.add(key)
        if not math.isfinite(t.prob) or not 0.0 <= t.prob <= 1.0:
            violations.append(f"transition {i} probability {t.prob!r} outside [0, 1]")
            continue
        mass[(t.source, t.action)] += t.prob
    for (s, a), total in sorted(mass.items()):
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            violations.append(
                f"probability mass of ({model.states[s]}, {model.actions[a]}) sums to {total!r}, expected 1"
            )
    for s, name in enumerate(model.states):
        if not any((s, a) in mass for a in range(n_actions)):
            violations.append(f"state {name} has no outgoing transitions")
    return violations


def _validate_considerations(model: Mmmdp) -> list[str]:
    violations: list[str] = []
    goals = model.ssp.goals if model.ssp is not None else frozenset()
    for c in model.considerations:
        if c.kind.is_real and not (math.isfinite(c.epsilon) and c.epsilon > 0):
            violations.append(f"consideration {c.name} epsilon must be positive, got {c.epsilon!r}")
        for value in [c.default_judgement, *c.judgements.values()]:
            try:
                check_worth(c.kind, value)
            except (TypeError, ValueError) as e:
                violations.append(f"consideration {c.name}: {e}")
                break
        if c.kind is ConsiderationKind.COST:
            for t in model.transitions:
                if t.source in goals or t.prob == 0.0:
                    continue
                cost = c.judgement(t.source, t.action, t.target)
                if not (isinstance(cost, float) and cost > 0.0):
                    violations.append(
                        f"cost consideration {c.name} must be strictly positive on "
                        f"({_name(model.states, t.source)}, {_name(model.actions, t.action)}, "
                        f"{_name(model.states, t.target)}), got {cost!r}"
                    )
                    break
    return violations


def _validate_ssp(model: Mmmdp) -> list[str]:
    violations: list[str] = []
    cost_indices = [i for i, c in enumerate(model.considerations) if c.kind is ConsiderationKind.COST]
    if len(cost_indices) > 1:
        violations.append("at most one cost consideration is allowed")
    ssp = model.ssp
    if ssp is None:
        if cost_indices:
            violations.append("a cost consideration requires goals and a budget")
        return violations
    if not cost_indices or ssp.cost_consideration not in cost_indices:
        violations.append("goals and a budget require a cost consideration")
    if not (math.isfinite(ssp.budget) and ssp.budget > 0):
        violations.append(f"budget must be positive, got {ssp.budget!r}")
    if not ssp.goals:
        violations.append("at least one goal state is required")
    for g in sorted(ssp.goals):
        if not 0 <= g < len(model.states):
            violations.append(f"goal #{g} is not a state")
            continue
        for t in model.transitions:
            if t.source == g and t.target != g and t.prob > 0.0:
                violations.append(f"goal not absorbing: {model.states[g]} moves to {_name(model.states, t.target)}")
                break
    return violations


def validate(model: Mmmdp) -> list[str]:
    """Check every model invariant and return the violations found.

    An empty list means the model is well formed. Nothing is raised.
    """
    violations: list[str] = []
    if not model.states:
        violations.append("at least one state is required")
    if not model.actions:
        violations.append("at least one action is required")
    for label, names in (("state", model.states), ("action", model.actions)):
        if len(set(names)) != len(names):
            violations.append(f"{label} names must be unique")
    if not 0 <= model.s0 < len(model.states):
        violations.append(f"initial state #{model.s0} is not a state")
    if model.horizon < 1:
        violations.append(f"horizon must be at least 1, got {model.horizon}")
    if not model.considerations:
        violations.append("at least one consideration is required")
    if len({c.name for c in model.considerations}) != len(model.considerations):
        violations.append("consideration names must be unique")
    violations += _validate_transitions(model)
    violations += _validate_considerations(model)
    violations += _validate_ssp(model)
    if len({m.name for m in model.theories}) != len(model.theories):
        violations.append("theory names must be unique")
    for m in model.theories:
        if not 0 <= m.consideration < len(model.considerations):
            violations.append(f"theory {m.name} references consideration #{m.consideration}")
        elif model.considerations[m.consideration].kind is ConsiderationKind.COST:
            violations.append(f"theory {m.name} cannot argue from the cost consideration")
    return violations
