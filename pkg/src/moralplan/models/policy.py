"""Non-stationary policies and their evaluation by backward induction."""

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from moralplan.models.mmmdp import Mmmdp, StateTime, q_state_action
from moralplan.models.worth import Consideration, Worth, WorthVector


def reachable_state_times(model: Mmmdp, policy: "Policy | Mapping[StateTime, int] | None" = None) -> frozenset[StateTime]:
    """State-times ``(s, t)`` with ``t < H`` reachable from ``(s0, 0)``.

    Args:
        model: The decision problem.
        policy: Follow only this policy's actions; ``None`` follows every
            applicable action.

    Returns:
        The reachable decision state-times.

    Raises:
        ValueError: If *policy* is undefined at a state-time it reaches.
    """
    actions = policy.actions if isinstance(policy, Policy) else policy
    root = (model.s0, 0)
    seen = {root}
    queue = deque([root])
    while queue:
        s, t = queue.popleft()
        if actions is None:
            chosen: Iterable[int] = model.applicable(s)
        elif (s, t) in actions:
            chosen = (actions[(s, t)],)
        else:
            raise ValueError(f"policy is undefined at reachable state-time ({model.states[s]}, {t})")  # noqa: TRY003
        if t + 1 >= model.horizon:
            continue
        for a in chosen:
            for s2, _ in model.successors(s, a):
                if (s2, t + 1) not in seen:
                    seen.add((s2, t + 1))
                    queue.append((s2, t + 1))
    return frozenset(seen)


@dataclass(frozen=True, order=True)
class Policy:
    """A deterministic non-stationary policy stored on its own reachable set.

    ``table`` holds ``(time, state, action)`` triples sorted by time then state,
    so two policies compare equal exactly when they behave identically from
    ``(s0, 0)``, and the natural ordering is the canonical one used for policy ids.
    """

    table: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_mapping(cls, model: Mmmdp, mapping: Mapping[StateTime, int]) -> "Policy":
        """Build a policy from a ``(state, time) -> action`` map, dropping unreachable entries.

        Raises:
            ValueError: If the map is undefined at a reachable state-time, or
                picks an action without transitions there.
        """
        reach = reachable_state_times(model, mapping)
        for s, t in reach:
            if not model.has_transitions(s, mapping[(s, t)]):
                raise ValueError(  # noqa: TRY003
                    f"action {model.actions[mapping[(s, t)]]} is not applicable in {model.states[s]}"
                )
        return cls(table=tuple(sorted((t, s, mapping[(s, t)]) for s, t in reach)))

    @cached_property
    def actions(self) -> dict[StateTime, int]:
        """The policy as a ``(state, time) -> action`` dictionary."""
        return {(s, t): a for t, s, a in self.table}

    def action(self, s: int, t: int) -> int:
        """The action taken in state *s* at time *t*."""
        return self.actions[(s, t)]

    def describe(self, model: Mmmdp) -> list[tuple[int, str, str]]:
        """Readable ``(time, state name, action name)`` rows."""
        return [(t, model.states[s], model.actions[a]) for t, s, a in self.table]


@dataclass(frozen=True, eq=False)
class NonStationaryWorth:
    """Per-consideration ``(H+1) × |S|`` worth matrices; row ``H`` is the identity."""

    considerations: tuple[Consideration, ...]
    matrices: tuple[np.ndarray, ...]

    def at(self, index: int, t: int, s: int) -> Worth:
        """Worth of consideration *index* at state *s* and time *t*."""
        value = self.matrices[index][t, s]
        return bool(value) if self.matrices[index].dtype == np.bool_ else float(value)

    def vector(self, t: int, s: int) -> WorthVector:
        """The worth vector at ``(s, t)``."""
        return tuple(self.at(i, t, s) for i in range(len(self.matrices)))


def _identity_matrices(model: Mmmdp, considerations: Iterable[Consideration]) -> tuple[np.ndarray, ...]:
    shape = (model.horizon + 1, len(model.states))
    return tuple(
        np.zeros(shape, dtype=np.float64) if c.kind.is_real else np.zeros(shape, dtype=np.bool_)
        for c in considerations
    )


def policy_worth(model: Mmmdp, policy: Policy) -> NonStationaryWorth:
    """Evaluate *policy* for every consideration by backward induction.

    Entries at state-times the policy never reaches stay at the identity.

    Raises:
        ValueError: If the policy is undefined at a state-time it reaches.
    """
    reach = reachable_state_times(model, policy)
    matrices = _identity_matrices(model, model.considerations)
    for t in reversed(range(model.horizon)):
        for s in range(len(model.states)):
            if (s, t) not in reach:
                continue
            a = policy.action(s, t)
            for c, matrix in zip(model.considerations, matrices, strict=True):
                matrix[t, s] = q_state_action(model, c, matrix[t + 1], s, a)
    return NonStationaryWorth(considerations=model.considerations, matrices=matrices)


def consideration_optimal(model: Mmmdp, consideration: Consideration) -> NonStationaryWorth:
    """The best worth achievable at every state-time under a single consideration.

    Ties between actions go to the lowest action index.
    """
    (matrix,) = _identity_matrices(model, (consideration,))
    for t in reversed(range(model.horizon)):
        for s in range(len(model.states)):
            best: Worth | None = None
            for a in model.applicable(s):
                q = q_state_action(model, consideration, matrix[t + 1], s, a)
                if best is None or consideration.prefers(q, best):
                    best = q
            if best is not None:
                matrix[t, s] = best
    return NonStationaryWorth(considerations=(consideration,), matrices=(matrix,))


def goal_reach(model: Mmmdp, policy: Policy) -> np.ndarray:
    """Boolean ``(H+1) × |S|`` matrix: does the policy reach a goal by ``H`` with positive probability?

    Row ``H`` marks the goal states. Models without goals yield all ``False``.
    """
    goals = model.ssp.goals if model.ssp is not None else frozenset()
    reach = reachable_state_times(model, policy)
    flags = np.zeros((model.horizon + 1, len(model.states)), dtype=np.bool_)
    for g in goals:
        flags[model.horizon, g] = True
    for t in reversed(range(model.horizon)):
        for s in range(len(model.states)):
            if (s, t) in reach:
                flags[t, s] = any(flags[t + 1, s2] for s2, _ in model.successors(s, policy.action(s, t)))
    return flags


def is_proper(model: Mmmdp, policy: Policy) -> bool:
    """Whether *policy* reaches a goal from ``s0`` with positive probability."""
    return bool(goal_reach(model, policy)[0, model.s0])


def expected_cost(model: Mmmdp, policy: Policy) -> float | None:
    """Expected cost of *policy* from ``(s0, 0)``, or ``None`` without a cost consideration."""
    if model.ssp is None:
        return None
    worth = policy_worth(model, policy)
    return float(worth.at(model.ssp.cost_consideration, 0, model.s0))
