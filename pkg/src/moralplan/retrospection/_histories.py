"""History extraction: every positive-probability trajectory of a policy."""

from dataclasses import dataclass

from moralplan.models._base import CapacityError
from moralplan.models.domain import SolverConfig
from moralplan.models.mmmdp import Mmmdp, q_with_outcome
from moralplan.models.policy import Policy
from moralplan.models.worth import WorthVector


@dataclass(frozen=True)
class History:
    """One trajectory from ``s0`` to the horizon under a policy.

    Attributes:
        states: ``H+1`` visited states.
        actions: ``H`` actions taken.
        probability: Product of the transition probabilities along the way.
        endpoint_worth: Worth of the trajectory judged from its endpoint.
    """

    states: tuple[int, ...]
    actions: tuple[int, ...]
    probability: float
    endpoint_worth: WorthVector


def _endpoint_worth(model: Mmmdp, states: tuple[int, ...], actions: tuple[int, ...]) -> WorthVector:
    worth = [c.identity for c in model.considerations]
    for t in reversed(range(len(actions))):
        s, a, s2 = states[t], actions[t], states[t + 1]
        worth = [
            q_with_outcome(model, c, {s2: w}, s, a, [s2], [1.0])
            for c, w in zip(model.considerations, worth, strict=True)
        ]
    return tuple(worth)


def extract_histories(model: Mmmdp, policy: Policy, config: SolverConfig | None = None) -> list[History]:
    """Enumerate the histories of *policy* depth-first, successors in state order.

    Raises:
        CapacityError: If there are more than ``max_histories`` histories.
        ValueError: If the policy is undefined at a state-time it reaches.
    """
    config = config or SolverConfig()
    histories: list[History] = []
    stack: list[tuple[tuple[int, ...], tuple[int, ...], float]] = [((model.s0,), (), 1.0)]
    while stack:
        states, actions, probability = stack.pop()
        t = len(actions)
        if t == model.horizon:
            histories.append(History(states, actions, probability, _endpoint_worth(model, states, actions)))
            if len(histories) > config.max_histories:
                raise CapacityError(
                    f"policy has more than {config.max_histories} histories",
                    limit=config.max_histories,
                    count=len(histories),
                )
            continue
        s = states[-1]
        if (s, t) not in policy.actions:
            raise ValueError(f"policy is undefined at reachable state-time ({model.states[s]}, {t})")  # noqa: TRY003
        a = policy.action(s, t)
        for s2, p in reversed(model.successors(s, a)):
            stack.append((states + (s2,), actions + (a,), probability * p))
    return histories
