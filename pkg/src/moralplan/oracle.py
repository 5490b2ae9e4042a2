"""Brute-force reference results for small problems.

Everything here enumerates the full (reachable-behaviour) policy space and
evaluates it with :mod:`moralplan.models`; nothing goes through
:mod:`moralplan.solver`, so agreement between the two is meaningful.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from loguru import logger

from moralplan.models._base import CapacityError
from moralplan.models.domain import SolverConfig
from moralplan.models.mmmdp import Mmmdp, StateTime, Theory, Transition
from moralplan.models.policy import NonStationaryWorth, Policy, goal_reach, policy_worth
from moralplan.models.worth import Consideration, ConsiderationKind, Worth, WorthVector, oriented
from moralplan.retrospection import MehrResult, select

@dataclass(kw_only=True, frozen=True)
class EnumerationBound:
    """Limit on how many policies the oracle may enumerate."""

    max_policy_count: int = 50_000


def full_table_count(model: Mmmdp) -> int:
    """Number of full ``(state, time) -> action`` tables, ``|A|^(|S|·H)``."""
    return len(model.actions) ** (len(model.states) * model.horizon)


def enumerate_policies(model: Mmmdp, bound: EnumerationBound | None = None) -> list[Policy]:
    """Every deterministic non-stationary policy, one per reachable behaviour.

    Policies are built time layer by time layer, choosing an action for each
    state reachable so far, so no two results behave alike.

    Raises:
        CapacityError: If more than ``bound.max_policy_count`` policies exist.
    """
    bound = bound or EnumerationBound()
    logger.debug(f"Enumerating policies; full-table count is {full_table_count(model)}")
    policies: list[Policy] = []
    stack: list[tuple[int, tuple[int, ...], dict[StateTime, int]]] = [(0, (model.s0,), {})]
    while stack:
        t, frontier, chosen = stack.pop()
        if t == model.horizon:
            policies.append(Policy(table=tuple(sorted((tt, s, a) for (s, tt), a in chosen.items()))))
            if len(policies) > bound.max_policy_count:
                raise CapacityError(
                    f"more than {bound.max_policy_count} policies to enumerate",
                    limit=bound.max_policy_count,
                    count=len(policies),
                )
            continue
        for combo in itertools.product(*(model.applicable(s) for s in frontier)):
            assignment = {**chosen, **{(s, t): a for s, a in zip(frontier, combo, strict=True)}}
            following = tuple(sorted({s2 for s, a in zip(frontier, combo, strict=True) for s2, _ in model.successors(s, a)}))
            stack.append((t + 1, following, assignment))
    return sorted(policies)


@dataclass(frozen=True, eq=False)
class _Evaluated:
    policy: Policy
    root: WorthVector
    admissible: bool


def _undominated(vectors: set[WorthVector], considerations: tuple[Consideration, ...]) -> set[WorthVector]:
    unique = sorted(vectors, key=repr)
    scores = oriented(unique, considerations)
    return {
        v
        for v, row in zip(unique, scores, strict=True)
        if not any(np.all(other >= row) and np.any(other > row) for other in scores)
    }


def _admissible(model: Mmmdp, policy: Policy, worth: NonStationaryWorth) -> bool:
    ssp = model.ssp
    if ssp is None:
        return True
    cost = float(worth.at(ssp.cost_consideration, 0, model.s0))
    return bool(goal_reach(model, policy)[0, model.s0]) and cost <= ssp.budget


def _evaluate_all(model: Mmmdp, bound: EnumerationBound | None) -> list[_Evaluated]:
    evaluated = []
    for policy in enumerate_policies(model, bound):
        worth = policy_worth(model, policy)
        evaluated.append(
            _Evaluated(policy=policy, root=worth.vector(0, model.s0), admissible=_admissible(model, policy, worth))
        )
    return evaluated


def _front(model: Mmmdp, evaluated: list[_Evaluated]) -> set[WorthVector]:
    return _undominated({e.root for e in evaluated if e.admissible}, model.considerations)


def oracle_pareto_front(model: Mmmdp, bound: EnumerationBound | None = None) -> set[WorthVector]:
    """Undominated root worth vectors over all policies (in-budget proper ones for shortest-path problems)."""
    return _front(model, _evaluate_all(model, bound))


def oracle_candidates(model: Mmmdp, bound: EnumerationBound | None = None) -> list[Policy]:
    """Every policy whose root worth vector lies on the front, in canonical order.

    For shortest-path problems only proper policies within the budget qualify.
    """
    evaluated = _evaluate_all(model, bound)
    front = _front(model, evaluated)
    return [e.policy for e in evaluated if e.admissible and e.root in front]


def oracle_select(
    model: Mmmdp, bound: EnumerationBound | None = None, config: SolverConfig | None = None
) -> MehrResult:
    """Run retrospective selection over :func:`oracle_candidates`.

    Raises:
        ValueError: If no candidate exists (no proper in-budget policy).
    """
    return select(model, oracle_candidates(model, bound), config)


def random_model(
    rng: np.random.Generator, *, max_states: int = 4, max_actions: int = 3, max_horizon: int = 3
) -> Mmmdp:
    """A seeded random problem small enough for the oracle.

    Every action moves to one or two states drawn from all states, so branches
    meet again, inner states may loop on themselves and some states are
    absorbing. Probabilities are multiples of 1/8 and utilities integers in
    ``[-10, 0]``: sums stay exact, exact ties are common and the default
    heuristic stays optimistic.
    """
    n_states = int(rng.integers(1, max_states + 1))
    n_actions = int(rng.integers(1, max_actions + 1))
    horizon = int(rng.integers(1, max_horizon + 1))
    transitions: list[Transition] = []
    for s in range(n_states):
        absorbing = s > 0 and rng.random() < 0.25
        for a in range(n_actions):
            if absorbing:
                transitions.append(Transition(source=s, action=a, target=s, prob=1.0))
                continue
            k = int(rng.integers(1, min(2, n_states) + 1))
            targets = sorted(int(x) for x in rng.choice(n_states, size=k, replace=False))
            p = float(rng.choice([0.125, 0.25, 0.5, 0.75, 0.875]))
            probs = [1.0] if k == 1 else [p, 1.0 - p]
            transitions += [Transition(source=s, action=a, target=s2, prob=q) for s2, q in zip(targets, probs, strict=True)]
    considerations = []
    for i in range(int(rng.integers(1, 4))):
        kind = ConsiderationKind.UTILITY if rng.random() < 0.5 else ConsiderationKind.ABSOLUTE
        judgements: dict[tuple[int, int, int], Worth] = {}
        for t in transitions:
            if kind is ConsiderationKind.UTILITY and rng.random() < 0.7:
                judgements[(t.source, t.action, t.target)] = float(-int(rng.integers(0, 11)))
            elif kind is ConsiderationKind.ABSOLUTE and rng.random() < 0.3:
                judgements[(t.source, t.action, t.target)] = True
        considerations.append(Consideration(name=f"c{i}", kind=kind, judgements=judgements))
    theories = tuple(
        Theory(name=f"m{i}", consideration=int(rng.integers(0, len(considerations))), rank=Fraction(int(rng.integers(0, 3))))
        for i in range(int(rng.integers(1, 4)))
    )
    return Mmmdp(
        states=tuple(f"s{i}" for i in range(n_states)),
        actions=tuple(f"a{i}" for i in range(n_actions)),
        transitions=tuple(transitions),
        s0=0,
        horizon=horizon,
        considerations=tuple(considerations),
        theories=theories,
    )
