"""Arguments, attacks with lexicographic blocking, and non-acceptability."""

import bisect
from collections.abc import Sequence
from dataclasses import dataclass

from moralplan.models.mmmdp import Mmmdp
from moralplan.models.worth import WorthVector
from moralplan.retrospection._histories import History


@dataclass(frozen=True, order=True)
class Argument:
    """The claim that using policy ``policy`` was right, supported by one of its histories."""

    policy: int
    history: int


@dataclass(frozen=True, order=True)
class Attack:
    """Theory ``theory`` lets argument ``attacker`` attack argument ``target`` (argument ids)."""

    theory: int
    attacker: int
    target: int


def _prefers(model: Mmmdp, theory: int, w: WorthVector, other: WorthVector) -> bool:
    index = model.theories[theory].consideration
    return model.considerations[index].prefers(w[index], other[index])


def attacks(
    theory: int,
    model: Mmmdp,
    arg: Argument,
    arg_other: Argument,
    histories: Sequence[Sequence[History]],
    policy_roots: Sequence[WorthVector],
) -> bool:
    """Whether *arg* attacks *arg_other* under *theory*, ignoring blocking.

    Both critical questions must hold strictly: the attacker's history endpoint
    is preferred to the target's, and so is the attacker's policy root worth.
    Arguments of the same policy never attack each other.
    """
    if arg.policy == arg_other.policy:
        return False
    endpoint = histories[arg.policy][arg.history].endpoint_worth
    endpoint_other = histories[arg_other.policy][arg_other.history].endpoint_worth
    return _prefers(model, theory, endpoint, endpoint_other) and _prefers(
        model, theory, policy_roots[arg.policy], policy_roots[arg_other.policy]
    )


def blocked(
    model: Mmmdp, theory: int, attacker_policy: int, target_policy: int, policy_roots: Sequence[WorthVector]
) -> bool:
    """Whether a strictly higher-ranked theory prefers the target policy's root worth to the attacker's."""
    rank = model.theories[theory].rank
    return any(
        other.rank < rank
        and _prefers(model, m, policy_roots[target_policy], policy_roots[attacker_policy])
        for m, other in enumerate(model.theories)
    )


class AttackIndex:
    """Attack lookups over a fixed set of policies without materialising every pair.

    For each theory, each policy's history endpoint scores are kept sorted, so
    the attackers of an argument from another policy are a suffix found by
    bisection. Policy-level conditions (root preference and blocking) are
    resolved once per ordered policy pair.
    """

    def __init__(self, model: Mmmdp, histories: Sequence[Sequence[History]], policy_roots: Sequence[WorthVector]):
        self.model = model
        self.histories = histories
        self.policy_roots = policy_roots
        self.offsets: list[int] = []
        total = 0
        for group in histories:
            self.offsets.append(total)
            total += len(group)
        self._ranked: list[list[tuple[list[float], list[int]]]] = []
        self._open: list[list[list[int]]] = []
        n = len(histories)
        for m, theory in enumerate(model.theories):
            c = model.considerations[theory.consideration]
            ranked = []
            for group in histories:
                order = sorted(range(len(group)), key=lambda h, g=group: c.score(g[h].endpoint_worth[theory.consideration]))
                ranked.append(([c.score(group[h].endpoint_worth[theory.consideration]) for h in order], order))
            self._ranked.append(ranked)
            self._open.append(
                [
                    [
                        p
                        for p in range(n)
                        if p != target
                        and _prefers(model, m, policy_roots[p], policy_roots[target])
                        and not blocked(model, m, p, target, policy_roots)
                    ]
                    for target in range(n)
                ]
            )

    def argument_id(self, arg: Argument) -> int:
        """Position of *arg* in policy-then-history order."""
        return self.offsets[arg.policy] + arg.history

    def _target_score(self, m: int, arg: Argument) -> float:
        index = self.model.theories[m].consideration
        w = self.histories[arg.policy][arg.history].endpoint_worth[index]
        return self.model.considerations[index].score(w)

    def counts(self, arg: Argument) -> list[int]:
        """Number of unblocked attackers of *arg* under each theory."""
        result = []
        for m in range(len(self.model.theories)):
            x = self._target_score(m, arg)
            total = 0
            for p in self._open[m][arg.policy]:
                scores, _ = self._ranked[m][p]
                total += len(scores) - bisect.bisect_right(scores, x)
            result.append(total)
        return result

    def attackers(self, arg: Argument) -> set[tuple[int, int]]:
        """Unblocked ``(theory, attacker argument id)`` pairs targeting *arg*."""
        result: set[tuple[int, int]] = set()
        for m in range(len(self.model.theories)):
            x = self._target_score(m, arg)
            for p in self._open[m][arg.policy]:
                scores, order = self._ranked[m][p]
                for h in order[bisect.bisect_right(scores, x) :]:
                    result.add((m, self.argument_id(Argument(policy=p, history=h))))
        return result


def attackers(
    model: Mmmdp,
    arg: Argument,
    all_arguments: Sequence[Argument],
    histories: Sequence[Sequence[History]],
    policy_roots: Sequence[WorthVector],
) -> set[tuple[int, int]]:
    """The attacker set of *arg*: ``(theory, argument id)`` pairs that attack it and are not blocked.

    Argument ids index *all_arguments*.
    """
    result: set[tuple[int, int]] = set()
    for m in range(len(model.theories)):
        for i, other in enumerate(all_arguments):
            if attacks(m, model, other, arg, histories, policy_roots) and not blocked(
                model, m, other.policy, arg.policy, policy_roots
            ):
                result.add((m, i))
    return result


def non_acceptability(histories: Sequence[History], attacker_counts: Sequence[int]) -> float:
    """Probability-weighted number of attacks on a policy's supporting arguments.

    Args:
        histories: The policy's histories.
        attacker_counts: Size of each history's argument's attacker set, aligned with *histories*.
    """
    return sum(h.probability * n for h, n in zip(histories, attacker_counts, strict=True))
