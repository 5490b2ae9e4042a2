"""Selection of the morally acceptable policies by hypothetical retrospection."""

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

from loguru import logger

from moralplan.models.domain import SolverConfig
from moralplan.models.mmmdp import Mmmdp
from moralplan.models.policy import Policy, policy_worth
from moralplan.models.worth import WorthVector
from moralplan.retrospection._arguments import Argument, Attack, AttackIndex, non_acceptability
from moralplan.retrospection._histories import History, extract_histories


@dataclass(frozen=True, eq=False)
class MehrResult:
    """The argumentation over a policy set and the selection it implies.

    Policy ids index :attr:`policies`, which is in canonical order. Argument
    ids index :attr:`arguments`.
    """

    model: Mmmdp
    policies: tuple[Policy, ...]
    histories: tuple[tuple[History, ...], ...]
    roots: tuple[WorthVector, ...]
    arguments: tuple[Argument, ...]
    non_acceptability: dict[int, float]
    selected: frozenset[int]
    ssp_selected: int | None
    index: AttackIndex = field(repr=False)

    @cached_property
    def attacks(self) -> tuple[Attack, ...]:
        """Every unblocked attack, ordered by theory, attacker and target."""
        found = [
            Attack(theory=m, attacker=attacker, target=target)
            for target, arg in enumerate(self.arguments)
            for m, attacker in self.index.attackers(arg)
        ]
        return tuple(sorted(found))

    @property
    def selected_policies(self) -> list[Policy]:
        """The policies in :attr:`selected`, in id order."""
        return [self.policies[p] for p in sorted(self.selected)]


def select(model: Mmmdp, policies: Iterable[Policy], config: SolverConfig | None = None) -> MehrResult:
    """Score every policy's non-acceptability and select the minimisers.

    For shortest-path problems ``ssp_selected`` is the cheapest selected
    policy; otherwise it is the lowest selected id. Ties go to the lowest id.

    Raises:
        ValueError: If *policies* is empty.
        CapacityError: If a policy has more than ``max_histories`` histories.
    """
    config = config or SolverConfig()
    ordered = tuple(sorted(set(policies)))
    if not ordered:
        raise ValueError("select needs at least one policy")  # noqa: TRY003
    worths = [policy_worth(model, policy) for policy in ordered]
    roots = tuple(w.vector(0, model.s0) for w in worths)
    histories = tuple(tuple(extract_histories(model, policy, config)) for policy in ordered)
    index = AttackIndex(model, histories, roots)
    arguments = tuple(Argument(policy=p, history=h) for p, group in enumerate(histories) for h in range(len(group)))

    scores: dict[int, float] = {}
    for p, group in enumerate(histories):
        counts = []
        for h in range(len(group)):
            per_theory = index.counts(Argument(policy=p, history=h))
            counts.append(sum(min(n, 1) for n in per_theory) if config.per_theory_binary else sum(per_theory))
        scores[p] = non_acceptability(group, counts)
    best = min(scores.values())
    selected = frozenset(p for p, score in scores.items() if score == best)

    if model.ssp is not None:
        cost = model.ssp.cost_consideration
        ssp_selected = min(selected, key=lambda p: (float(roots[p][cost]), p))
    else:
        ssp_selected = min(selected)
    logger.debug(f"Scored {len(ordered)} policies over {len(arguments)} arguments; best {best!r}")
    return MehrResult(
        model=model,
        policies=ordered,
        histories=histories,
        roots=roots,
        arguments=arguments,
        non_acceptability=scores,
        selected=selected,
        ssp_selected=ssp_selected,
        index=index,
    )
