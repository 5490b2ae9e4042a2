"""Node backup: combine successor vectors into the undominated vectors of one state-time."""

import itertools
import math

from moralplan.models._base import CapacityError
from moralplan.models.domain import SolverConfig
from moralplan.models.mmmdp import Mmmdp, StateTime
from moralplan.models.worth import aggregate
from moralplan.solver._workspace import Binding, Entry, Producer, SolverWorkspace, prune_entries


def _combine(
    model: Mmmdp,
    s: int,
    a: int,
    outcomes: tuple[tuple[int, float], ...],
    choice: tuple[Entry, ...],
    binding: Binding,
) -> Entry:
    probs = [p for _, p in outcomes]
    worth = tuple(
        aggregate(
            c,
            [entry.worth[i] for entry in choice],
            [c.judgement(s, a, s2) for s2, _ in outcomes],
            probs,
        )
        for i, c in enumerate(model.considerations)
    )
    return Entry(worth, any(entry.proper for entry in choice), binding)


def _within_budget(model: Mmmdp, entry: Entry) -> bool:
    ssp = model.ssp
    if ssp is None:
        return True
    return entry.proper and float(entry.worth[ssp.cost_consideration]) <= ssp.budget


def backup(
    model: Mmmdp, workspace: SolverWorkspace, node: StateTime, config: SolverConfig | None = None
) -> tuple[Entry, ...]:
    """Recompute the undominated entries of *node* from its successors' entries.

    Every combination of successor entries is aggregated per action and pruned
    per action, then across actions. Combinations whose successors rely on
    different entries at a shared state-time are not deterministic policies and
    are never formed. At the root of a shortest-path problem, improper and
    over-budget entries are discarded first.

    Args:
        model: The problem being solved.
        workspace: Search state; ``vecW``, ``alpha`` and ``producers`` of *node* are replaced.
        node: The state-time to back up.
        config: Solver limits; ``vector_cap`` bounds the combinations enumerated.

    Returns:
        The new entries stored at *node*.

    Raises:
        CapacityError: If the combination count exceeds ``vector_cap``.
    """
    config = config or SolverConfig()
    s, t = node
    considerations = model.considerations
    at_root = node == workspace.root
    survivors: dict[Entry, list[Producer]] = {}
    combinations = 0
    for a in model.applicable(s):
        outcomes = model.successors(s, a)
        children = [(s2, t + 1) for s2, _ in outcomes]
        options = [workspace.entries(child) for child in children]
        combinations += math.prod(len(o) for o in options)
        if combinations > config.vector_cap:
            raise CapacityError(
                f"backup of ({model.states[s]}, {t}) needs more than {config.vector_cap} vector combinations",
                limit=config.vector_cap,
                count=combinations,
            )
        produced: dict[Entry, list[Producer]] = {}
        for choice in itertools.product(*options):
            binding = workspace.bind(node, zip(children, choice, strict=True))
            if binding is None:
                continue
            entry = _combine(model, s, a, outcomes, choice, binding)
            if at_root and not _within_budget(model, entry):
                continue
            produced.setdefault(entry, []).append(Producer(action=a, choice=choice))
        for entry in prune_entries(list(produced), considerations, interior=not at_root):
            survivors.setdefault(entry, []).extend(produced[entry])
    kept = prune_entries(list(survivors), considerations, interior=not at_root)
    workspace.vecW[node] = tuple(kept)
    workspace.producers[node] = {entry: tuple(survivors[entry]) for entry in kept}
    workspace.alpha[node] = frozenset(p.action for entry in kept for p in survivors[entry])
    return workspace.vecW[node]
