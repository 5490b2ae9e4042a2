"""Policy extraction from a converged workspace by walking recorded producers."""

from collections.abc import Iterator

from loguru import logger

from moralplan.models._base import CapacityError
from moralplan.models.domain import SolverConfig
from moralplan.models.mmmdp import Mmmdp, StateTime
from moralplan.models.policy import Policy
from moralplan.solver._workspace import Entry, SolverWorkspace

_Demand = tuple[StateTime, Entry]


def _realise(workspace: SolverWorkspace, model: Mmmdp, root_entry: Entry) -> Iterator[dict[StateTime, int]]:
    """Yield one action map per producer combination realising *root_entry*.

    One assignment is shared across the walk: a state-time reached by several
    branches is settled once. Entry bindings guarantee the branches agree there.
    """
    horizon = model.horizon
    start: tuple[tuple[_Demand, ...], dict[StateTime, Entry], dict[StateTime, int]] = (
        ((workspace.root, root_entry),),
        {},
        {},
    )
    stack = [start]
    while stack:
        pending, chosen, actions = stack.pop()
        branched = False
        while pending:
            (node, entry), pending = pending[0], pending[1:]
            if node[1] >= horizon:
                continue
            if node in chosen:
                if chosen[node] != entry:
                    raise RuntimeError(  # noqa: TRY003
                        f"branches demand different entries at {node}; the stored bindings are inconsistent"
                    )
                continue
            try:
                producers = workspace.producers[node][entry]
            except KeyError:
                raise RuntimeError(f"no producer recorded for {node}; the workspace has not converged") from None  # noqa: TRY003
            s, t = node
            for producer in reversed(producers):
                demands = tuple(
                    ((s2, t + 1), e)
                    for (s2, _), e in zip(model.successors(s, producer.action), producer.choice, strict=True)
                )
                stack.append((pending + demands, {**chosen, node: entry}, {**actions, node: producer.action}))
            branched = True
            break
        if not branched:
            yield actions


def extract_policies(
    workspace: SolverWorkspace, model: Mmmdp, config: SolverConfig | None = None
) -> list[Policy]:
    """Every policy realising a stored root entry, deduplicated and canonically ordered.

    Raises:
        CapacityError: If more than ``max_policies`` distinct policies exist.
        RuntimeError: If the workspace lacks producers along a chosen path.
    """
    config = config or SolverConfig()
    found: dict[Policy, None] = {}
    for root_entry in workspace.vecW.get(workspace.root, ()):
        for actions in _realise(workspace, model, root_entry):
            found.setdefault(Policy.from_mapping(model, actions), None)
            if len(found) > config.max_policies:
                raise CapacityError(
                    f"more than {config.max_policies} undominated policies (found {len(found)} so far)",
                    limit=config.max_policies,
                    count=len(found),
                )
    logger.debug(f"Extracted {len(found)} policies")
    return sorted(found)
