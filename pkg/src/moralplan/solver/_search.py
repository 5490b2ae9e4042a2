"""The MPlan outer loop: alternate sub-graph backups and fringe expansion until stable."""

from dataclasses import dataclass, field

from loguru import logger

from moralplan.models.domain import Heuristic, SolverConfig, default_heuristic
from moralplan.models.mmmdp import Mmmdp
from moralplan.models.policy import Policy
from moralplan.models.worth import WorthVector
from moralplan.solver._backup import backup
from moralplan.solver._extract import extract_policies
from moralplan.solver._workspace import SolverWorkspace, converged


@dataclass
class SolveStats:
    """Counters of one solve."""

    expansions: int = 0
    """State-time nodes moved from the fringe to the interior."""

    backups: int = 0
    """Node backups performed."""

    iterations: int = 0
    """Outer loops run."""


@dataclass(frozen=True)
class MPlanResult:
    """Policies found by :func:`mplan` with the stats and final workspace."""

    policies: tuple[Policy, ...]
    stats: SolveStats
    workspace: SolverWorkspace = field(repr=False)

    @property
    def root_vectors(self) -> list[WorthVector]:
        """Undominated worth vectors stored at ``(s0, 0)``."""
        return [entry.worth for entry in self.workspace.vecW.get(self.workspace.root, ())]


def mplan(model: Mmmdp, heuristic: Heuristic | None = None, config: SolverConfig | None = None) -> MPlanResult:
    """Find the Pareto-undominated non-stationary policies of *model*.

    Each iteration backs up every sub-graph node reachable through the current
    ``alpha`` in descending time order, then expands every fringe node still
    reachable. The loop stops once nothing was expanded, the reachable set did
    not grow and the vector table is ≈-unchanged. For shortest-path problems
    only proper policies within the budget are returned; the result is empty
    when none exists.

    Args:
        model: A valid problem.
        heuristic: Seeds for unexplored state-times; :func:`default_heuristic` when omitted.
        config: Solver limits.

    Returns:
        The policies, in canonical order, with solve statistics.

    Raises:
        CapacityError: If a backup or extraction exceeds its configured limit.
    """
    heuristic = heuristic or default_heuristic(model)
    config = config or SolverConfig()
    workspace = SolverWorkspace.seed(model, heuristic)
    stats = SolveStats()
    while True:
        stats.iterations += 1
        previous_table, previous_flags = workspace.table(), workspace.flags()
        frontier = workspace.reachable()
        for node in sorted(frontier, key=lambda n: (-n[1], n[0])):
            backup(model, workspace, node, config)
            stats.backups += 1
        reachable = workspace.reachable()
        to_expand = sorted((n for n in reachable if n in workspace.fringe), key=lambda n: (n[1], n[0]))
        for node in to_expand:
            workspace.expand(node)
            stats.expansions += 1
        logger.debug(
            f"Iteration {stats.iterations}: backed up {len(frontier)}, expanded {len(to_expand)}, "
            f"interior {len(workspace.interior)}"
        )
        if (
            not to_expand
            and reachable <= frontier
            and workspace.flags() == previous_flags
            and converged(workspace.table(), previous_table, model.considerations)
        ):
            break
    policies = extract_policies(workspace, model, config)
    return MPlanResult(policies=tuple(policies), stats=stats, workspace=workspace)
