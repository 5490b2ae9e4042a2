"""Computation for the ``solve`` command: load, search, select.

This module performs no rendering; see :mod:`moralplan.commands.solve._render`.
"""

import dataclasses
import time
from dataclasses import dataclass
from pathlib import Path

from loguru import logger

from moralplan.models.domain import DomainFile, SolverConfig
from moralplan.retrospection import MehrResult, select
from moralplan.solver import MPlanResult, mplan


@dataclass(kw_only=True)
class SolveOptions:
    """Command-line overrides of the domain file's ``solver`` section.

    ``None`` keeps the value from the file (or the built-in default).
    """

    vector_cap: int | None = None
    """Override for :attr:`SolverConfig.vector_cap`."""

    max_policies: int | None = None
    """Override for :attr:`SolverConfig.max_policies`."""

    max_histories: int | None = None
    """Override for :attr:`SolverConfig.max_histories`."""

    per_theory_binary: bool | None = None
    """Override for :attr:`SolverConfig.per_theory_binary`."""

    def apply(self, config: SolverConfig) -> SolverConfig:
        """Return *config* with every non-``None`` override applied.

        Raises:
            ValueError: If a numeric override is not positive.
        """
        changes = {k: v for k, v in dataclasses.asdict(self).items() if v is not None}
        for key, value in changes.items():
            if not isinstance(value, bool) and value < 1:
                raise ValueError(f"--{key.replace('_', '-')} must be positive, got {value}")  # noqa: TRY003
        return dataclasses.replace(config, **changes)


@dataclass(frozen=True)
class Solved:
    """Everything one solve produced."""

    domain: DomainFile
    config: SolverConfig
    search: MPlanResult
    mehr: MehrResult | None
    wall_time: float


def load_domain(path: Path) -> DomainFile:
    """Read and validate the domain file at *path*.

    Raises:
        FileNotFoundError: If *path* does not exist.
        DomainError: If the file does not describe a valid problem.
    """
    logger.info(f"Parsing {path}")
    domain = DomainFile.from_yaml(path)
    model = domain.model
    logger.info(
        f"{len(model.states)} states, {len(model.actions)} actions, horizon {model.horizon}, "
        f"{len(model.considerations)} considerations, {len(model.theories)} theories"
    )
    return domain


def solve_domain(domain: DomainFile, options: SolveOptions | None = None) -> Solved:
    """Search for undominated policies and, when there are any, select among them.

    Raises:
        CapacityError: If a configured limit is exceeded.
    """
    config = (options or SolveOptions()).apply(domain.solver)
    started = time.perf_counter()
    logger.info("Solving")
    search = mplan(domain.model, domain.heuristic, config)
    mehr = None
    if search.policies:
        logger.info(f"Selecting among {len(search.policies)} policies")
        mehr = select(domain.model, search.policies, config)
    return Solved(domain=domain, config=config, search=search, mehr=mehr, wall_time=time.perf_counter() - started)
