"""Command for cross-checking the solver against exhaustive enumeration.

The solver's root front and selected set are compared with the oracle's on
one domain file or on seeded random instances. Instances whose enumeration
exceeds the bound are skipped rather than failed.
"""

import dataclasses
from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

import numpy as np
from loguru import logger

from moralplan.models._base import CapacityError
from moralplan.models.domain import DomainFile, Heuristic, SolverConfig
from moralplan.models.mmmdp import Mmmdp
from moralplan.models.worth import WorthVector
from moralplan.oracle import EnumerationBound, oracle_pareto_front, oracle_select, random_model
from moralplan.retrospection import select
from moralplan.solver import converged, mplan


class CheckStatus(StrEnum):
    """Outcome of one comparison."""

    PASS = "pass"  # noqa: S105
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckResult:
    """Outcome for one instance, with a human-readable reason when not passing."""

    name: str
    status: CheckStatus
    detail: str = ""


def same_front(model: Mmmdp, found: list[WorthVector], expected: set[WorthVector]) -> bool:
    """Whether two root fronts match vector for vector under each consideration's ≈."""
    if not found and not expected:
        return True
    root = (model.s0, 0)
    return converged({root: set(found)}, {root: expected}, model.considerations)


def check_model(
    name: str,
    model: Mmmdp,
    heuristic: Heuristic | None = None,
    config: SolverConfig | None = None,
    bound: EnumerationBound | None = None,
) -> CheckResult:
    """Compare the solver with the oracle on *model*.

    The solver may return as many policies as the oracle may enumerate.

    Raises:
        CapacityError: If a solver backup exceeds ``vector_cap``.
    """
    bound = bound or EnumerationBound()
    config = config or SolverConfig()
    config = dataclasses.replace(config, max_policies=max(config.max_policies, bound.max_policy_count))
    try:
        expected_front = oracle_pareto_front(model, bound)
        wanted = set(oracle_select(model, bound, config).selected_policies) if expected_front else set()
    except CapacityError as exc:
        logger.warning(f"{name}: skipped, {exc}")
        return CheckResult(name=name, status=CheckStatus.SKIPPED, detail=str(exc))

    result = mplan(model, heuristic, config)
    if not same_front(model, result.root_vectors, expected_front):
        detail = f"root fronts differ: solver {sorted(result.root_vectors)} vs oracle {sorted(expected_front)}"
        return CheckResult(name=name, status=CheckStatus.FAIL, detail=detail)

    found = set(select(model, result.policies, config).selected_policies) if result.policies else set()
    if found != wanted:
        detail = f"selected sets differ: solver has {len(found)} policies, oracle has {len(wanted)}"
        return CheckResult(name=name, status=CheckStatus.FAIL, detail=detail)
    return CheckResult(name=name, status=CheckStatus.PASS)


def _instances(domain_path: Path | None, count: int, seed: int) -> Iterator[tuple[str, Mmmdp, Heuristic | None]]:
    if domain_path is not None:
        domain = DomainFile.from_yaml(domain_path)
        yield domain_path.name, domain.model, domain.heuristic
    rng = np.random.default_rng(seed)
    for i in range(count):
        yield f"random[{i}]", random_model(rng), None


def oracle_check(
    domain_path: Path | None = None,
    *,
    random: int = 0,
    seed: int = 0,
    bound: EnumerationBound | None = None,
) -> list[CheckResult]:
    """Run the solver and the oracle on each instance and report the differences.

    Args:
        domain_path: A ``.domain.yaml`` file to check.
        random: Number of seeded random instances to check as well.
        seed: Seed of the random instance generator.
        bound: Enumeration limit of the oracle.

    Returns:
        One result per instance.

    Raises:
        ValueError: If neither a file nor random instances were requested.
        RuntimeError: If any instance fails.
    """
    if domain_path is None and random < 1:
        raise ValueError("Give a domain file or --random N with N >= 1")  # noqa: TRY003

    results = []
    for name, model, heuristic in _instances(domain_path, random, seed):
        outcome = check_model(name, model, heuristic, bound=bound)
        if outcome.status is CheckStatus.FAIL:
            logger.error(f"{name}: {outcome.detail}")
        else:
            logger.debug(f"{name}: {outcome.status}")
        results.append(outcome)

    counts = {status: sum(r.status is status for r in results) for status in CheckStatus}
    print(f"passed {counts[CheckStatus.PASS]}, failed {counts[CheckStatus.FAIL]}, skipped {counts[CheckStatus.SKIPPED]}")
    if counts[CheckStatus.FAIL]:
        err_msg = f"{counts[CheckStatus.FAIL]} of {len(results)} instances differ from the oracle"
        logger.error(err_msg)
        raise RuntimeError(err_msg)
    logger.success(f"Solver matches the oracle on {counts[CheckStatus.PASS]} instances")
    return results
