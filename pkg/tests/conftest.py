"""Shared pytest fixtures for the tests package.

Security Notes:
- S101 (assert usage): Asserts are appropriate in test code for validating conditions.
"""

import copy
from pathlib import Path
from typing import Any

import pytest
import yaml

from moralplan.models import DomainFile

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def loguru_messages():
    """Capture loguru log messages emitted during the test.

    loguru writes to the stderr reference bound at import time, which neither
    ``capsys`` nor ``capfd`` reliably intercept under ``CliRunner``.

    Yields:
        A list that accumulates each log record's message text.
    """
    from loguru import logger

    messages: list[str] = []
    sink_id = logger.add(messages.append, level="TRACE", format="{message}")
    try:
        yield messages
    finally:
        logger.remove(sink_id)


@pytest.fixture
def small_path() -> Path:
    """Path of the utility-only Lost Insulin domain."""
    return FIXTURES / "insulin_small.domain.yaml"


@pytest.fixture
def small_law_path() -> Path:
    """Path of the Lost Insulin domain with the no-stealing law."""
    return FIXTURES / "insulin_small_law.domain.yaml"


@pytest.fixture
def expanded_path() -> Path:
    """Path of the twenty-step Lost Insulin shortest-path domain."""
    return FIXTURES / "insulin_expanded.domain.yaml"


@pytest.fixture
def small(small_path) -> DomainFile:
    """The utility-only Lost Insulin domain."""
    return DomainFile.from_yaml(small_path)


@pytest.fixture
def small_law(small_law_path) -> DomainFile:
    """Lost Insulin with utility and the no-stealing law at equal rank."""
    return DomainFile.from_yaml(small_law_path)


@pytest.fixture
def expanded_config(expanded_path) -> dict[str, Any]:
    """Raw configuration of the expanded domain, safe to modify."""
    return yaml.safe_load(expanded_path.read_text(encoding="utf-8"))


def _compensation_law() -> dict[str, Any]:
    return {
        "name": "compensation",
        "kind": "absolute",
        "judgements": [
            {"from": found, "action": "steal", "to": "fleeing", "value": True}
            for found in ("found_none", "found_uncovered")
        ],
    }


@pytest.fixture
def expanded_variant(expanded_config):
    """Factory for variants of the expanded domain.

    ``ranks`` maps consideration names to theory ranks and replaces the
    theories. ``budget=False`` drops goals, budget and the cost consideration.
    ``compensation=True`` adds an absolute law violated by stealing insulin
    that was not paid for.
    """

    def build(ranks: dict[str, int], *, budget: bool = False, compensation: bool = False) -> DomainFile:
        config = copy.deepcopy(expanded_config)
        if not budget:
            config.pop("goals")
            config.pop("budget")
            config["considerations"] = [c for c in config["considerations"] if c["kind"] != "cost"]
        if compensation:
            config["considerations"].append(_compensation_law())
        config["theories"] = [{"name": name, "consideration": name, "rank": rank} for name, rank in ranks.items()]
        return DomainFile.from_config(config)

    return build
