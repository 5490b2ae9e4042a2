"""Tests for the brute-force oracle and its agreement with the solver."""

import dataclasses

import numpy as np
import pytest

from moralplan.commands.oracle_check import CheckStatus, check_model, same_front
from moralplan.models import CapacityError, Consideration, ConsiderationKind, SspExtension, Transition, validate
from moralplan.oracle import (
    EnumerationBound,
    enumerate_policies,
    full_table_count,
    oracle_candidates,
    oracle_pareto_front,
    oracle_select,
    random_model,
)


# Keeps each randomised comparison within the per-test timeout.
_CHECK_BOUND = EnumerationBound(max_policy_count=3000)


def _as_shortest_path(model, rng):
    """Turn a few non-initial states into absorbing goals and charge one per step elsewhere."""
    n_states, n_actions = len(model.states), len(model.actions)
    goals = frozenset(s for s in range(1, n_states) if rng.random() < 0.5) or frozenset({n_states - 1})
    transitions = tuple(t for t in model.transitions if t.source not in goals) + tuple(
        Transition(source=g, action=a, target=g, prob=1.0) for g in sorted(goals) for a in range(n_actions)
    )
    cost = Consideration(
        name="cost",
        kind=ConsiderationKind.COST,
        default=1.0,
        judgements={(g, a, g): 0.0 for g in goals for a in range(n_actions)},
    )
    return dataclasses.replace(
        model,
        transitions=transitions,
        considerations=(*model.considerations, cost),
        ssp=SspExtension(
            goals=goals,
            budget=float(rng.integers(1, model.horizon + 1)),
            cost_consideration=len(model.considerations),
        ),
    )


def _meets(model):
    """Whether two distinct states lead to the same state-time."""
    layer = {model.s0}
    for _step in range(model.horizon):
        parents: dict[int, set[int]] = {}
        for s in layer:
            for a in model.applicable(s):
                for s2, _ in model.successors(s, a):
                    parents.setdefault(s2, set()).add(s)
        if any(len(p) > 1 for p in parents.values()):
            return True
        layer = set(parents)
    return False

class TestEnumeration:
    """Tests for policy enumeration."""

    def test_full_table_count(self, small):
        """Two actions over six states and two steps give 2^12 full tables."""
        assert full_table_count(small.model) == 4096

    def test_one_policy_per_behaviour(self, small):
        """Only three behaviours are distinguishable from home."""
        policies = enumerate_policies(small.model)
        assert len(policies) == 3
        assert policies == sorted(policies)
        assert [p.action(0, 0) for p in policies] == [0, 0, 1]

    def test_bound(self, small):
        """Exceeding the policy bound raises CapacityError."""
        with pytest.raises(CapacityError) as excinfo:
            enumerate_policies(small.model, EnumerationBound(max_policy_count=2))
        assert excinfo.value.limit == 2


class TestFronts:
    """Tests for the oracle's root front and candidates."""

    def test_law_front(self, small_law):
        """Stealing and waiting are both undominated under the law."""
        front = sorted(oracle_pareto_front(small_law.model))
        assert len(front) == 2
        assert front[0][0] == pytest.approx(-8.4)
        assert front[0][1] is False
        assert front[1] == (-5.0, True)

    def test_utility_front(self, small):
        """Utility alone keeps only stealing."""
        assert oracle_pareto_front(small.model) == {(-5.0,)}

    def test_candidates(self, small_law):
        """Waiting then stealing is dominated by stealing outright."""
        candidates = oracle_candidates(small_law.model)
        policies = enumerate_policies(small_law.model)
        assert candidates == [policies[0], policies[2]]

    def test_oracle_select(self, small):
        """With utility only the oracle selects stealing."""
        result = oracle_select(small.model)
        assert [p.action(0, 0) for p in result.selected_policies] == [1]

    def test_same_front_tolerates_rounding(self, small):
        """Fronts match within each consideration's tolerance."""
        assert same_front(small.model, [(-5.0 + 1e-9,)], {(-5.0,)})
        assert not same_front(small.model, [(-5.1,)], {(-5.0,)})
        assert same_front(small.model, [], set())


class TestRandomModels:
    """The generator produces valid problems."""

    @pytest.mark.parametrize("seed", range(50))
    def test_random_model_is_valid(self, seed):
        """Random problems pass validation."""
        assert validate(random_model(np.random.default_rng(seed))) == []

    def test_seeded(self):
        """The same seed gives the same problem."""
        assert random_model(np.random.default_rng(7)) == random_model(np.random.default_rng(7))

    def test_branches_meet(self):
        """Some problems reach one state-time from two different states."""
        assert any(_meets(random_model(np.random.default_rng(seed))) for seed in range(50))

    def test_inner_self_loops(self):
        """Some states loop on themselves while also moving elsewhere."""

        def inner_loop(model):
            return any(
                any(s2 == s for s2, _ in model.successors(s, a)) and len(model.successors(s, a)) > 1
                for s in range(len(model.states))
                for a in model.applicable(s)
            )

        assert any(inner_loop(random_model(np.random.default_rng(seed))) for seed in range(50))


@pytest.mark.property
class TestSolverAgreesWithOracle:
    """MPlan and selection agree with exhaustive enumeration."""

    def test_small_domains(self, small, small_law):
        """Both fixture problems pass."""
        for name, domain in (("small", small), ("small_law", small_law)):
            assert check_model(name, domain.model, domain.heuristic).status is CheckStatus.PASS

    @pytest.mark.parametrize("seed", range(200))
    def test_random(self, seed):
        """Random problems give the same front and the same selection."""
        model = random_model(np.random.default_rng(seed))
        outcome = check_model(f"random[{seed}]", model, bound=_CHECK_BOUND)
        assert outcome.status is not CheckStatus.FAIL, outcome.detail

    @pytest.mark.parametrize("seed", range(60))
    def test_random_shortest_path(self, seed):
        """Random problems with goals and a budget agree as well."""
        rng = np.random.default_rng(10_000 + seed)
        model = _as_shortest_path(random_model(rng), rng)
        assert validate(model) == []
        outcome = check_model(f"ssp[{seed}]", model, bound=_CHECK_BOUND)
        assert outcome.status is not CheckStatus.FAIL, outcome.detail

    def test_skipped_when_bound_exceeded(self, small):
        """An enumeration over the bound is skipped, not failed."""
        outcome = check_model("small", small.model, bound=EnumerationBound(max_policy_count=1))
        assert outcome.status is CheckStatus.SKIPPED
