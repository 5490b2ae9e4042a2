"""Tests for the domain file format.

This module verifies that DomainFile parses and validates ``.domain.yaml``
files, reports the offending field path on failure, and serializes back to
text that parses to an equal domain.
"""

from fractions import Fraction

import numpy as np
import pytest
import yaml
from hypothesis import given, settings
from hypothesis import strategies as st

from moralplan.models import DomainError, DomainFile, SolverConfig, default_heuristic, parse, serialize
from moralplan.models._base import YamlSerializable
from moralplan.oracle import random_model


class TestParse:
    """Tests for parsing valid files."""

    def test_small_fixture(self, small_path):
        """The small fixture parses into a 6-state, 2-action problem."""
        domain = parse(small_path.read_bytes())
        assert domain.model.states[0] == "home"
        assert domain.model.actions == ("wait", "steal")
        assert domain.model.horizon == 2
        assert domain.solver == SolverConfig()

    def test_expanded_fixture_is_a_shortest_path_problem(self, expanded_path):
        """Goals and a budget make the expanded fixture a shortest-path problem."""
        model = DomainFile.from_yaml(expanded_path).model
        assert model.is_ssp
        assert model.ssp.budget == 18.5
        assert {model.states[g] for g in model.ssp.goals} == {"safe", "carla_dead"}
        assert model.considerations[model.ssp.cost_consideration].name == "time"

    def test_file_heuristics_override_defaults(self, expanded_path):
        """File estimates apply at every time and other states keep the default."""
        domain = DomainFile.from_yaml(expanded_path)
        model = domain.model
        home, fleeing, safe = (model.state_index(n) for n in ("home", "fleeing", "safe"))
        assert domain.heuristic.estimate(0, home, 7) == -0.4
        assert domain.heuristic.estimate(1, fleeing, 3) == -0.1
        assert domain.heuristic.estimate(0, safe, 3) == 0.0

    def test_timed_heuristic_wins_over_untimed(self, small_path):
        """An entry for a specific time is preferred to the all-times entry."""
        config = yaml.safe_load(small_path.read_text())
        config["heuristics"] = {"utility": [{"state": "home", "value": -1.0}, {"state": "home", "time": 1, "value": -2.0}]}
        heuristic = DomainFile.from_config(config).heuristic
        assert heuristic.estimate(0, 0, 0) == -1.0
        assert heuristic.estimate(0, 0, 1) == -2.0

    def test_default_heuristic(self, small_law):
        """The fallback estimates zero utility and no violation."""
        heuristic = default_heuristic(small_law.model)
        assert heuristic.vector(0, 0) == (0.0, False)

    @pytest.mark.parametrize(("rank", "expected"), [(1, Fraction(1)), (0.5, Fraction(1, 2)), ("2/3", Fraction(2, 3))])
    def test_rank_forms(self, small_path, rank, expected):
        """Ranks may be integers, decimals or fraction strings."""
        config = yaml.safe_load(small_path.read_text())
        config["theories"][0]["rank"] = rank
        assert DomainFile.from_config(config).model.theories[0].rank == expected

    def test_solver_section(self, small_path):
        """The solver section overrides the defaults it names."""
        config = yaml.safe_load(small_path.read_text())
        config["solver"] = {"max_policies": 5, "per_theory_binary": True}
        solver = DomainFile.from_config(config).solver
        assert solver == SolverConfig(max_policies=5, per_theory_binary=True)
        assert solver.config == {"max_policies": 5, "per_theory_binary": True}

    def test_protocol(self):
        """DomainFile and SolverConfig satisfy YamlSerializable."""
        assert isinstance(SolverConfig(), YamlSerializable)


class TestParseErrors:
    """Every rejection names the offending field."""

    @pytest.fixture
    def config(self, small_path):
        """Editable configuration of the small fixture."""
        return yaml.safe_load(small_path.read_text())

    def test_unknown_top_level_field(self, config):
        """Unknown keys are rejected."""
        config["reward"] = 1
        with pytest.raises(DomainError, match="unknown field 'reward'"):
            DomainFile.from_config(config)

    def test_unknown_nested_field(self, config):
        """Unknown keys inside records are rejected with their path."""
        config["transitions"][2]["weight"] = 1
        with pytest.raises(DomainError) as info:
            DomainFile.from_config(config)
        assert info.value.path == "transitions[2]"

    def test_unknown_state_name(self, config):
        """References to undeclared states are rejected."""
        config["transitions"][0]["to"] = "hospital"
        with pytest.raises(DomainError, match="unknown state 'hospital'") as info:
            DomainFile.from_config(config)
        assert info.value.path == "transitions[0].to"

    def test_probability_out_of_range(self, small):
        """A hand-edited probability of 1.2 is a range error."""
        config = yaml.safe_load(serialize(small.model))
        config["transitions"][0]["prob"] = 1.2
        with pytest.raises(DomainError, match="outside") as info:
            DomainFile.from_config(config)
        assert info.value.path == "transitions[0].prob"

    def test_missing_outgoing_transitions(self, config):
        """A referenced state without rows is an invariant violation."""
        config["transitions"] = [t for t in config["transitions"] if t["from"] != "hal_collapsed"]
        with pytest.raises(DomainError) as info:
            DomainFile.from_config(config)
        assert "state hal_collapsed has no outgoing transitions" in info.value.violations

    def test_wrong_worth_tag(self, config):
        """A boolean judgement for a utility consideration is rejected."""
        config["considerations"][0]["judgements"][0]["value"] = True
        with pytest.raises(DomainError, match="expected a number"):
            DomainFile.from_config(config)

    def test_unknown_kind(self, config):
        """Only the built-in kinds are accepted."""
        config["considerations"][0]["kind"] = "virtue"
        with pytest.raises(DomainError, match="unknown kind 'virtue'"):
            DomainFile.from_config(config)

    def test_budget_without_goals(self, config):
        """Goals and budget come as a pair."""
        config["budget"] = 3.0
        with pytest.raises(DomainError, match="together"):
            DomainFile.from_config(config)

    def test_schema_version(self, config):
        """Unsupported schema versions are rejected."""
        config["schema_version"] = 2
        with pytest.raises(DomainError, match="schema version"):
            DomainFile.from_config(config)

    def test_syntax_error_reports_line(self):
        """YAML syntax errors carry the line and column."""
        with pytest.raises(DomainError, match="line 2"):
            parse("schema_version: 1\nstates: a: b\n")

    def test_empty_document(self):
        """An empty document is rejected."""
        with pytest.raises(DomainError, match="empty"):
            parse(b"")

    def test_missing_file(self, tmp_path):
        """A missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            DomainFile.from_yaml(tmp_path / "absent.domain.yaml")


class TestSerialize:
    """Tests for serialize and round-trips."""

    def test_small_round_trip(self, small):
        """The small fixture survives a round-trip unchanged."""
        again = parse(serialize(small.model, small.heuristic))
        assert again == small

    def test_expanded_round_trip_keeps_everything(self, expanded_path, tmp_path):
        """Heuristics, budget, defaults and ranks survive writing and reading a file."""
        domain = DomainFile.from_yaml(expanded_path)
        out = tmp_path / "nested" / "copy.domain.yaml"
        domain.to_yaml(out)
        assert DomainFile.from_yaml(out) == domain

    def test_fraction_ranks_are_written_as_strings(self, small_path):
        """Non-integral ranks serialize as p/q strings."""
        config = yaml.safe_load(small_path.read_text())
        config["theories"][0]["rank"] = 0.5
        domain = DomainFile.from_config(config)
        assert domain.config["theories"][0]["rank"] == "1/2"

    def test_default_solver_is_omitted(self, small):
        """A default solver section is not written."""
        assert "solver" not in yaml.safe_load(serialize(small.model))

    @pytest.mark.property
    @settings(max_examples=500, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_random_round_trip(self, seed):
        """Generated problems parse back to equal models."""
        model = random_model(np.random.default_rng(seed))
        assert parse(serialize(model)).model == model
