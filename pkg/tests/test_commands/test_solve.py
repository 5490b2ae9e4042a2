"""Tests for the solve command.

This module verifies that `solve` prints the candidate table and the selected
policy, writes a report that reads back, and honours the option overrides.
"""

import dataclasses

import pytest

from moralplan.commands.solve import RunReport, SolveOptions, build_report, load_domain, render_table, solve, solve_domain
from moralplan.models import CapacityError, SolverConfig


class TestSolveOptions:
    """Tests for SolveOptions.apply."""

    def test_none_keeps_file_values(self):
        """Unset options leave the configuration untouched."""
        config = SolverConfig(vector_cap=50)
        assert SolveOptions().apply(config) == config

    def test_overrides(self):
        """Set options replace the file values."""
        config = SolveOptions(max_policies=3, per_theory_binary=True).apply(SolverConfig())
        assert config.max_policies == 3
        assert config.per_theory_binary is True
        assert config.vector_cap == SolverConfig().vector_cap

    @pytest.mark.parametrize("key", ["vector_cap", "max_policies", "max_histories"])
    def test_non_positive_rejected(self, key):
        """Zero limits are refused with the flag name."""
        with pytest.raises(ValueError, match=f"--{key.replace('_', '-')} must be positive"):
            SolveOptions(**{key: 0}).apply(SolverConfig())


class TestSolveDomain:
    """Tests for the computation behind solve."""

    def test_law_domain(self, small_law_path):
        """The law problem yields waiting and stealing, and selects waiting."""
        solved = solve_domain(load_domain(small_law_path))
        assert len(solved.search.policies) == 2
        assert solved.mehr is not None
        assert solved.mehr.selected == frozenset({0})
        assert solved.wall_time >= 0.0

    def test_capacity_is_raised(self, small_law_path):
        """An extraction limit below the candidate count raises CapacityError."""
        with pytest.raises(CapacityError):
            solve_domain(load_domain(small_law_path), SolveOptions(max_policies=1))

    def test_no_policy_within_budget(self, expanded_variant):
        """An unreachable budget leaves nothing to select."""
        domain = expanded_variant({"hal": 0, "carla": 0}, budget=True)
        model = dataclasses.replace(domain.model, ssp=dataclasses.replace(domain.model.ssp, budget=1.0))
        domain = dataclasses.replace(domain, model=model)
        solved = solve_domain(domain)
        assert solved.search.policies == ()
        assert solved.mehr is None


class TestReport:
    """Tests for the report and its rendering."""

    def test_report_fields(self, small_law_path):
        """The report lists both candidates with their scores and the search statistics."""
        report = build_report(solve_domain(load_domain(small_law_path)), small_law_path.name)
        assert report.domain == "insulin_small_law.domain.yaml"
        assert report.selected == [0]
        assert report.ssp_selected == 0
        assert report.budget is None
        assert [p["id"] for p in report.policies] == [0, 1]
        assert report.policies[1]["root"] == {"utility": -5.0, "no_stealing": True}
        assert report.policies[1]["non_acceptability"] == pytest.approx(3.0)
        assert report.selected_policy[0] == {"time": 0, "state": "home", "action": "wait"}
        assert report.stats["expansions"] == 7
        assert report.stats["iterations"] == 3
        assert report.stats["backups"] == 15
        assert report.stats["state_time_space"] == 12
        assert report.stats["reachable_state_times"] == 7
        assert "budget" not in report.config

    def test_render_table(self, small_law_path):
        """The table marks the selected candidate and lists its actions."""
        text = render_table(build_report(solve_domain(load_domain(small_law_path)), small_law_path.name))
        assert text.startswith("Domain: insulin_small_law.domain.yaml\n")
        assert "Budget" not in text
        assert "#0 * N=0.84" in text
        assert "#1   N=3" in text
        assert "Selected policy #0:" in text
        assert "Expansions: 7 (58.3% of 12 state-times, 7 reachable)" in text

    def test_report_without_policy_raises(self, expanded_variant):
        """Building a report needs a selection."""
        domain = expanded_variant({"hal": 0, "carla": 0}, budget=True)
        model = dataclasses.replace(domain.model, ssp=dataclasses.replace(domain.model.ssp, budget=1.0))
        solved = solve_domain(dataclasses.replace(domain, model=model))
        with pytest.raises(RuntimeError):
            build_report(solved, "expanded")


class TestSolve:
    """Tests for the solve orchestration."""

    def test_prints_selected_policy(self, small_path, capsys, loguru_messages):
        """Utility alone keeps one candidate, which steals."""
        report = solve(small_path)
        out = capsys.readouterr().out
        assert "Selected policy #0:" in out
        assert "steal" in out
        assert report.selected == [0]
        assert any(m.startswith("Selected policy #0") for m in loguru_messages)

    def test_writes_report(self, small_law_path, tmp_path, capsys):
        """The YAML report reads back into the same report."""
        target = tmp_path / "out" / "report.yaml"
        written = solve(small_law_path, target)
        assert target.exists()
        assert RunReport.from_yaml(target) == written

    def test_report_is_deterministic(self, small_law_path, tmp_path, capsys):
        """Two runs agree on everything except the wall time."""
        first, second = tmp_path / "a.yaml", tmp_path / "b.yaml"
        solve(small_law_path, first)
        solve(small_law_path, second)
        assert RunReport.from_yaml(first) == RunReport.from_yaml(second)

    def test_no_policy_raises(self, tmp_path, expanded_config, loguru_messages):
        """A domain whose budget cannot be met fails with an explanation."""
        import yaml

        expanded_config["budget"] = 1.0
        path = tmp_path / "tight.domain.yaml"
        path.write_text(yaml.safe_dump(expanded_config), encoding="utf-8")
        with pytest.raises(RuntimeError, match="No proper policy"):
            solve(path)
        assert any("Raise the budget" in m for m in loguru_messages)
