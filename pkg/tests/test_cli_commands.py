"""Tests for moralplan CLI commands and entry points.

This module tests:
- The __main__.py entry point
- The cli.py Typer app, its command wrappers and their exit codes
"""

import subprocess  # nosec B404
import sys
from unittest.mock import patch

import pytest
import typer
import yaml
from typer.testing import CliRunner

from moralplan import __version__
from moralplan.cli import EXIT_CAPACITY_ERROR, EXIT_FAILURE, EXIT_INPUT_ERROR, app, version_callback
from moralplan.commands.solve import RunReport


class TestCliApp:
    """Tests for the CLI Typer app."""

    def test_version_flag(self):
        """--version prints the version."""
        result = subprocess.run(  # nosec B603
            [sys.executable, "-m", "moralplan", "--version"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert f"moralplan version {__version__}" in result.stdout

    def test_version_short_flag(self):
        """-v prints the version."""
        result = CliRunner().invoke(app, ["-v"])
        assert result.exit_code == 0
        assert "moralplan version" in result.output

    def test_version_callback_with_true(self, capsys):
        """version_callback prints and exits when the flag is set."""
        with pytest.raises(typer.Exit):
            version_callback(True)
        assert f"moralplan version {__version__}" in capsys.readouterr().out

    def test_version_callback_with_false(self):
        """version_callback does nothing when the flag is unset."""
        version_callback(False)


class TestMainEntry:
    """Tests for the __main__.py entry point."""

    def test_main_entry_point(self):
        """python -m moralplan --help lists the commands."""
        result = subprocess.run([sys.executable, "-m", "moralplan", "--help"], capture_output=True, text=True)  # nosec B603
        assert result.returncode == 0
        for command in ("solve", "graph", "oracle-check"):
            assert command in result.stdout

    def test_load_plugins_with_error(self, monkeypatch):
        """A plugin that fails to load is reported and skipped."""
        from unittest.mock import MagicMock

        mock_entry = MagicMock()
        mock_entry.name = "bad_plugin"
        mock_entry.load.side_effect = RuntimeError("Plugin load failed")

        def mock_entry_points(group):
            """Return the mocked plugin entry points."""
            return [mock_entry] if group == "moralplan.plugins" else []

        monkeypatch.setattr("moralplan.__main__.entry_points", mock_entry_points)
        from moralplan.__main__ import load_plugins

        with patch("moralplan.__main__.logger") as mock_logger:
            load_plugins(typer.Typer())

        mock_logger.warning.assert_called_once()
        assert "bad_plugin" in mock_logger.warning.call_args[0][0]

    def test_load_plugins_successfully(self, monkeypatch):
        """A plugin app is mounted under its entry point name."""
        from unittest.mock import MagicMock

        plugin_app = typer.Typer()
        mock_entry = MagicMock()
        mock_entry.name = "good_plugin"
        mock_entry.load.return_value = plugin_app

        def mock_entry_points(group):
            """Return the mocked plugin entry points."""
            return [mock_entry] if group == "moralplan.plugins" else []

        monkeypatch.setattr("moralplan.__main__.entry_points", mock_entry_points)
        test_app = typer.Typer()
        test_app.add_typer = MagicMock()
        from moralplan.__main__ import load_plugins

        load_plugins(test_app)
        test_app.add_typer.assert_called_once_with(plugin_app, name="good_plugin")

    def test_main_loads_plugins_then_runs_app(self):
        """main() loads plugins before invoking the Typer app."""
        from unittest.mock import MagicMock, call

        from moralplan.__main__ import main

        manager = MagicMock()
        with (
            patch("moralplan.__main__.load_plugins", manager.load_plugins),
            patch("moralplan.__main__.app", manager.app),
        ):
            main()

        assert manager.mock_calls == [call.load_plugins(manager.app), call.app()]


class TestSolveCommand:
    """Tests for the solve command wrapper."""

    runner = CliRunner()

    def test_solve_small(self, small_path):
        """Solving the utility-only problem prints a stealing policy."""
        result = self.runner.invoke(app, ["solve", str(small_path)])
        assert result.exit_code == 0
        assert "Selected policy #0:" in result.output
        assert "steal" in result.output

    def test_solve_writes_report(self, small_law_path, tmp_path):
        """--report writes YAML that reads back as a RunReport."""
        target = tmp_path / "report.yaml"
        result = self.runner.invoke(app, ["solve", str(small_law_path), "--report", str(target)])
        assert result.exit_code == 0
        report = RunReport.from_config(yaml.safe_load(target.read_text(encoding="utf-8")))
        assert report.selected == [0]
        assert report.domain == small_law_path.name

    def test_per_theory_binary_flag(self, small_law_path, tmp_path):
        """--per-theory-binary counts the law once per steal argument."""
        target = tmp_path / "report.yaml"
        result = self.runner.invoke(app, ["solve", str(small_law_path), "-r", str(target), "--per-theory-binary"])
        assert result.exit_code == 0
        report = RunReport.from_yaml(target)
        assert report.policies[1]["non_acceptability"] == pytest.approx(1.0)

    def test_malformed_file_exits_2(self, tmp_path, loguru_messages):
        """A domain with a broken transition table is an input error."""
        bad = tmp_path / "bad.domain.yaml"
        bad.write_text("schema_version: 1\nstates: [a]\n", encoding="utf-8")
        result = self.runner.invoke(app, ["solve", str(bad)])
        assert result.exit_code == EXIT_INPUT_ERROR
        assert loguru_messages

    def test_yaml_syntax_error_exits_2(self, tmp_path):
        """Unparseable YAML is an input error."""
        bad = tmp_path / "bad.domain.yaml"
        bad.write_text("states: [a\n", encoding="utf-8")
        assert self.runner.invoke(app, ["solve", str(bad)]).exit_code == EXIT_INPUT_ERROR

    def test_missing_file_is_usage_error(self, tmp_path):
        """Typer refuses a path that does not exist."""
        result = self.runner.invoke(app, ["solve", str(tmp_path / "missing.yaml")])
        assert result.exit_code == 2

    def test_non_positive_option_exits_2(self, small_path):
        """A zero limit is an input error."""
        assert self.runner.invoke(app, ["solve", str(small_path), "--vector-cap", "0"]).exit_code == EXIT_INPUT_ERROR

    def test_capacity_exits_3(self, small_law_path, loguru_messages):
        """Exceeding --max-policies exits 3 and says which limit."""
        result = self.runner.invoke(app, ["solve", str(small_law_path), "--max-policies", "1"])
        assert result.exit_code == EXIT_CAPACITY_ERROR
        assert any(m.startswith("Capacity exceeded") for m in loguru_messages)

    def test_no_policy_exits_1(self, small_path):
        """A solve without a proper in-budget policy exits 1."""
        with patch("moralplan.cli.solve_cmd", side_effect=RuntimeError("No proper policy")):
            result = self.runner.invoke(app, ["solve", str(small_path)])
        assert result.exit_code == EXIT_FAILURE


class TestGraphCommand:
    """Tests for the graph command wrapper."""

    runner = CliRunner()

    def test_graph_writes_dot(self, small_law_path, tmp_path):
        """The DOT file is written where --dot points."""
        target = tmp_path / "law.dot"
        result = self.runner.invoke(app, ["graph", str(small_law_path), "--dot", str(target)])
        assert result.exit_code == 0
        assert target.read_text(encoding="utf-8").startswith("digraph")

    def test_graph_requires_dot(self, small_law_path):
        """--dot is mandatory."""
        assert self.runner.invoke(app, ["graph", str(small_law_path)]).exit_code != 0


class TestOracleCheckCommand:
    """Tests for the oracle-check command wrapper."""

    runner = CliRunner()

    def test_domain_file(self, small_law_path):
        """The law problem agrees with the oracle."""
        result = self.runner.invoke(app, ["oracle-check", str(small_law_path)])
        assert result.exit_code == 0
        assert "passed 1, failed 0" in result.output

    def test_random(self):
        """Seeded random instances agree with the oracle."""
        result = self.runner.invoke(app, ["oracle-check", "--random", "5", "--seed", "1"])
        assert result.exit_code == 0
        assert "failed 0" in result.output

    def test_nothing_requested_exits_2(self):
        """Neither a file nor --random is an input error."""
        assert self.runner.invoke(app, ["oracle-check"]).exit_code == EXIT_INPUT_ERROR
