"""Tests for the graph command."""

import pytest

from moralplan.commands import graph


class TestGraphCommand:
    """Tests for writing the argumentation graph."""

    def test_writes_dot(self, small_law_path, tmp_path, loguru_messages):
        """The law problem draws seven arguments and fourteen attacks."""
        target = tmp_path / "nested" / "law.dot"
        graph(small_law_path, target)
        dot = target.read_text(encoding="utf-8")
        assert dot.startswith("digraph mehr {")
        assert dot.count("->") == 14
        assert any("7 arguments and 14 attacks" in m for m in loguru_messages)

    def test_single_candidate_has_no_edges(self, small_path, tmp_path):
        """With one candidate there is nobody to attack."""
        target = tmp_path / "small.dot"
        graph(small_path, target)
        assert "->" not in target.read_text(encoding="utf-8")

    def test_nothing_to_draw(self, tmp_path, expanded_config):
        """An unmet budget leaves no graph."""
        import yaml

        expanded_config["budget"] = 1.0
        path = tmp_path / "tight.domain.yaml"
        path.write_text(yaml.safe_dump(expanded_config), encoding="utf-8")
        with pytest.raises(RuntimeError, match="nothing to draw"):
            graph(path, tmp_path / "out.dot")
        assert not (tmp_path / "out.dot").exists()
