"""Report construction and text rendering for the ``solve`` command."""

import dataclasses
from dataclasses import dataclass, field
from typing import Any

import jinja2

from moralplan.models._base import YamlSerializable
from moralplan.models.policy import expected_cost, reachable_state_times
from moralplan.models.worth import WorthVector

from ._gather import Solved

_TABLE_TEMPLATE = """\
Domain: {{ report.domain }}
{% if report.budget is not none %}Budget: {{ report.budget }}
{% endif %}
Candidates ({{ report.policies | length }}):
{% for p in report.policies %}  #{{ p.id }}{{ ' *' if p.id in report.selected else '  ' }} N={{ '%.6g' | format(p.non_acceptability) }}
{%- for name, value in p.root.items() %}  {{ name }}={{ value }}{% endfor %}
{%- if p.expected_cost is defined %}  expected_cost={{ '%.6g' | format(p.expected_cost) }}{% endif %}
{% endfor %}
Selected policy #{{ report.ssp_selected }}:
  {{ '%-6s' | format('time') }} {{ '%-*s' | format(state_width, 'state') }} action
{% for row in report.selected_policy %}  {{ '%-6s' | format(row.time) }} {{ '%-*s' | format(state_width, row.state) }} {{ row.action }}
{% endfor %}
Expansions: {{ report.stats.expansions }} ({{ '%.1f' | format(report.stats.expansions_percent) }}% of {{ report.stats.state_time_space }} state-times, {{ report.stats.reachable_state_times }} reachable)
Backups: {{ report.stats.backups }}  Iterations: {{ report.stats.iterations }}  Wall time: {{ '%.3f' | format(report.wall_time_seconds) }}s
"""


def _format_worth(value: bool | float) -> bool | float:
    return value if isinstance(value, bool) else float(value)


@dataclass(kw_only=True)
class RunReport(YamlSerializable):
    """Machine-readable outcome of ``moralplan solve``.

    Every field except :attr:`wall_time_seconds` is a deterministic function of
    the input file and flags.
    """

    domain: str
    selected: list[int]
    ssp_selected: int
    selected_policy: list[dict[str, Any]]
    policies: list[dict[str, Any]]
    stats: dict[str, Any]
    budget: float | None = None
    wall_time_seconds: float = field(default=0.0, compare=False)

    @classmethod
    def from_config(cls, config: dict[str, Any]) -> "RunReport":
        """Create a RunReport from a previously written report mapping."""
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in config.items() if k in names})

    @property
    def config(self) -> dict[str, Any]:
        """The report as a configuration dictionary, ``None`` fields omitted."""
        return {k: v for k, v in dataclasses.asdict(self).items() if v is not None}


def _root_record(names: list[str], root: WorthVector) -> dict[str, bool | float]:
    return {name: _format_worth(value) for name, value in zip(names, root, strict=True)}


def build_report(solved: Solved, domain_name: str) -> RunReport:
    """Assemble the report of a solve that produced at least one policy.

    Raises:
        RuntimeError: If the solve produced no policy.
    """
    if solved.mehr is None:
        raise RuntimeError("no policy to report")  # noqa: TRY003
    model = solved.domain.model
    mehr = solved.mehr
    names = [c.name for c in model.considerations]
    policies: list[dict[str, Any]] = []
    for p, policy in enumerate(mehr.policies):
        record: dict[str, Any] = {
            "id": p,
            "root": _root_record(names, mehr.roots[p]),
            "non_acceptability": float(mehr.non_acceptability[p]),
        }
        cost = expected_cost(model, policy)
        if cost is not None:
            record["expected_cost"] = cost
        policies.append(record)
    chosen = mehr.policies[mehr.ssp_selected if mehr.ssp_selected is not None else min(mehr.selected)]
    stats = solved.search.stats
    space = model.state_time_count
    return RunReport(
        domain=domain_name,
        selected=sorted(mehr.selected),
        ssp_selected=mehr.ssp_selected if mehr.ssp_selected is not None else min(mehr.selected),
        selected_policy=[{"time": t, "state": s, "action": a} for t, s, a in chosen.describe(model)],
        policies=policies,
        stats={
            "expansions": stats.expansions,
            "expansions_percent": 100.0 * stats.expansions / space,
            "backups": stats.backups,
            "iterations": stats.iterations,
            "state_time_space": space,
            "reachable_state_times": len(reachable_state_times(model)),
        },
        budget=model.ssp.budget if model.ssp is not None else None,
        wall_time_seconds=solved.wall_time,
    )


def render_table(report: RunReport) -> str:
    """Human-readable summary of *report*.

    Note:
        Autoescape is disabled because the output is plain text.
    """
    env = jinja2.Environment(  # nosec B701
        autoescape=False,  # noqa: S701
        loader=jinja2.BaseLoader(),
        keep_trailing_newline=True,
    )
    state_width = max([len("state")] + [len(row["state"]) for row in report.selected_policy])
    return env.from_string(_TABLE_TEMPLATE).render(report=report, state_width=state_width)
