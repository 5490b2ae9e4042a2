"""Command for solving a domain file and reporting the selected policy.

Responsibilities are split across two private modules:

* :mod:`._gather` loads the domain and runs the search and the selection.
* :mod:`._render` turns the outcome into a :class:`RunReport` and a text table.

The orchestration (:func:`solve`) lives here and wires the two together.
"""

from pathlib import Path

from loguru import logger

from ._gather import Solved, SolveOptions, load_domain, solve_domain
from ._render import RunReport, build_report, render_table

__all__ = [
    "RunReport",
    "SolveOptions",
    "Solved",
    "build_report",
    "load_domain",
    "render_table",
    "solve",
    "solve_domain",
]


def solve(domain_path: Path, report: Path | None = None, *, options: SolveOptions | None = None) -> RunReport:
    """Solve the domain at *domain_path* and print the outcome.

    Args:
        domain_path: A ``.domain.yaml`` file.
        report: Where to write the YAML report; nothing is written when ``None``.
        options: Overrides of the file's solver settings.

    Returns:
        The report that was printed.

    Raises:
        DomainError: If the file is not a valid problem.
        CapacityError: If a configured limit is exceeded.
        RuntimeError: If no proper policy fits the budget.
    """
    domain = load_domain(domain_path)
    solved = solve_domain(domain, options)
    if solved.mehr is None:
        err_msg = f"No proper policy within the budget for {domain_path.name}"
        logger.error(err_msg)
        logger.error("Raise the budget or the horizon, or check that the goals are reachable")
        raise RuntimeError(err_msg)

    run_report = build_report(solved, domain_path.name)
    print(render_table(run_report), end="")

    if report:
        report_path = report.resolve()
        run_report.to_yaml(report_path)
        logger.success(f"Report written to {report_path}")

    chosen = run_report.ssp_selected
    logger.success(
        f"Selected policy #{chosen} "
        f"(non-acceptability {solved.mehr.non_acceptability[chosen]:.6g}) in {solved.wall_time:.3f}s"
    )
    return run_report
