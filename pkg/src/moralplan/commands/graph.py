"""Command for writing the argumentation graph of a domain as DOT."""

from pathlib import Path

from loguru import logger

from moralplan.commands.solve import SolveOptions, load_domain, solve_domain
from moralplan.retrospection import emit_argumentation_dot


def graph(domain_path: Path, dot_path: Path, *, options: SolveOptions | None = None) -> None:
    """Solve *domain_path* and write its argumentation graph to *dot_path*.

    Raises:
        RuntimeError: If no proper policy fits the budget.
    """
    solved = solve_domain(load_domain(domain_path), options)
    if solved.mehr is None:
        err_msg = f"No proper policy within the budget for {domain_path.name}; nothing to draw"
        logger.error(err_msg)
        raise RuntimeError(err_msg)

    dot = emit_argumentation_dot(solved.mehr)
    output_path = dot_path.resolve()
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(dot, encoding="utf-8")
    logger.success(
        f"Argumentation graph with {len(solved.mehr.arguments)} arguments "
        f"and {len(solved.mehr.attacks)} attacks written to {output_path}"
    )
