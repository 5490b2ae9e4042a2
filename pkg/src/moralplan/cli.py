"""moralplan command-line interface (CLI).

This module defines the Typer application entry points exposed by moralplan.
Commands are thin wrappers around implementations in `moralplan.commands.*`.
"""

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated

import typer
import yaml
from loguru import logger

from moralplan import __version__
from moralplan.commands.graph import graph as graph_cmd
from moralplan.commands.oracle_check import oracle_check as oracle_check_cmd
from moralplan.commands.solve import SolveOptions
from moralplan.commands.solve import solve as solve_cmd
from moralplan.models._base import CapacityError

EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_CAPACITY_ERROR = 3


@contextmanager
def _exit_on_error() -> Iterator[None]:
    """Context manager that maps library exceptions to exit codes.

    Capacity errors exit 3, input errors exit 2 and runtime failures exit 1.
    """
    try:
        yield
    except typer.Exit:
        raise
    except CapacityError as exc:
        logger.error(f"Capacity exceeded: {exc}")
        raise typer.Exit(code=EXIT_CAPACITY_ERROR) from None
    except (ValueError, TypeError, yaml.YAMLError, OSError) as exc:
        logger.error(str(exc))
        raise typer.Exit(code=EXIT_INPUT_ERROR) from None
    except RuntimeError:
        # The command has already logged why.
        raise typer.Exit(code=EXIT_FAILURE) from None


app = typer.Typer(
    help=(
        """
        moralplan - Plan under several moral theories and pick the policy that is hardest to regret
        """
    ),
    add_completion=True,
)

DomainArgument = Annotated[
    Path,
    typer.Argument(exists=True, file_okay=True, dir_okay=False, help="Domain file (.domain.yaml)"),
]


def version_callback(value: bool) -> None:
    """Print version information and exit.

    Args:
        value: Whether the --version flag was provided.

    Raises:
        typer.Exit: Always exits after printing version.
    """
    if value:
        typer.echo(f"moralplan version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        help="Show version and exit",
        callback=version_callback,
        is_eager=True,
    ),
) -> None:
    """moralplan CLI main callback.

    Args:
        version: Version flag (handled by callback).
    """


@app.command()
def solve(
    domain: DomainArgument,
    report: Annotated[
        Path | None,
        typer.Option("--report", "-r", help="Write the machine-readable report (YAML) to this path."),
    ] = None,
    vector_cap: Annotated[
        int | None,
        typer.Option("--vector-cap", help="Most combinations a single backup may form."),
    ] = None,
    max_policies: Annotated[
        int | None,
        typer.Option("--max-policies", help="Most policies extraction may return."),
    ] = None,
    max_histories: Annotated[
        int | None,
        typer.Option("--max-histories", help="Most histories per policy."),
    ] = None,
    per_theory_binary: Annotated[
        bool,
        typer.Option("--per-theory-binary", help="Count at most one attack per theory on each argument."),
    ] = False,
) -> None:
    r"""Solve a domain and report the selected policy.

    Finds the Pareto-undominated policies, scores each by the
    probability-weighted number of attacks on its histories and prints the
    least objectionable one.

    Exit codes:
    \b
    - 0: success
    - 1: no proper policy within the budget
    - 2: invalid input
    - 3: a capacity limit was exceeded

    Examples:
        moralplan solve insulin.domain.yaml
        moralplan solve insulin.domain.yaml --report out.yaml
        moralplan solve insulin.domain.yaml --per-theory-binary
    """
    options = SolveOptions(
        vector_cap=vector_cap,
        max_policies=max_policies,
        max_histories=max_histories,
        per_theory_binary=True if per_theory_binary else None,
    )
    with _exit_on_error():
        solve_cmd(domain, report, options=options)


@app.command()
def graph(
    domain: DomainArgument,
    dot: Annotated[Path, typer.Option("--dot", "-d", help="Where to write the Graphviz file.")],
) -> None:
    """Write the argumentation graph of a domain as Graphviz DOT.

    Examples:
        moralplan graph insulin.domain.yaml --dot insulin.dot
    """
    with _exit_on_error():
        graph_cmd(domain, dot)


@app.command("oracle-check")
def oracle_check(
    domain: Annotated[
        Path | None,
        typer.Argument(exists=True, file_okay=True, dir_okay=False, help="Domain file to check"),
    ] = None,
    random: Annotated[int, typer.Option("--random", help="Also check N seeded random instances.")] = 0,
    seed: Annotated[int, typer.Option("--seed", help="Seed for --random.")] = 0,
) -> None:
    """Compare the solver with exhaustive enumeration.

    Exits 0 only when the root fronts and the selected sets agree on every
    instance. Instances too large to enumerate are skipped.

    Examples:
        moralplan oracle-check insulin.domain.yaml
        moralplan oracle-check --random 200 --seed 7
    """
    with _exit_on_error():
        oracle_check_cmd(domain, random=random, seed=seed)
