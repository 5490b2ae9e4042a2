"""moralplan module entry point.

This module allows running the CLI with `python -m moralplan` by delegating
execution to the Typer application defined in `moralplan.cli`.
"""

from importlib.metadata import entry_points

import typer
from loguru import logger

from moralplan.cli import app


def load_plugins(app: typer.Typer) -> None:
    """Load plugins from entry points."""
    # Packages registering a `moralplan.plugins` entry point are mounted as subcommands.
    for entry in entry_points(group="moralplan.plugins"):
        try:
            app.add_typer(entry.load(), name=entry.name)
        except Exception as e:  # noqa: BLE001
            logger.warning(f"Failed to load plugin {entry.name}: {e}")


def main() -> None:
    """Console-script entry point: load plugins, then run the CLI."""
    load_plugins(app)
    app()


if __name__ == "__main__":
    main()
