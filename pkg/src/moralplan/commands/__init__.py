"""Command implementations for the moralplan CLI.

Implementation functions that back the Typer commands in `moralplan.cli`.
Run ``moralplan <command> --help`` for usage details.
"""

from .graph import graph
from .oracle_check import oracle_check
from .solve import solve

__all__ = ["graph", "oracle_check", "solve"]
