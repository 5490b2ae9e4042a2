"""Base abstractions for YAML-serializable moralplan models.

This module defines the :class:`YamlSerializable` :class:`~typing.Protocol` that
every persisted moralplan type satisfies, the :func:`read_yaml` helper used by
their ``from_yaml`` classmethods, and the two exception types the package raises
beyond the builtins.

Example usage::

    from moralplan.models.domain import DomainFile

    domain = DomainFile.from_yaml(Path("insulin_small.domain.yaml"))
"""

from pathlib import Path
from typing import Any, Protocol, Self, runtime_checkable

import yaml


class DomainError(ValueError):
    """A domain file or model failed to parse or validate.

    Attributes:
        path: Dotted field path of the offending value, e.g. ``transitions[3].prob``.
            Empty when the problem concerns the model as a whole.
        violations: Every invariant violation found, in detection order.
    """

    def __init__(self, message: str, *, path: str = "", violations: list[str] | None = None) -> None:
        self.path = path
        self.violations = list(violations or [])
        super().__init__(f"{path}: {message}" if path else message)


class CapacityError(Exception):
    """A configured size limit was exceeded.

    Attributes:
        limit: The configured bound.
        count: How many items had been produced when the bound was hit.
    """

    def __init__(self, message: str, *, limit: int, count: int) -> None:
        self.limit = limit
        self.count = count
        super().__init__(message)


@runtime_checkable
class YamlSerializable(Protocol):
    """Persisted types: built from a mapping, written back as one.

    Implementors
    ------------
    - :class:`moralplan.models.domain.DomainFile`
    - :class:`moralplan.models.domain.SolverConfig`
    - :class:`moralplan.commands.solve.RunReport`
    """

    @classmethod
    def from_yaml(cls, file_path: Path) -> Self:
        """Read *file_path* and build an instance from its top-level mapping.

        Raises:
            FileNotFoundError: If *file_path* does not exist.
            DomainError: If the YAML is malformed or the mapping is rejected.
        """
        return cls.from_config(read_yaml(file_path))

    @classmethod
    def from_config(cls, config: dict[str, Any]) -> Self:
        """Build an instance from a parsed mapping."""
        ...

    @property
    def config(self) -> dict[str, Any]:
        """The mapping that :meth:`from_config` turns back into an equal instance."""
        ...

    def to_yaml(self, file_path: Path) -> None:
        """Write :attr:`config` to *file_path* in block style, creating parent directories."""
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w", encoding="utf-8") as f:
            f.write(dump_yaml(self.config))


def dump_yaml(config: dict[str, Any]) -> str:
    """Render *config* in the package's YAML dialect (block style, insertion order)."""
    return yaml.dump(config, default_flow_style=False, sort_keys=False, allow_unicode=True)


def load_yaml_text(text: str | bytes, *, source: str = "<string>") -> dict[str, Any]:
    """Parse YAML *text* and return the top-level mapping.

    Args:
        text: UTF-8 YAML document.
        source: Name used in error messages.

    Returns:
        Parsed YAML content as a dictionary.

    Raises:
        DomainError: If the text is not valid YAML, is empty, or is not a mapping.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DomainError(f"{source} is not valid UTF-8: {e}") from e
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark is not None else ""
        raise DomainError(f"{source} has a YAML syntax error{where}") from e
    if data is None:
        raise DomainError(f"{source} is empty")
    if not isinstance(data, dict):
        raise DomainError(f"{source} does not contain a YAML mapping")
    return data


def read_yaml(path: Path) -> dict[str, Any]:
    """Read *path* as UTF-8 YAML and return its top-level mapping.

    Raises:
        FileNotFoundError: If *path* does not exist.
        DomainError: If the file is not valid YAML, is empty, or is not a mapping.
    """
    return load_yaml_text(path.read_bytes(), source=path.name)
