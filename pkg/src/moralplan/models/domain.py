"""Domain files: parsing, validation and serialization of decision problems.

A domain file is a YAML mapping (conventionally ``*.domain.yaml``) that names
states and actions and refers to them by name everywhere else. Parsing resolves
the names, checks every field, runs :func:`moralplan.models.mmmdp.validate` and
either returns a complete :class:`DomainFile` or raises :class:`DomainError`
naming the offending field path. No partially built model escapes.

Example::

    schema_version: 1
    states: [s0, s1]
    actions: [wait]
    initial: s0
    horizon: 2
    transitions:
      - {from: s0, action: wait, to: s1, prob: 1.0}
      - {from: s1, action: wait, to: s1, prob: 1.0}
    considerations:
      - name: utility
        kind: utility
        judgements:
          - {from: s0, action: wait, to: s1, value: -10}
    theories:
      - {name: utilitarian, consideration: utility, rank: 0}
"""

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from moralplan.models._base import DomainError, YamlSerializable, dump_yaml, load_yaml_text
from moralplan.models.mmmdp import Mmmdp, SspExtension, Theory, Transition, validate
from moralplan.models.worth import (
    DEFAULT_EPSILON,
    Consideration,
    ConsiderationKind,
    Worth,
    WorthVector,
)

SCHEMA_VERSION = 1

_TOP_REQUIRED = (
    "schema_version",
    "states",
    "actions",
    "initial",
    "horizon",
    "transitions",
    "considerations",
    "theories",
)
_TOP_OPTIONAL = ("goals", "budget", "heuristics", "solver")
_TRANSITION_KEYS = ("from", "action", "to", "prob")
_JUDGEMENT_KEYS = ("from", "action", "to", "value")


@dataclass(kw_only=True, frozen=True)
class SolverConfig(YamlSerializable):
    """Limits and switches for solving and selection.

    All fields default to the standard behaviour so callers only need to set
    the fields they want to override.
    """

    vector_cap: int = 10_000
    """Maximum successor-vector combinations enumerated by one node backup."""

    max_policies: int = 1_000
    """Maximum number of policies extracted from a converged search."""

    max_histories: int = 100_000
    """Maximum number of histories extracted per policy."""

    per_theory_binary: bool = False
    """Count at most one attacker per theory when scoring non-acceptability."""

    @classmethod
    def from_config(cls, config: dict[str, Any]) -> "SolverConfig":
        """Create a SolverConfig from the ``solver`` section of a domain file.

        Raises:
            DomainError: On unknown keys or out-of-range values.
        """
        record = _mapping(config, "solver")
        _check_keys(record, "solver", required=(), optional=tuple(cls.__dataclass_fields__))
        values: dict[str, Any] = {}
        for key in ("vector_cap", "max_policies", "max_histories"):
            if key in record:
                values[key] = _positive_int(record[key], f"solver.{key}")
        if "per_theory_binary" in record:
            flag = record["per_theory_binary"]
            if not isinstance(flag, bool):
                raise DomainError(f"expected a boolean, got {flag!r}", path="solver.per_theory_binary")
            values["per_theory_binary"] = flag
        return cls(**values)

    @property
    def config(self) -> dict[str, Any]:
        """Non-default fields as a configuration dictionary."""
        defaults = SolverConfig()
        return {
            name: getattr(self, name)
            for name in self.__dataclass_fields__
            if getattr(self, name) != getattr(defaults, name)
        }


@dataclass(kw_only=True, frozen=True)
class Heuristic:
    """Optimistic worth estimates used to seed unexplored state-times.

    ``entries[i]`` maps ``(state, time)`` to a worth for consideration ``i``;
    a ``None`` time means "every time". Lookups fall back to ``defaults[i]``.
    """

    entries: tuple[Mapping[tuple[int, int | None], Worth], ...]
    defaults: tuple[Worth, ...]

    def estimate(self, index: int, s: int, t: int) -> Worth:
        """Estimate for consideration *index* at ``(s, t)``."""
        table = self.entries[index]
        if (s, t) in table:
            return table[(s, t)]
        return table.get((s, None), self.defaults[index])

    def vector(self, s: int, t: int) -> WorthVector:
        """Estimates for every consideration at ``(s, t)``."""
        return tuple(self.estimate(i, s, t) for i in range(len(self.defaults)))


def default_heuristic(model: Mmmdp) -> Heuristic:
    """The fallback heuristic: ``0.0`` for Real kinds and ``False`` for absolutes, everywhere."""
    return Heuristic(
        entries=tuple({} for _ in model.considerations),
        defaults=tuple(c.identity for c in model.considerations),
    )


def _mapping(value: object, path: str) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise DomainError(f"expected a mapping, got {type(value).__name__}", path=path)
    return value


def _sequence(value: object, path: str) -> list[Any]:
    if not isinstance(value, list):
        raise DomainError(f"expected a list, got {type(value).__name__}", path=path)
    return value


def _check_keys(record: dict[str, Any], path: str, *, required: Sequence[str], optional: Sequence[str]) -> None:
    for key in record:
        if key not in required and key not in optional:
            raise DomainError(f"unknown field {key!r}", path=path or key)
    for key in required:
        if key not in record:
            raise DomainError(f"missing field {key!r}", path=path or key)


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _string(value: object, path: str) -> str:
    if not isinstance(value, str) or not value:
        raise DomainError(f"expected a non-empty name, got {value!r}", path=path)
    return value


def _real(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise DomainError(f"expected a number, got {value!r}", path=path)
    if not math.isfinite(value):
        raise DomainError(f"expected a finite number, got {value!r}", path=path)
    return float(value)


def _positive_int(value: object, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DomainError(f"expected a positive integer, got {value!r}", path=path)
    return value


def _rank(value: object, path: str) -> Fraction:
    if isinstance(value, bool):
        raise DomainError(f"expected a rational rank, got {value!r}", path=path)
    try:
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float) and math.isfinite(value):
            return Fraction(repr(value))
        if isinstance(value, str):
            return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        pass
    raise DomainError(f"expected a rational rank such as 1, 0.5 or '1/3', got {value!r}", path=path)


def _worth(kind: ConsiderationKind, value: object, path: str) -> Worth:
    if kind.is_real:
        return _real(value, path)
    if not isinstance(value, bool):
        raise DomainError(f"expected true or false for an absolute consideration, got {value!r}", path=path)
    return value


def _names(config: dict[str, Any], key: str) -> tuple[tuple[str, ...], dict[str, int]]:
    raw = _sequence(config[key], key)
    names = tuple(_string(v, f"{key}[{i}]") for i, v in enumerate(raw))
    index: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in index:
            raise DomainError(f"duplicate name {name!r}", path=f"{key}[{i}]")
        index[name] = i
    if not names:
        raise DomainError("at least one entry is required", path=key)
    return names, index


def _resolve(index: Mapping[str, int], value: object, path: str, what: str) -> int:
    name = _string(value, path)
    if name not in index:
        raise DomainError(f"unknown {what} {name!r}", path=path)
    return index[name]


@dataclass(frozen=True)
class _Names:
    states: dict[str, int]
    actions: dict[str, int]

    def triple(self, record: dict[str, Any], path: str) -> tuple[int, int, int]:
        return (
            _resolve(self.states, record["from"], _join(path, "from"), "state"),
            _resolve(self.actions, record["action"], _join(path, "action"), "action"),
            _resolve(self.states, record["to"], _join(path, "to"), "state"),
        )


def _parse_transitions(raw: object, names: _Names) -> tuple[Transition, ...]:
    transitions = []
    for i, item in enumerate(_sequence(raw, "transitions")):
        path = f"transitions[{i}]"
        record = _mapping(item, path)
        _check_keys(record, path, required=_TRANSITION_KEYS, optional=())
        s, a, s2 = names.triple(record, path)
        prob = _real(record["prob"], f"{path}.prob")
        if not 0.0 <= prob <= 1.0:
            raise DomainError(f"probability {prob!r} outside [0, 1]", path=f"{path}.prob")
        transitions.append(Transition(source=s, action=a, target=s2, prob=prob))
    return tuple(transitions)


def _parse_consideration(item: object, path: str, names: _Names) -> Consideration:
    record = _mapping(item, path)
    _check_keys(record, path, required=("name", "kind", "judgements"), optional=("epsilon", "default"))
    name = _string(record["name"], f"{path}.name")
    try:
        kind = ConsiderationKind(record["kind"])
    except ValueError:
        valid = ", ".join(k.value for k in ConsiderationKind)
        raise DomainError(f"unknown kind {record['kind']!r}; expected one of {valid}", path=f"{path}.kind") from None
    epsilon = DEFAULT_EPSILON
    if "epsilon" in record:
        epsilon = _real(record["epsilon"], f"{path}.epsilon")
        if epsilon <= 0:
            raise DomainError(f"epsilon must be positive, got {epsilon!r}", path=f"{path}.epsilon")
    default = _worth(kind, record["default"], f"{path}.default") if "default" in record else None
    judgements: dict[tuple[int, int, int], Worth] = {}
    for j, raw in enumerate(_sequence(record["judgements"], f"{path}.judgements")):
        jpath = f"{path}.judgements[{j}]"
        entry = _mapping(raw, jpath)
        _check_keys(entry, jpath, required=_JUDGEMENT_KEYS, optional=())
        key = names.triple(entry, jpath)
        if key in judgements:
            raise DomainError("duplicate judgement", path=jpath)
        judgements[key] = _worth(kind, entry["value"], f"{jpath}.value")
    return Consideration(name=name, kind=kind, judgements=judgements, default=default, epsilon=epsilon)


def _parse_theories(raw: object, considerations: Mapping[str, int]) -> tuple[Theory, ...]:
    theories = []
    for i, item in enumerate(_sequence(raw, "theories")):
        path = f"theories[{i}]"
        record = _mapping(item, path)
        _check_keys(record, path, required=("name", "consideration", "rank"), optional=())
        theories.append(
            Theory(
                name=_string(record["name"], f"{path}.name"),
                consideration=_resolve(considerations, record["consideration"], f"{path}.consideration", "consideration"),
                rank=_rank(record["rank"], f"{path}.rank"),
            )
        )
    return tuple(theories)


def _parse_ssp(config: dict[str, Any], names: _Names, considerations: Sequence[Consideration]) -> SspExtension | None:
    if "goals" not in config and "budget" not in config:
        return None
    if "goals" not in config or "budget" not in config:
        raise DomainError("goals and budget must be given together", path="goals" if "goals" not in config else "budget")
    goals = frozenset(
        _resolve(names.states, g, f"goals[{i}]", "state") for i, g in enumerate(_sequence(config["goals"], "goals"))
    )
    budget = _real(config["budget"], "budget")
    costs = [i for i, c in enumerate(considerations) if c.kind is ConsiderationKind.COST]
    if not costs:
        raise DomainError("goals and a budget require a cost consideration", path="considerations")
    return SspExtension(goals=goals, budget=budget, cost_consideration=costs[0])


def _parse_heuristics(
    raw: object, names: _Names, considerations: Sequence[Consideration], horizon: int
) -> Heuristic:
    by_name = {c.name: i for i, c in enumerate(considerations)}
    entries: list[dict[tuple[int, int | None], Worth]] = [{} for _ in considerations]
    for cname, items in _mapping(raw, "heuristics").items():
        path = f"heuristics.{cname}"
        index = _resolve(by_name, cname, path, "consideration")
        kind = considerations[index].kind
        for i, item in enumerate(_sequence(items, path)):
            ipath = f"{path}[{i}]"
            record = _mapping(item, ipath)
            _check_keys(record, ipath, required=("state", "value"), optional=("time",))
            s = _resolve(names.states, record["state"], f"{ipath}.state", "state")
            t: int | None = None
            if "time" in record:
                t = record["time"]
                if isinstance(t, bool) or not isinstance(t, int) or not 0 <= t < horizon:
                    raise DomainError(f"time must be an integer in [0, {horizon}), got {t!r}", path=f"{ipath}.time")
            if (s, t) in entries[index]:
                raise DomainError("duplicate heuristic entry", path=ipath)
            entries[index][(s, t)] = _worth(kind, record["value"], f"{ipath}.value")
    return Heuristic(entries=tuple(entries), defaults=tuple(c.identity for c in considerations))


@dataclass(kw_only=True, frozen=True)
class DomainFile(YamlSerializable):
    """A parsed domain file: the model, its heuristic and the solver settings.

    Attributes:
        model: The validated decision problem.
        heuristic: File-supplied estimates over :func:`default_heuristic`.
        solver: Solver limits from the ``solver`` section.
    """

    model: Mmmdp
    heuristic: Heuristic
    solver: SolverConfig = field(default_factory=SolverConfig)

    @classmethod
    def from_config(cls, config: dict[str, Any]) -> "DomainFile":
        """Build and validate a domain from its configuration dictionary.

        Args:
            config: Parsed YAML mapping.

        Returns:
            A new DomainFile.

        Raises:
            DomainError: With the offending field path, or with the full
                violation list when the assembled model is invalid.
        """
        config = _mapping(config, "")
        _check_keys(config, "", required=_TOP_REQUIRED, optional=_TOP_OPTIONAL)
        if config["schema_version"] != SCHEMA_VERSION:
            raise DomainError(
                f"unsupported schema version {config['schema_version']!r}, expected {SCHEMA_VERSION}",
                path="schema_version",
            )
        states, state_index = _names(config, "states")
        actions, action_index = _names(config, "actions")
        names = _Names(states=state_index, actions=action_index)
        horizon = _positive_int(config["horizon"], "horizon")
        considerations = tuple(
            _parse_consideration(item, f"considerations[{i}]", names)
            for i, item in enumerate(_sequence(config["considerations"], "considerations"))
        )
        by_name: dict[str, int] = {}
        for i, c in enumerate(considerations):
            if c.name in by_name:
                raise DomainError(f"duplicate name {c.name!r}", path=f"considerations[{i}].name")
            by_name[c.name] = i
        model = Mmmdp(
            states=states,
            actions=actions,
            transitions=_parse_transitions(config["transitions"], names),
            s0=_resolve(state_index, config["initial"], "initial", "state"),
            horizon=horizon,
            considerations=considerations,
            theories=_parse_theories(config["theories"], by_name),
            ssp=_parse_ssp(config, names, considerations),
        )
        violations = validate(model)
        if violations:
            raise DomainError("; ".join(violations), violations=violations)
        heuristic = (
            _parse_heuristics(config["heuristics"], names, considerations, horizon)
            if "heuristics" in config
            else default_heuristic(model)
        )
        solver = SolverConfig.from_config(config["solver"]) if "solver" in config else SolverConfig()
        return cls(model=model, heuristic=heuristic, solver=solver)

    @property
    def config(self) -> dict[str, Any]:
        """The domain as a configuration dictionary that parses back to an equal DomainFile."""
        model = self.model
        config: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "states": list(model.states),
            "actions": list(model.actions),
            "initial": model.states[model.s0],
            "horizon": model.horizon,
            "transitions": [
                {
                    "from": model.states[t.source],
                    "action": model.actions[t.action],
                    "to": model.states[t.target],
                    "prob": t.prob,
                }
                for t in model.transitions
            ],
            "considerations": [_consideration_config(model, c) for c in model.considerations],
            "theories": [
                {
                    "name": m.name,
                    "consideration": model.considerations[m.consideration].name,
                    "rank": _rank_config(m.rank),
                }
                for m in model.theories
            ],
        }
        if model.ssp is not None:
            config["goals"] = [model.states[g] for g in sorted(model.ssp.goals)]
            config["budget"] = model.ssp.budget
        heuristics = {
            c.name: [_heuristic_entry(model, key, value) for key, value in entries.items()]
            for c, entries in zip(model.considerations, self.heuristic.entries, strict=True)
            if entries
        }
        if heuristics:
            config["heuristics"] = heuristics
        if self.solver.config:
            config["solver"] = self.solver.config
        return config


def _consideration_config(model: Mmmdp, c: Consideration) -> dict[str, Any]:
    record: dict[str, Any] = {"name": c.name, "kind": c.kind.value}
    if c.epsilon != DEFAULT_EPSILON:
        record["epsilon"] = c.epsilon
    if c.default is not None:
        record["default"] = c.default
    record["judgements"] = [
        {"from": model.states[s], "action": model.actions[a], "to": model.states[s2], "value": value}
        for (s, a, s2), value in c.judgements.items()
    ]
    return record


def _rank_config(rank: Fraction) -> int | str:
    return rank.numerator if rank.denominator == 1 else f"{rank.numerator}/{rank.denominator}"


def _heuristic_entry(model: Mmmdp, key: tuple[int, int | None], value: Worth) -> dict[str, Any]:
    s, t = key
    entry: dict[str, Any] = {"state": model.states[s]}
    if t is not None:
        entry["time"] = t
    entry["value"] = value
    return entry


def parse(text: str | bytes) -> DomainFile:
    """Parse UTF-8 domain text into a validated :class:`DomainFile`.

    Raises:
        DomainError: On syntax errors, unknown names or invariant violations.
    """
    return DomainFile.from_config(load_yaml_text(text, source="domain"))


def serialize(model: Mmmdp, heuristic: Heuristic | None = None, solver: SolverConfig | None = None) -> str:
    """Render a model (and optionally its heuristic and solver settings) as domain text."""
    domain = DomainFile(
        model=model,
        heuristic=heuristic if heuristic is not None else default_heuristic(model),
        solver=solver if solver is not None else SolverConfig(),
    )
    return dump_yaml(domain.config)
