"""Worth values, moral considerations and the relations defined over them.

A *worth* is one element of a consideration's value space. Two tags exist and
the tag is the Python type: ``Real`` worths are ``float`` (utility and cost),
``Flag`` worths are ``bool`` (absolute constraints, ``True`` meaning violated).
Mixing tags is a :class:`TypeError`.
"""

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TypeAlias

import numpy as np

Worth: TypeAlias = float | bool
WorthVector: TypeAlias = tuple[Worth, ...]
JudgementKey: TypeAlias = tuple[int, int, int]

DEFAULT_EPSILON = 1e-6


class ConsiderationKind(StrEnum):
    """The built-in consideration kinds."""

    UTILITY = "utility"
    ABSOLUTE = "absolute"
    COST = "cost"

    @property
    def is_real(self) -> bool:
        """Whether worths of this kind carry the ``Real`` tag."""
        return self is not ConsiderationKind.ABSOLUTE

    @property
    def identity(self) -> Worth:
        """The aggregation identity: ``0.0`` for Real kinds, ``False`` for Flag."""
        return 0.0 if self.is_real else False


def check_worth(kind: ConsiderationKind, value: object) -> Worth:
    """Return *value* as a worth of *kind*, raising if the tag does not match.

    Raises:
        TypeError: If the value carries the other tag.
        ValueError: If a Real value is not finite.
    """
    if kind.is_real:
        if isinstance(value, bool) or not isinstance(value, int | float):
            raise TypeError(f"{kind} worth must be a real number, got {value!r}")  # noqa: TRY003
        if not math.isfinite(value):
            raise ValueError(f"{kind} worth must be finite, got {value!r}")  # noqa: TRY003
        return float(value)
    if not isinstance(value, bool | np.bool_):
        raise TypeError(f"{kind} worth must be a boolean flag, got {value!r}")  # noqa: TRY003
    return bool(value)


@dataclass(kw_only=True, frozen=True)
class Consideration:
    """One morally relevant quantity with its judgement table.

    Attributes:
        name: Unique name within the model.
        kind: Which aggregation, preference and consistency rules apply.
        judgements: Sparse ``(from, action, to) -> worth`` table.
        default: Judgement for transitions missing from the table; ``None``
            means the kind's identity.
        epsilon: Consistency tolerance for Real kinds.
    """

    name: str
    kind: ConsiderationKind
    judgements: Mapping[JudgementKey, Worth] = field(default_factory=dict)
    default: Worth | None = None
    epsilon: float = DEFAULT_EPSILON

    @property
    def identity(self) -> Worth:
        """The identity worth of this consideration's kind."""
        return self.kind.identity

    @property
    def default_judgement(self) -> Worth:
        """The judgement used for transitions with no explicit entry."""
        return self.identity if self.default is None else self.default

    def judgement(self, s: int, a: int, s_next: int) -> Worth:
        """Return J(s, a, s')."""
        return self.judgements.get((s, a, s_next), self.default_judgement)

    def score(self, w: Worth) -> float:
        """Map *w* onto a real line where larger is always preferred."""
        if self.kind is ConsiderationKind.UTILITY:
            return float(w)
        if self.kind is ConsiderationKind.COST:
            return -float(w)
        return -1.0 if w else 0.0

    def prefers(self, w: Worth, other: Worth) -> bool:
        """Strict preference ``w ≻ other``, exact for Real kinds."""
        return self.score(w) > self.score(other)


def aggregate(
    consideration: Consideration,
    baseline: Sequence[Worth],
    successor_worths: Sequence[Worth],
    probs: Sequence[float],
) -> Worth:
    """Aggregate index-aligned successor outcomes into one worth.

    Real kinds compute ``Σ p·(successor + baseline)``. The absolute kind
    computes the OR of ``successor ∨ baseline`` over branches with ``p > 0``.
    Branches with zero probability never contribute, for either kind.

    Args:
        consideration: Consideration whose rules apply.
        baseline: Worth of each successor one step later (``W[t+1](s')``).
        successor_worths: Judgement of each transition.
        probs: Probability of each transition.

    Returns:
        The aggregated worth.

    Raises:
        ValueError: On length mismatch, probabilities outside [0, 1] or non-finite input.
        TypeError: On tag mismatch.
    """
    if not len(baseline) == len(successor_worths) == len(probs):
        raise ValueError(  # noqa: TRY003
            f"aggregate needs equal lengths, got {len(baseline)}, {len(successor_worths)}, {len(probs)}"
        )
    kind = consideration.kind
    if kind.is_real:
        total = 0.0
        for base, succ, p in zip(baseline, successor_worths, probs, strict=True):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p!r} outside [0, 1]")  # noqa: TRY003
            if p == 0.0:
                continue
            total += p * (check_worth(kind, succ) + check_worth(kind, base))
        return total
    violated = False
    for base, succ, p in zip(baseline, successor_worths, probs, strict=True):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability {p!r} outside [0, 1]")  # noqa: TRY003
        if p > 0.0 and (check_worth(kind, succ) or check_worth(kind, base)):
            violated = True
    return violated


def consistent(consideration: Consideration, w: Worth, w_other: Worth) -> bool:
    """The ≈ relation: within epsilon for Real kinds, equality for Flag."""
    w = check_worth(consideration.kind, w)
    w_other = check_worth(consideration.kind, w_other)
    if consideration.kind.is_real:
        return abs(w - w_other) < consideration.epsilon
    return w == w_other


def oriented(vectors: Sequence[WorthVector], considerations: Sequence[Consideration]) -> np.ndarray:
    """Stack *vectors* into a matrix of preference scores (larger is better)."""
    if not vectors:
        return np.empty((0, len(considerations)), dtype=np.float64)
    rows = [[c.score(check_worth(c.kind, w)) for c, w in zip(considerations, v, strict=True)] for v in vectors]
    return np.asarray(rows, dtype=np.float64)


def pareto_dominates(a: WorthVector, b: WorthVector, considerations: Sequence[Consideration]) -> bool:
    """Whether *a* Pareto-dominates *b* under each consideration's own preference.

    Lexicographic theory ranks play no part here.

    Raises:
        ValueError: If the vector lengths differ from the consideration count.
        TypeError: On tag mismatch.
    """
    if len(a) != len(considerations) or len(b) != len(considerations):
        raise ValueError(f"worth vectors must have {len(considerations)} entries")  # noqa: TRY003
    scores = oriented([a, b], considerations)
    return bool(np.all(scores[0] >= scores[1]) and np.any(scores[0] > scores[1]))
