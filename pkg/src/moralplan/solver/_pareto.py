"""Pareto pruning of worth vectors."""

from collections.abc import Iterable, Sequence

import numpy as np

from moralplan.models.worth import Consideration, WorthVector, oriented


def undominated_mask(scores: np.ndarray, decisive: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of the rows of *scores* that no other row Pareto-dominates.

    Rows are oriented preference scores (larger is better in every column) and
    must be pairwise distinct. When *decisive* is given, a dominator must be
    strictly better in at least one column it marks; the other columns only
    need to be no worse.
    """
    strict = scores if decisive is None else scores[:, decisive]
    keep = np.ones(len(scores), dtype=np.bool_)
    for i, row in enumerate(scores):
        dominators = np.all(scores >= row, axis=1) & np.any(strict > strict[i], axis=1)
        keep[i] = not dominators.any()
    return keep


def pprune(vectors: Iterable[WorthVector], considerations: Sequence[Consideration]) -> set[WorthVector]:
    """Remove every Pareto-dominated vector; duplicates collapse.

    Args:
        vectors: Candidate worth vectors.
        considerations: Considerations giving each position's preference.

    Returns:
        The maximal subset whose members no input vector dominates.
    """
    unique = list(dict.fromkeys(vectors))
    mask = undominated_mask(oriented(unique, considerations))
    return {v for v, keep in zip(unique, mask, strict=True) if keep}
