"""Search state of a single MPlan run."""

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import networkx as nx
import numpy as np

from moralplan.models.domain import Heuristic
from moralplan.models.mmmdp import Mmmdp, StateTime
from moralplan.models.worth import Consideration, WorthVector, oriented
from moralplan.solver._pareto import undominated_mask

Binding = frozenset[tuple[StateTime, WorthVector, bool]]


class Entry(NamedTuple):
    """A stored worth vector plus whether a goal stays reachable with positive probability.

    Outside shortest-path problems ``proper`` is always ``True``. ``binding``
    names the ``(worth, proper)`` the entry relies on at every state-time below
    it that some other branch of the problem can reach as well; two entries
    only compete when their bindings are equal.
    """

    worth: WorthVector
    proper: bool
    binding: Binding = frozenset()


@dataclass(frozen=True)
class Producer:
    """How an :class:`Entry` was generated: the action and one entry per successor.

    ``choice`` is aligned with ``Mmmdp.successors(s, action)``.
    """

    action: int
    choice: tuple[Entry, ...]


def prune_entries(
    entries: Sequence[Entry], considerations: Sequence[Consideration], *, interior: bool = False
) -> list[Entry]:
    """Pareto-prune distinct entries, with ``proper=True`` preferred, keeping input order.

    Entries are pruned within groups of equal binding. With *interior* set a
    dominator must also be strictly better in some real-valued consideration;
    a win on flags alone may become a tie at the root.
    """
    groups: dict[Binding, list[int]] = {}
    for i, entry in enumerate(entries):
        groups.setdefault(entry.binding, []).append(i)
    decisive = np.asarray([c.kind.is_real for c in considerations] + [False]) if interior else None
    keep = np.ones(len(entries), dtype=np.bool_)
    for members in groups.values():
        if len(members) <= 1:
            continue
        group = [entries[i] for i in members]
        scores = oriented([e.worth for e in group], considerations)
        flags = np.asarray([[0.0 if e.proper else -1.0] for e in group], dtype=np.float64)
        keep[members] = undominated_mask(np.hstack([scores, flags]), decisive)
    return [e for e, k in zip(entries, keep, strict=True) if k]


def state_time_graph(model: Mmmdp) -> nx.DiGraph:
    """Every state-time reachable from ``(s0, 0)`` under any actions, with one edge per positive successor."""
    root = (model.s0, 0)
    graph = nx.DiGraph()
    graph.add_node(root)
    layer = {model.s0}
    for t in range(model.horizon):
        following: set[int] = set()
        for s in sorted(layer):
            for a in model.applicable(s):
                for s2, _ in model.successors(s, a):
                    graph.add_edge((s, t), (s2, t + 1))
                    following.add(s2)
        layer = following
    return graph


def _sharing(model: Mmmdp) -> tuple[frozenset[StateTime], dict[StateTime, frozenset[StateTime]]]:
    """State-times with a choice somewhere below them, and the dominators of every state-time."""
    graph = state_time_graph(model)
    order = list(nx.topological_sort(graph))
    free: dict[StateTime, bool] = {}
    for node in reversed(order):
        s, t = node
        free[node] = t >= model.horizon or (
            len(model.applicable(s)) == 1 and all(free[child] for child in graph.successors(node))
        )
    idom = nx.immediate_dominators(graph, (model.s0, 0))
    dominators: dict[StateTime, frozenset[StateTime]] = {}
    for node in order:
        parent = idom.get(node, node)
        dominators[node] = frozenset({node}) if parent == node else dominators[parent] | {node}
    return frozenset(n for n, f in free.items() if not f), dominators


@dataclass
class SolverWorkspace:
    """The best partial sub-graph and the vector table of one solve.

    Attributes:
        model: The problem being solved.
        heuristic: Estimates used to seed unexplored state-times.
        vecW: Stored undominated entries per state-time.
        alpha: Actions that produced at least one stored entry, per state-time.
        interior: Expanded state-times.
        fringe: Unexpanded state-times of the sub-graph.
        producers: For each stored entry, every (action, successor choice) that yields it.
        tracked: State-times with a choice at or below them; only these enter bindings.
        dominators: For every state-time, the state-times all paths from the root pass through.
    """

    model: Mmmdp
    heuristic: Heuristic
    vecW: dict[StateTime, tuple[Entry, ...]] = field(default_factory=dict)  # noqa: N815
    alpha: dict[StateTime, frozenset[int]] = field(default_factory=dict)
    interior: set[StateTime] = field(default_factory=set)
    fringe: set[StateTime] = field(default_factory=set)
    producers: dict[StateTime, dict[Entry, tuple[Producer, ...]]] = field(default_factory=dict)
    tracked: frozenset[StateTime] = frozenset()
    dominators: dict[StateTime, frozenset[StateTime]] = field(default_factory=dict)

    @property
    def root(self) -> StateTime:
        """The initial state-time ``(s0, 0)``."""
        return (self.model.s0, 0)

    @classmethod
    def seed(cls, model: Mmmdp, heuristic: Heuristic) -> "SolverWorkspace":
        """A workspace whose fringe holds the root, with every action allowed there."""
        tracked, dominators = _sharing(model)
        workspace = cls(model=model, heuristic=heuristic, tracked=tracked, dominators=dominators)
        workspace.fringe.add(workspace.root)
        workspace.alpha[workspace.root] = frozenset(model.applicable(model.s0))
        workspace.vecW[workspace.root] = (workspace.seed_entry(workspace.root),)
        return workspace

    def seed_entry(self, node: StateTime) -> Entry:
        """Identity at the horizon, the heuristic estimate elsewhere."""
        s, t = node
        if t >= self.model.horizon:
            worth = tuple(c.identity for c in self.model.considerations)
            ssp = self.model.ssp
            return Entry(worth, s in ssp.goals if ssp is not None else True)
        return Entry(self.heuristic.vector(s, t), True)

    def entries(self, node: StateTime) -> tuple[Entry, ...]:
        """Stored entries at *node*, seeding it on first access."""
        if node not in self.vecW:
            self.vecW[node] = (self.seed_entry(node),)
        return self.vecW[node]

    def bind(self, node: StateTime, choice: Iterable[tuple[StateTime, Entry]]) -> Binding | None:
        """The binding of an entry at *node* built from one ``(child, entry)`` per successor.

        Returns ``None`` when two successors rely on different entries at the
        same state-time. State-times every path reaches through *node* are
        settled here and leave the binding.
        """
        relied: dict[StateTime, tuple[WorthVector, bool]] = {}
        for child, entry in choice:
            pins = entry.binding | {(child, entry.worth, entry.proper)} if child in self.tracked else entry.binding
            for pinned, worth, proper in pins:
                if relied.setdefault(pinned, (worth, proper)) != (worth, proper):
                    return None
        return frozenset(
            (m, worth, proper) for m, (worth, proper) in relied.items() if node not in self.dominators[m]
        )

    def expand(self, node: StateTime) -> None:
        """Move *node* from the fringe to the interior and add its successors to the fringe."""
        s, t = node
        self.fringe.discard(node)
        self.interior.add(node)
        if node not in self.alpha:
            self.alpha[node] = frozenset(self.model.applicable(s))
        if t + 1 >= self.model.horizon:
            return
        for a in self.model.applicable(s):
            for s2, _ in self.model.successors(s, a):
                child = (s2, t + 1)
                if child not in self.interior and child not in self.fringe:
                    self.fringe.add(child)
                    self.entries(child)
                    self.alpha.setdefault(child, frozenset(self.model.applicable(s2)))

    def reachable(self) -> set[StateTime]:
        """Sub-graph state-times reachable from the root through the current ``alpha``.

        Fringe nodes are included but not traversed.
        """
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            node = queue.popleft()
            if node not in self.interior:
                continue
            s, t = node
            if t + 1 >= self.model.horizon:
                continue
            for a in sorted(self.alpha.get(node, ())):
                for s2, _ in self.model.successors(s, a):
                    child = (s2, t + 1)
                    if child not in seen and (child in self.interior or child in self.fringe):
                        seen.add(child)
                        queue.append(child)
        return seen

    def table(self) -> dict[StateTime, tuple[WorthVector, ...]]:
        """The worth part of :attr:`vecW`."""
        return {node: tuple(e.worth for e in entries) for node, entries in self.vecW.items()}

    def flags(self) -> dict[StateTime, tuple[bool, ...]]:
        """The sorted properness flags stored at each state-time."""
        return {node: tuple(sorted(e.proper for e in entries)) for node, entries in self.vecW.items()}


def _raw(vectors: Sequence[WorthVector]) -> np.ndarray:
    return np.asarray([[float(w) for w in v] for v in vectors], dtype=np.float64)


def _all_matched(a: np.ndarray, b: np.ndarray, tolerance: np.ndarray) -> bool:
    """Whether every row of *a* is within *tolerance* of some row of *b*, column by column."""
    close = np.all(np.abs(a[:, None, :] - b[None, :, :]) < tolerance, axis=2)
    return bool(np.all(close.any(axis=1)))


def converged(
    vecW: Mapping[StateTime, Iterable[WorthVector]],
    vecW_prev: Mapping[StateTime, Iterable[WorthVector]],
    considerations: Sequence[Consideration],
) -> bool:
    """The ≈ relation between two vector tables, checked in both directions.

    A state-time present in only one table means the tables differ.
    """
    if vecW.keys() != vecW_prev.keys():
        return False
    # Flags must match exactly: a tolerance of one half on 0/1 values.
    tolerance = np.asarray([c.epsilon if c.kind.is_real else 0.5 for c in considerations], dtype=np.float64)
    for node, vectors in vecW.items():
        current, previous = list(vectors), list(vecW_prev[node])
        if set(current) == set(previous):
            continue
        if not current or not previous:
            return False
        a, b = _raw(current), _raw(previous)
        if not (_all_matched(a, b, tolerance) and _all_matched(b, a, tolerance)):
            return False
    return True
