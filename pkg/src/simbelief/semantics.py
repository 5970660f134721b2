"""Indistinguishability, plausibility and truth on polychromatic models.

Relations are computed over world names.  Worlds where an agent (or some
member of a group) is dead have no successors, so every box modality is
vacuously true there.
"""

from __future__ import annotations

import threading
import weakref
from typing import Iterable

from simbelief.errors import InvalidModelError, QueryError
from simbelief.model import PolychromaticModel, sorted_names
from simbelief.syntax import (
    And, Atom, Belief, Bottom, DualSafeBelief, Formula, GroupBelief, GroupSafeBelief,
    AGENT_TYPES, GROUP_TYPES, Implies, Know, Not, Or, SafeBelief, Top,
)


def indist(model: PolychromaticModel, group: Iterable[str], x: str, y: str) -> bool:
    """X ~_G Y: every agent of the group colors a vertex shared by X and Y."""
    group = model.check_group(group)
    shared = model.face(x) & model.face(y)
    return group <= model.colors(shared)


def leq(model: PolychromaticModel, agent: str, x: str, y: str) -> bool:
    """A priori plausibility: m_a(X) <= m_a(Y)."""
    return model.multiplicity(agent, x) <= model.multiplicity(agent, y)


def plaus(model: PolychromaticModel, agent: str, x: str, y: str) -> bool:
    """X is locally at least as plausible as Y for the agent (X ⊴_a Y)."""
    return leq(model, agent, x, y) and indist(model, {agent}, x, y)


def local_plaus(model: PolychromaticModel, agent: str, x: str, y: str) -> bool:
    """X ⊵_a Y, i.e. Y is indistinguishable from X and at least as plausible."""
    return plaus(model, agent, y, x)


def strict_plaus(model: PolychromaticModel, agent: str, x: str, y: str) -> bool:
    """X ◁_a Y: indistinguishable and strictly smaller multiplicity."""
    return (
        model.multiplicity(agent, x) < model.multiplicity(agent, y)
        and indist(model, {agent}, x, y)
    )


def min_plausible(model: PolychromaticModel, agent: str, x: str) -> frozenset[str]:
    return relations(model).min_plausible(agent, x)


def group_multiplicity(model: PolychromaticModel, group: Iterable[str], x: str) -> int:
    group = model.check_group(group)
    if not group:
        raise QueryError("group must be nonempty")
    return min(model.multiplicity(a, x) for a in group)


def group_leq(model: PolychromaticModel, group: Iterable[str], x: str, y: str) -> bool:
    """Experimental group plausibility: compare minimum member multiplicities."""
    return group_multiplicity(model, group, x) <= group_multiplicity(model, group, y)


def group_min_plausible(model: PolychromaticModel, group: Iterable[str], x: str) -> frozenset[str]:
    return relations(model).group_min_plausible(frozenset(group), x)


class RelationTable:
    """Per-model cache of relations and formula extensions.

    Cache fills are idempotent, so concurrent readers at worst compute an
    entry twice.
    """

    def __init__(self, model: PolychromaticModel):
        report = model.report
        if not report.ok:
            raise InvalidModelError(report)
        self.model = model
        self.worlds = model.world_names
        self._indist: dict[frozenset, dict[str, frozenset[str]]] = {}
        self._safe: dict[str, dict[str, frozenset[str]]] = {}
        self._min: dict[str, dict[str, frozenset[str]]] = {}
        self._gsafe: dict[frozenset, dict[str, frozenset[str]]] = {}
        self._gmin: dict[frozenset, dict[str, frozenset[str]]] = {}
        self._ext: dict[Formula, frozenset[str]] = {}

    def multiplicity(self, agent: str, x: str) -> int:
        return self.model.multiplicity(agent, x)

    def indist_class(self, group: Iterable[str], x: str) -> frozenset[str]:
        """All Y with X ~_G Y."""
        group = frozenset(group)
        table = self._indist.get(group)
        if table is None:
            self.model.check_group(group)
            m = self.model
            colored = {
                w: {a: frozenset(v for v in m.worlds[w] if m.coloring.get(v) == a) for a in group}
                for w in self.worlds
            }
            table = {
                w: frozenset(
                    u for u in self.worlds
                    if all(colored[w][a] & colored[u][a] for a in group)
                )
                for w in self.worlds
            }
            self._indist[group] = table
        return table[x]

    def safe_successors(self, agent: str, x: str) -> frozenset[str]:
        """All Y with X ⊵_a Y."""
        table = self._safe.get(agent)
        if table is None:
            self.model.check_agent(agent)
            table = {
                w: frozenset(
                    u for u in self.indist_class({agent}, w)
                    if self.multiplicity(agent, u) <= self.multiplicity(agent, w)
                )
                for w in self.worlds
            }
            self._safe[agent] = table
        return table[x]

    def min_plausible(self, agent: str, x: str) -> frozenset[str]:
        table = self._min.get(agent)
        if table is None:
            self.model.check_agent(agent)
            table = {}
            for w in self.worlds:
                cls = self.indist_class({agent}, w)
                table[w] = frozenset(
                    y for y in cls
                    if not any(
                        self.multiplicity(agent, z) < self.multiplicity(agent, y)
                        for z in self.indist_class({agent}, y)
                    )
                )
            self._min[agent] = table
        self.model.face(x)
        return table[x]

    def _gmult(self, group: frozenset, x: str) -> int:
        return min(self.multiplicity(a, x) for a in group)

    def group_safe_successors(self, group: frozenset, x: str) -> frozenset[str]:
        table = self._gsafe.get(group)
        if table is None:
            table = {
                w: frozenset(
                    u for u in self.indist_class(group, w)
                    if self._gmult(group, u) <= self._gmult(group, w)
                )
                for w in self.worlds
            }
            self._gsafe[group] = table
        return table[x]

    def group_min_plausible(self, group: frozenset, x: str) -> frozenset[str]:
        table = self._gmin.get(group)
        if table is None:
            table = {
                w: frozenset(
                    y for y in self.indist_class(group, w)
                    if not any(
                        self._gmult(group, z) < self._gmult(group, y)
                        for z in self.indist_class(group, y)
                    )
                )
                for w in self.worlds
            }
            self._gmin[group] = table
        return table[x]

    def _box(self, successors, target: frozenset[str]) -> frozenset[str]:
        return frozenset(w for w in self.worlds if successors(w) <= target)

    def extension(self, f: Formula) -> frozenset[str]:
        cached = self._ext.get(f)
        if cached is not None:
            return cached
        for c in f.children():
            self.extension(c)
        if isinstance(f, GROUP_TYPES) and not f.group:
            raise QueryError("modal group must be nonempty")
        unknown = _agents_at(f) - self.model.agents
        if unknown:
            raise QueryError(f"unknown agent {sorted_names(unknown)[0]!r}")
        result = self._ext[f] = self._step(f)
        return result

    def _step(self, f: Formula) -> frozenset[str]:
        ext = self._ext
        every = frozenset(self.worlds)
        if isinstance(f, Atom):
            return frozenset(w for w in self.worlds if f.name in self.model.props(w))
        if isinstance(f, Top):
            return every
        if isinstance(f, Bottom):
            return frozenset()
        if isinstance(f, Not):
            return every - ext[f.operand]
        if isinstance(f, And):
            return ext[f.left] & ext[f.right]
        if isinstance(f, Or):
            return ext[f.left] | ext[f.right]
        if isinstance(f, Implies):
            return (every - ext[f.left]) | ext[f.right]
        if isinstance(f, Know):
            return self._box(lambda w: self.indist_class(f.group, w), ext[f.operand])
        if isinstance(f, SafeBelief):
            return self._box(lambda w: self.safe_successors(f.agent, w), ext[f.operand])
        if isinstance(f, DualSafeBelief):
            return frozenset(
                w for w in self.worlds if self.safe_successors(f.agent, w) & ext[f.operand]
            )
        if isinstance(f, Belief):
            return self._box(lambda w: self.min_plausible(f.agent, w), ext[f.operand])
        if isinstance(f, GroupSafeBelief):
            return self._box(lambda w: self.group_safe_successors(f.group, w), ext[f.operand])
        if isinstance(f, GroupBelief):
            return self._box(lambda w: self.group_min_plausible(f.group, w), ext[f.operand])
        raise TypeError(f"not a formula: {f!r}")


def _agents_at(f: Formula) -> frozenset[str]:
    if isinstance(f, GROUP_TYPES):
        return f.group
    if isinstance(f, AGENT_TYPES):
        return frozenset({f.agent})
    return frozenset()


_tables: "weakref.WeakKeyDictionary[PolychromaticModel, RelationTable]" = weakref.WeakKeyDictionary()
_lock = threading.Lock()


def relations(model: PolychromaticModel) -> RelationTable:
    """The shared relation table of a (validated) model."""
    table = _tables.get(model)
    if table is None:
        table = RelationTable(model)
        with _lock:
            table = _tables.setdefault(model, table)
    return table


def extension(model: PolychromaticModel, f: Formula) -> frozenset[str]:
    """Names of the worlds where ``f`` holds."""
    return relations(model).extension(f)


def evaluate(model: PolychromaticModel, world: str, f: Formula) -> bool:
    model.face(world)
    return world in extension(model, f)
