"""Independent cross-check: explicit accessibility relations and a generic evaluator.

Relations are rebuilt here from the raw vertex sets and coloring, without
going through :mod:`simbelief.semantics`.  The evaluator is a plain
recursive box/diamond evaluator over named relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from simbelief.model import PolychromaticModel
from simbelief.syntax import (
    And, Atom, Belief, Bottom, DualSafeBelief, Formula, GroupBelief, GroupSafeBelief,
    Implies, Know, Not, Or, SafeBelief, Top,
)

Pair = tuple[str, str]


@dataclass(frozen=True)
class RelationalModel:
    worlds: tuple[str, ...]
    valuation: dict[str, frozenset[str]]
    relations: dict[tuple, frozenset[Pair]]

    def successors(self, key: tuple, world: str) -> list[str]:
        return [y for (x, y) in self.relations[key] if x == world]


def _count(model: PolychromaticModel, world: str, agent: str) -> int:
    return sum(1 for v in model.worlds[world] if model.coloring.get(v) == agent)


def _shares(model: PolychromaticModel, x: str, y: str, group: Iterable[str]) -> bool:
    common = [v for v in model.worlds[x] if v in model.worlds[y]]
    return all(any(model.coloring.get(v) == a for v in common) for a in group)


def _plausibility(model, worlds, group, score) -> tuple[frozenset[Pair], frozenset[Pair]]:
    indist = {(x, y) for x in worlds for y in worlds if _shares(model, x, y, group)}
    safe = frozenset((x, y) for (x, y) in indist if score(y) <= score(x))
    strict = {(z, y) for (z, y) in indist if score(z) < score(y)}
    minimal = {y for y in worlds if not any((z, y) in strict for z in worlds)}
    best = frozenset((x, y) for (x, y) in indist if y in minimal)
    return safe, best


def to_relational(model: PolychromaticModel, groups: Iterable[Iterable[str]] = (),
                  belief_groups: Iterable[Iterable[str]] = ()) -> RelationalModel:
    """Materialize K{G} for the given groups and Sb/B for every agent.

    ``belief_groups`` additionally materializes the experimental group
    plausibility relations.
    """
    worlds = tuple(sorted(model.worlds))
    relations: dict[tuple, frozenset[Pair]] = {}
    for g in groups:
        g = frozenset(g)
        relations[("K", g)] = frozenset(
            (x, y) for x in worlds for y in worlds if _shares(model, x, y, g)
        )
    for a in sorted(model.agents):
        safe, best = _plausibility(model, worlds, [a], lambda w, a=a: _count(model, w, a))
        relations[("Sb", a)] = safe
        relations[("B", a)] = best
    for g in belief_groups:
        g = frozenset(g)
        safe, best = _plausibility(
            model, worlds, g, lambda w, g=g: min(_count(model, w, a) for a in g)
        )
        relations[("SbG", g)] = safe
        relations[("BG", g)] = best
    valuation = {w: frozenset(model.valuation.get(w, ())) for w in worlds}
    return RelationalModel(worlds, valuation, relations)


def relational_eval(rm: RelationalModel, world: str, f: Formula) -> bool:
    def box(key, body):
        return all(relational_eval(rm, y, body) for y in rm.successors(key, world))

    if isinstance(f, Atom):
        return f.name in rm.valuation[world]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not relational_eval(rm, world, f.operand)
    if isinstance(f, And):
        return relational_eval(rm, world, f.left) and relational_eval(rm, world, f.right)
    if isinstance(f, Or):
        return relational_eval(rm, world, f.left) or relational_eval(rm, world, f.right)
    if isinstance(f, Implies):
        return (not relational_eval(rm, world, f.left)) or relational_eval(rm, world, f.right)
    if isinstance(f, Know):
        return box(("K", f.group), f.operand)
    if isinstance(f, SafeBelief):
        return box(("Sb", f.agent), f.operand)
    if isinstance(f, DualSafeBelief):
        return any(relational_eval(rm, y, f.operand) for y in rm.successors(("Sb", f.agent), world))
    if isinstance(f, Belief):
        return box(("B", f.agent), f.operand)
    if isinstance(f, GroupSafeBelief):
        return box(("SbG", f.group), f.operand)
    if isinstance(f, GroupBelief):
        return box(("BG", f.group), f.operand)
    raise TypeError(f"not a formula: {f!r}")
