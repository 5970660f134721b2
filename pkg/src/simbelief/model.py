"""Colored simplicial complexes and polychromatic models.

A model is stored by its generating faces (usually the facets) plus a named
set of worlds.  The full face set is only materialized on demand, since
downward closures grow exponentially with facet size.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

from simbelief.errors import ModelError, QueryError

Face = frozenset  # frozenset[str] of vertex ids


def sort_key(name: str) -> tuple:
    """Natural ordering: "v2" sorts before "v10"."""
    return tuple(
        (0, int(part), "") if part.isdigit() else (1, 0, part)
        for part in re.split(r"(\d+)", str(name))
        if part
    )


def sorted_names(names: Iterable[str]) -> list[str]:
    return sorted(names, key=sort_key)


def face_label(face: Iterable[str]) -> str:
    return "{" + ", ".join(sorted_names(face)) + "}"


def default_world_name(face: Iterable[str]) -> str:
    return "_".join(sorted_names(face))


@dataclass(frozen=True)
class Vertex:
    id: str
    color: str | None


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    witness: dict = field(default_factory=dict)

    def __str__(self) -> str:
        return f"{self.rule}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"rule": v.rule, "message": v.message, "witness": v.witness}
                for v in self.violations
            ],
        }


def downward_closure(generators: Iterable[Iterable[str]]) -> frozenset[Face]:
    """All nonempty subsets of the given faces."""
    faces: set[Face] = set()
    for index, gen in enumerate(generators):
        gen = frozenset(gen)
        if not gen:
            raise ModelError(f"generator face #{index} is empty")
        if gen in faces:
            continue
        items = sorted(gen)
        for size in range(1, len(items) + 1):
            faces.update(frozenset(c) for c in itertools.combinations(items, size))
    return frozenset(faces)


def is_downward_closed(faces: Iterable[Iterable[str]]) -> bool:
    faces = {frozenset(f) for f in faces}
    if frozenset() in faces:
        return False
    for f in faces:
        for v in f:
            sub = f - {v}
            if sub and sub not in faces:
                return False
    return True


def maximal_faces(faces: Iterable[Iterable[str]]) -> frozenset[Face]:
    """Inclusion-maximal members of a family of faces."""
    by_size = sorted({frozenset(f) for f in faces}, key=len, reverse=True)
    result: list[Face] = []
    for f in by_size:
        if not any(f < g for g in result):
            result.append(f)
    return frozenset(result)


class Complex:
    """A simplicial complex given by vertices and generating faces."""

    def __init__(self, vertices: Iterable[Vertex], generators: Iterable[Iterable[str]]):
        self.vertices: Mapping[str, Vertex] = MappingProxyType({v.id: v for v in vertices})
        self.generators: frozenset[Face] = frozenset(frozenset(g) for g in generators)

    @cached_property
    def facets(self) -> frozenset[Face]:
        return maximal_faces(g for g in self.generators if g)

    @cached_property
    def faces(self) -> frozenset[Face]:
        return downward_closure(self.facets)

    def contains(self, face: Iterable[str]) -> bool:
        face = frozenset(face)
        return bool(face) and any(face <= f for f in self.facets)

    def edges(self) -> frozenset[Face]:
        """The 2-element faces (1-skeleton edges)."""
        return frozenset(
            frozenset(pair)
            for f in self.facets
            for pair in itertools.combinations(sorted(f), 2)
        )


def facets(complex_: Complex) -> frozenset[Face]:
    return complex_.facets


class PolychromaticModel:
    """Colored complex with designated worlds and a valuation on worlds.

    Worlds are addressed by name everywhere in the public API.  Instances
    are never mutated after construction, so derived data is cached freely.
    """

    def __init__(
        self,
        complex_: Complex,
        agents: Iterable[str],
        worlds: Mapping[str, Iterable[str]] | None = None,
        valuation: Mapping[str, Iterable[str]] | None = None,
        name: str = "",
    ):
        self.complex = complex_
        self.agents: frozenset[str] = frozenset(agents)
        if worlds is None:
            worlds = {default_world_name(f): f for f in complex_.facets}
        self.worlds: Mapping[str, Face] = MappingProxyType(
            {n: frozenset(w) for n, w in worlds.items()}
        )
        valuation = valuation or {}
        self.valuation: Mapping[str, frozenset[str]] = MappingProxyType(
            {n: frozenset(props) for n, props in valuation.items()}
        )
        self.name = name

    @classmethod
    def build(
        cls,
        agents: Iterable[str],
        coloring: Mapping[str, str | None],
        facets: Iterable[Iterable[str]],
        worlds: Mapping[str, Iterable[str]] | None = None,
        valuation: Mapping[str, Iterable[str]] | None = None,
        name: str = "",
    ) -> PolychromaticModel:
        vertices = [Vertex(str(v), c) for v, c in coloring.items()]
        complex_ = Complex(vertices, [[str(v) for v in f] for f in facets])
        return cls(complex_, agents, worlds, valuation, name)

    def __repr__(self) -> str:
        return (
            f"PolychromaticModel(name={self.name!r}, agents={sorted(self.agents)}, "
            f"worlds={self.world_names})"
        )

    @cached_property
    def coloring(self) -> Mapping[str, str | None]:
        return MappingProxyType({v.id: v.color for v in self.complex.vertices.values()})

    @cached_property
    def world_names(self) -> list[str]:
        return sorted_names(self.worlds)

    @cached_property
    def world_by_face(self) -> Mapping[Face, str]:
        lookup: dict[Face, str] = {}
        for n in self.world_names:
            lookup.setdefault(self.worlds[n], n)
        return MappingProxyType(lookup)

    @cached_property
    def _multiplicities(self) -> dict[str, Counter]:
        return {
            n: Counter(self.coloring.get(v) for v in face)
            for n, face in self.worlds.items()
        }

    def face(self, world: str) -> Face:
        try:
            return self.worlds[world]
        except KeyError:
            raise QueryError(f"unknown world {world!r}") from None

    def colors(self, vertices: Iterable[str]) -> frozenset[str]:
        """Color image chi(U) of a vertex set."""
        return frozenset(
            c for c in (self.coloring.get(v) for v in vertices) if c is not None
        )

    def props(self, world: str) -> frozenset[str]:
        self.face(world)
        return self.valuation.get(world, frozenset())

    def check_agent(self, agent: str) -> None:
        if agent not in self.agents:
            raise QueryError(f"unknown agent {agent!r}")

    def check_group(self, group: Iterable[str]) -> frozenset[str]:
        group = frozenset(group)
        for a in sorted(group - self.agents):
            raise QueryError(f"unknown agent {a!r}")
        return group

    def multiplicity(self, agent: str, world: str) -> int:
        self.check_agent(agent)
        self.face(world)
        return self._multiplicities[world][agent]

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    def is_valid(self) -> bool:
        return self.report.ok


def multiplicity(model: PolychromaticModel, agent: str, world: str) -> int:
    """Number of vertices of ``world`` colored ``agent``."""
    return model.multiplicity(agent, world)


def alive_worlds(model: PolychromaticModel, group: Iterable[str]) -> frozenset[str]:
    group = model.check_group(group)
    return frozenset(
        n for n, face in model.worlds.items() if group <= model.colors(face)
    )


def is_proper(model: PolychromaticModel) -> bool:
    """True iff no face repeats a color.  Checking facets is enough."""
    for f in model.complex.facets:
        colors = [model.coloring.get(v) for v in f]
        if len(colors) != len(set(colors)):
            return False
    return True


def star_condition(
    worlds: Mapping[str, Iterable[str]], coloring: Mapping[str, str | None]
) -> ValidationReport:
    """Check the transitivity-restoring condition per agent.

    For each agent a, sharing an a-vertex between X, Y and between Y, Z
    must force X and Z to share one.  The group version follows pointwise.
    Stops at the first witness.
    """
    names = sorted_names(worlds)
    faces = {n: frozenset(worlds[n]) for n in names}
    agents = sorted_names({c for c in coloring.values() if c is not None})
    for a in agents:
        colored = {n: frozenset(v for v in faces[n] if coloring.get(v) == a) for n in names}
        related = {
            x: [y for y in names if colored[x] & colored[y]] for x in names
        }
        for x in names:
            for y in related[x]:
                for z in related[y]:
                    if not colored[x] & colored[z]:
                        return ValidationReport((
                            Violation(
                                "star-condition",
                                f"agent {a}: {x} ~ {y} and {y} ~ {z} but not {x} ~ {z}",
                                {"agent": a, "worlds": [x, y, z],
                                 "faces": [sorted_names(faces[w]) for w in (x, y, z)]},
                            ),
                        ))
    return ValidationReport()


def validate(model: PolychromaticModel) -> ValidationReport:
    """Collect every structural violation of a polychromatic model."""
    out: list[Violation] = []
    cx = model.complex
    known = set(cx.vertices)

    for v in sorted_names(known):
        color = cx.vertices[v].color
        if color is None:
            out.append(Violation("uncolored-vertex", f"vertex {v} has no color", {"vertex": v}))
        elif color not in model.agents:
            out.append(Violation(
                "unknown-color", f"vertex {v} has undeclared color {color!r}",
                {"vertex": v, "color": color},
            ))

    for g in sorted(cx.generators, key=lambda f: sorted_names(f)):
        if not g:
            out.append(Violation("face-empty", "complex contains the empty face", {}))
            continue
        missing = g - known
        if missing:
            out.append(Violation(
                "unknown-vertex",
                f"face {face_label(g)} references undeclared vertices {face_label(missing)}",
                {"face": sorted_names(g), "missing": sorted_names(missing)},
            ))

    if not model.worlds:
        out.append(Violation("no-worlds", "model has no worlds", {}))

    seen: dict[Face, str] = {}
    for n in model.world_names:
        w = model.worlds[n]
        if not cx.contains(w):
            out.append(Violation(
                "world-not-face", f"world {n} = {face_label(w)} is not a face of the complex",
                {"world": n, "face": sorted_names(w)},
            ))
        if w in seen:
            out.append(Violation(
                "duplicate-world", f"worlds {seen[w]} and {n} have the same vertex set",
                {"worlds": [seen[w], n], "face": sorted_names(w)},
            ))
        else:
            seen[w] = n

    for f in sorted(cx.facets, key=lambda f: sorted_names(f)):
        if f not in seen:
            out.append(Violation(
                "facet-not-world", f"facet {face_label(f)} is not a world",
                {"facet": sorted_names(f)},
            ))

    for n in sorted_names(set(model.valuation) - set(model.worlds)):
        out.append(Violation(
            "valuation-unknown-world", f"valuation names undeclared world {n!r}",
            {"world": n},
        ))

    out.extend(star_condition(model.worlds, model.coloring).violations)
    return ValidationReport(tuple(out))


def restrict(model: PolychromaticModel, world_names: Iterable[str], name: str = "") -> PolychromaticModel:
    """Sub-model keeping only the given worlds; the complex is generated by them."""
    keep = sorted_names(set(world_names))
    for n in keep:
        model.face(n)
    worlds = {n: model.worlds[n] for n in keep}
    complex_ = Complex(model.complex.vertices.values(), worlds.values())
    valuation = {n: model.valuation[n] for n in keep if n in model.valuation}
    return PolychromaticModel(complex_, model.agents, worlds, valuation, name or model.name)
