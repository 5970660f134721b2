"""Vertex maps between models and the morphism conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from simbelief.errors import MapError, PreconditionError
from simbelief.model import Face, PolychromaticModel, face_label, sorted_names
from simbelief.semantics import evaluate, indist
from simbelief.syntax import Atom, Formula, SafeBelief, first_non_positive, is_positive, to_text


@dataclass(frozen=True)
class VertexMap:
    source: str
    target: str
    mapping: Mapping[str, str]

    def __call__(self, vertex: str) -> str:
        try:
            return self.mapping[vertex]
        except KeyError:
            raise MapError(f"vertex {vertex!r} is not mapped") from None

    def image(self, face: Iterable[str]) -> Face:
        return frozenset(self(v) for v in face)

    def compose(self, then: VertexMap) -> VertexMap:
        """First apply ``self``, then ``then``."""
        return VertexMap(self.source, then.target, {v: then(u) for v, u in self.mapping.items()})

    @classmethod
    def identity(cls, model: PolychromaticModel) -> VertexMap:
        return cls(model.name, model.name, {v: v for v in model.complex.vertices})


def image_face(fmap: VertexMap, face: Iterable[str]) -> Face:
    return fmap.image(face)


@dataclass
class MorphismReport:
    is_simplicial: bool = True
    color_preserving: bool = True
    worlds_to_worlds: bool = True
    valuation_preserving: bool = True
    total: bool = True
    witnesses: dict = field(default_factory=dict)
    # simpliciality is checked on facets only; images of subfaces are subfaces
    simplicial_scope: str = "facets"

    @property
    def is_morphism(self) -> bool:
        return (self.total and self.is_simplicial and self.color_preserving
                and self.worlds_to_worlds and self.valuation_preserving)

    def to_dict(self) -> dict:
        return {
            "morphism": self.is_morphism,
            "total": self.total,
            "is_simplicial": self.is_simplicial,
            "color_preserving": self.color_preserving,
            "worlds_to_worlds": self.worlds_to_worlds,
            "valuation_preserving": self.valuation_preserving,
            "simplicial_scope": self.simplicial_scope,
            "witnesses": self.witnesses,
        }


def check_morphism(source: PolychromaticModel, target: PolychromaticModel,
                   fmap: VertexMap, exhaustive: bool = False) -> MorphismReport:
    """Check the four morphism conditions, recording one witness per failure.

    With ``exhaustive=True`` simpliciality is checked on every face of the
    source instead of its facets.
    """
    report = MorphismReport(simplicial_scope="all-faces" if exhaustive else "facets")

    unmapped = [v for v in sorted_names(source.complex.vertices) if v not in fmap.mapping]
    dangling = [v for v in sorted_names(source.complex.vertices)
                if v in fmap.mapping and fmap.mapping[v] not in target.complex.vertices]
    if unmapped or dangling:
        report.total = False
        report.witnesses["total"] = {"unmapped": unmapped, "dangling": dangling}
        return report

    for v in sorted_names(source.complex.vertices):
        if target.coloring.get(fmap(v)) != source.coloring.get(v):
            report.color_preserving = False
            report.witnesses["color_preserving"] = {
                "vertex": v, "image": fmap(v),
                "color": source.coloring.get(v), "image_color": target.coloring.get(fmap(v)),
            }
            break

    faces = source.complex.faces if exhaustive else source.complex.facets
    for f in sorted(faces, key=sorted_names):
        if not target.complex.contains(fmap.image(f)):
            report.is_simplicial = False
            report.witnesses["is_simplicial"] = {
                "face": sorted_names(f), "image": sorted_names(fmap.image(f)),
            }
            break

    for w in source.world_names:
        img = fmap.image(source.worlds[w])
        name = target.world_by_face.get(img)
        if name is None:
            if report.worlds_to_worlds:
                report.worlds_to_worlds = False
                report.witnesses["worlds_to_worlds"] = {"world": w, "image": sorted_names(img)}
            continue
        if report.valuation_preserving and target.props(name) != source.props(w):
            report.valuation_preserving = False
            report.witnesses["valuation_preserving"] = {
                "world": w, "image": name,
                "props": sorted(source.props(w)), "image_props": sorted(target.props(name)),
            }
    return report


def image_world(source: PolychromaticModel, target: PolychromaticModel,
                fmap: VertexMap, world: str) -> str:
    img = fmap.image(source.face(world))
    try:
        return target.world_by_face[img]
    except KeyError:
        raise MapError(f"image {face_label(img)} of world {world} is not a target world") from None


def respects_indist(source: PolychromaticModel, target: PolychromaticModel, fmap: VertexMap,
                    group: Iterable[str], x: str, y: str) -> bool:
    """One instance of: X ~_G Y implies f(X) ~_G f(Y)."""
    if not indist(source, group, x, y):
        return True
    return indist(target, group, image_world(source, target, fmap, x),
                  image_world(source, target, fmap, y))


@dataclass
class PreservationReport:
    formula: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _require_morphism(source, target, fmap) -> None:
    report = check_morphism(source, target, fmap)
    if not report.is_morphism:
        failed = [k for k, v in report.to_dict().items() if v is False]
        raise PreconditionError(f"map is not a morphism ({', '.join(failed)})")


def check_positive_preservation(source: PolychromaticModel, target: PolychromaticModel,
                                fmap: VertexMap, f: Formula,
                                assume_morphism: bool = False) -> PreservationReport:
    """Worlds X where the target satisfies ``f`` at f(X) but the source does not at X."""
    if not is_positive(f):
        raise PreconditionError(f"formula is not positive; offending subformula: "
                                f"{to_text(first_non_positive(f))}")
    if not assume_morphism:
        _require_morphism(source, target, fmap)
    report = PreservationReport(to_text(f))
    for w in source.world_names:
        report.checked += 1
        if evaluate(target, image_world(source, target, fmap, w), f) and not evaluate(source, w, f):
            report.violations.append(w)
    return report


def belief_gain_witness(source: PolychromaticModel, target: PolychromaticModel,
                        fmap: VertexMap, atom: str) -> tuple[str, str] | None:
    """First (world, agent) where safe belief in ``atom`` is gained along the map."""
    _require_morphism(source, target, fmap)
    agents = sorted_names(source.agents & target.agents)
    for w in source.world_names:
        for a in agents:
            f = SafeBelief(a, Atom(atom))
            if evaluate(target, image_world(source, target, fmap, w), f) and not evaluate(source, w, f):
                return w, a
    return None
