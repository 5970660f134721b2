"""Graphviz DOT text for the 1-skeleton of a model.

Higher faces have no DOT counterpart, so worlds are listed as comments
with their vertex sets and per-agent multiplicities.
"""

from __future__ import annotations

from simbelief.model import PolychromaticModel, face_label, sort_key, sorted_names


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def skeleton_edges(model: PolychromaticModel) -> list[tuple[str, str]]:
    """Two-element faces as sorted id pairs, in sorted order."""
    pairs = [tuple(sorted_names(e)) for e in model.complex.edges()]
    return sorted(pairs, key=lambda p: (sort_key(p[0]), sort_key(p[1])))


def to_dot(model: PolychromaticModel) -> str:
    name = model.name or "model"
    lines = [f"graph {_quote(name)} {{"]
    agents = sorted_names(model.agents)
    for w in model.world_names:
        mult = ", ".join(f"m_{a}={model.multiplicity(a, w)}" for a in agents)
        props = ",".join(sorted(model.props(w)))
        lines.append(f"  // world {w} = {face_label(model.face(w))}  {mult}  props {{{props}}}")
    for v in sorted_names(model.complex.vertices):
        color = model.coloring.get(v) or ""
        lines.append(f"  {_quote(v)} [label={_quote(f'{v}:{color}')}];")
    for u, v in skeleton_edges(model):
        lines.append(f"  {_quote(u)} -- {_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
