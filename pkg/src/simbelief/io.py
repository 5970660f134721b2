"""JSON model and map files.

Model file::

    {"agents": ["a", "b"],
     "vertices": [{"id": "v1", "color": "a"}, ...],
     "facets": [["v1", "v2"], ...],
     "worlds": "facets" | [{"name": "X", "vertices": ["v1", "v2"]}, ...],
     "valuation": {"X": ["p"], ...}}

Map file::

    {"source": "a.json", "target": "b.json", "map": {"v1": "u1", ...}}

Relative model paths in a map file resolve against the map file's directory.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from simbelief.errors import ModelFormatError
from simbelief.model import PolychromaticModel, default_world_name, sorted_names
from simbelief.morphism import VertexMap


def _need(data: dict, key: str, kind: type, where: str):
    if key not in data:
        raise ModelFormatError(f"{where}: missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise ModelFormatError(f"{where}: {key!r} must be a {kind.__name__}")
    return value


def _str_list(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, (str, int)) for v in value):
        raise ModelFormatError(f"{where}: expected a list of ids")
    return [str(v) for v in value]


def model_from_dict(data: Any, name: str = "") -> PolychromaticModel:
    if not isinstance(data, dict):
        raise ModelFormatError("model: top level must be an object")
    agents = _str_list(_need(data, "agents", list, "model"), "agents")

    coloring: dict[str, str | None] = {}
    for i, entry in enumerate(_need(data, "vertices", list, "model")):
        if not isinstance(entry, dict) or "id" not in entry:
            raise ModelFormatError(f"vertices[{i}]: expected an object with an 'id'")
        vid = str(entry["id"])
        color = entry.get("color")
        if color is not None and not isinstance(color, str):
            raise ModelFormatError(f"vertices[{i}]: color must be a string")
        if vid in coloring and coloring[vid] != color:
            raise ModelFormatError(f"vertices[{i}]: vertex {vid!r} declared twice with different colors")
        coloring[vid] = color

    facets = [_str_list(f, f"facets[{i}]") for i, f in enumerate(_need(data, "facets", list, "model"))]

    raw_worlds = data.get("worlds", "facets")
    worlds: dict[str, frozenset[str]] | None
    if raw_worlds == "facets":
        worlds = None
    elif isinstance(raw_worlds, list):
        worlds = {}
        for i, entry in enumerate(raw_worlds):
            if isinstance(entry, list):
                entry = {"vertices": entry}
            if not isinstance(entry, dict) or "vertices" not in entry:
                raise ModelFormatError(f"worlds[{i}]: expected an object with 'vertices'")
            face = frozenset(_str_list(entry["vertices"], f"worlds[{i}]"))
            wname = str(entry.get("name") or default_world_name(face))
            if wname in worlds and worlds[wname] != face:
                raise ModelFormatError(f"worlds[{i}]: world name {wname!r} used for two faces")
            worlds[wname] = face
    else:
        raise ModelFormatError("model: 'worlds' must be \"facets\" or a list")

    raw_val = data.get("valuation", {})
    if not isinstance(raw_val, dict):
        raise ModelFormatError("model: 'valuation' must be an object")
    valuation = {str(k): _str_list(v, f"valuation[{k!r}]") for k, v in raw_val.items()}

    return PolychromaticModel.build(agents, coloring, facets, worlds, valuation,
                                    name=str(data.get("name", name)))


def model_to_dict(model: PolychromaticModel) -> dict:
    out: dict[str, Any] = {}
    if model.name:
        out["name"] = model.name
    out["agents"] = sorted_names(model.agents)
    out["vertices"] = [
        {"id": v, "color": model.coloring[v]} for v in sorted_names(model.complex.vertices)
    ]
    out["facets"] = [sorted_names(f) for f in sorted(model.complex.facets, key=sorted_names)]
    out["worlds"] = [
        {"name": n, "vertices": sorted_names(model.worlds[n])} for n in model.world_names
    ]
    out["valuation"] = {
        n: sorted(model.valuation[n]) for n in model.world_names if model.valuation.get(n)
    }
    return out


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_model(path: str | Path) -> PolychromaticModel:
    path = Path(path)
    data = read_json(path)
    try:
        return model_from_dict(data, name=path.stem)
    except ModelFormatError as exc:
        raise ModelFormatError(f"{path}: {exc}") from None


def dump_model(model: PolychromaticModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n", encoding="utf-8")


def load_map(path: str | Path) -> tuple[PolychromaticModel, PolychromaticModel, VertexMap]:
    path = Path(path)
    data = read_json(path)
    if not isinstance(data, dict):
        raise ModelFormatError(f"{path}: top level must be an object")
    src = _need(data, "source", str, str(path))
    tgt = _need(data, "target", str, str(path))
    raw = _need(data, "map", dict, str(path))
    source = load_model(path.parent / src)
    target = load_model(path.parent / tgt)
    mapping = {str(k): str(v) for k, v in raw.items()}
    return source, target, VertexMap(source.name, target.name, mapping)
