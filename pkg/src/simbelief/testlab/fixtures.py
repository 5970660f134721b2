"""Figure and proof models shipped with the package, with their expected facts.

Facts files are tab separated.  A line ``WORLD<TAB>FORMULA<TAB>true|false``
states a truth value; other lines start with a keyword:

    MIN     agent  world  {w1,w2}       most plausible worlds
    MULT    agent  world  n             multiplicity
    REL     group  X  op  Y  bool       op in indist, leq, plaus, strict
    ALIVE   group  {w1,w2}              worlds where the group is alive
    VALID   bool  [rule  agent  X,Y,Z]  validation outcome and first witness
    SUBVALID  X,Y  bool                 validity of the sub-model on those worlds
    MORPHISM  bool                      the fixture map is a morphism
    IMAGE   X  Y                        the map sends world X to world Y
    PRESERVE  depth  atoms              positive formulas up to depth are preserved
    GAIN    atom  (world agent | none)  belief-gain witness

``@<TAB>role`` switches the model the following lines refer to; ``@<TAB>map``
selects the fixture's source/target pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from simbelief.errors import QueryError
from simbelief.io import load_map, load_model
from simbelief.model import PolychromaticModel, alive_worlds, multiplicity, restrict
from simbelief.morphism import (
    VertexMap, belief_gain_witness, check_morphism, check_positive_preservation, image_world,
)
from simbelief.semantics import evaluate, indist, leq, min_plausible, plaus, strict_plaus
from simbelief.syntax import parse

KEYWORDS = {"MIN", "MULT", "REL", "ALIVE", "VALID", "SUBVALID", "MORPHISM", "IMAGE", "PRESERVE", "GAIN"}


def fixture_dir() -> Path:
    return Path(str(resources.files("simbelief") / "fixtures"))


@dataclass(frozen=True)
class Fixture:
    name: str
    models: dict  # role -> model file name
    facts: str
    map: str | None = None
    valid: bool = True

    def load(self) -> dict[str, PolychromaticModel]:
        return {role: load_model(fixture_dir() / fname) for role, fname in self.models.items()}

    def load_map(self) -> tuple[PolychromaticModel, PolychromaticModel, VertexMap]:
        if self.map is None:
            raise QueryError(f"fixture {self.name!r} has no map")
        return load_map(fixture_dir() / self.map)

    def facts_text(self) -> str:
        return (fixture_dir() / self.facts).read_text(encoding="utf-8")


FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in [
        Fixture("c1", {"main": "c1.json"}, "c1.facts"),
        Fixture("c3", {"main": "c3.json"}, "c3.facts"),
        Fixture("c5-minimal", {"main": "c5.json"}, "c5.facts"),
        Fixture("chain", {"main": "chain.json"}, "chain.facts", valid=False),
        Fixture("non-proper", {"main": "nonproper.json"}, "nonproper.facts"),
        Fixture("belief-gain", {"source": "beliefgain_source.json",
                                "target": "beliefgain_target.json"},
                "beliefgain.facts", map="beliefgain.map.json"),
        Fixture("non-monotonic", {"before": "nonmono.json", "after": "nonmono_psi.json"},
                "nonmono.facts"),
    ]
}


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise QueryError(f"unknown fixture {name!r}") from None


def fixture_models(valid_only: bool = True) -> list[PolychromaticModel]:
    """Every model of every fixture, optionally only those that should validate."""
    out = []
    for fx in FIXTURES.values():
        if valid_only and not fx.valid:
            continue
        out.extend(fx.load().values())
    return out


@dataclass
class FactResult:
    line: int
    text: str
    ok: bool
    detail: str = ""


@dataclass
class FixtureReport:
    name: str
    results: list[FactResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[FactResult]:
        return [r for r in self.results if not r.ok]


def _bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"expected true or false, got {text!r}")
    return text == "true"


def _world_set(text: str) -> frozenset[str]:
    inner = text.strip().removeprefix("{").removesuffix("}")
    return frozenset(w.strip() for w in inner.split(",") if w.strip())


def _group(text: str) -> frozenset[str]:
    return frozenset(a.strip() for a in text.split(",") if a.strip())


def _check_fact(cols: list[str], model: PolychromaticModel | None, mapping) -> tuple[bool, str]:
    head = cols[0]
    if head == "MIN":
        agent, world, expected = cols[1], cols[2], _world_set(cols[3])
        got = min_plausible(model, agent, world)
        return got == expected, f"got {{{','.join(sorted(got))}}}"
    if head == "MULT":
        got = multiplicity(model, cols[1], cols[2])
        return got == int(cols[3]), f"got {got}"
    if head == "REL":
        group, x, op, y, expected = _group(cols[1]), cols[2], cols[3], cols[4], _bool(cols[5])
        if op == "indist":
            got = indist(model, group, x, y)
        else:
            (agent,) = group
            fn = {"leq": leq, "plaus": plaus, "strict": strict_plaus}[op]
            got = fn(model, agent, x, y)
        return got == expected, f"got {str(got).lower()}"
    if head == "ALIVE":
        got = alive_worlds(model, _group(cols[1]))
        return got == _world_set(cols[2]), f"got {{{','.join(sorted(got))}}}"
    if head == "VALID":
        report = model.report
        ok = report.ok == _bool(cols[1])
        if ok and len(cols) > 2:
            hits = [v for v in report.violations if v.rule == cols[2]]
            ok = bool(hits)
            if ok and len(cols) > 4:
                w = hits[0].witness
                ok = w.get("agent") == cols[3] and w.get("worlds") == cols[4].split(",")
            return ok, f"violations: {[str(v) for v in report.violations]}"
        return ok, f"ok={report.ok}"
    if head == "SUBVALID":
        sub = restrict(model, cols[1].split(","))
        return sub.report.ok == _bool(cols[2]), f"ok={sub.report.ok}"
    if head in ("MORPHISM", "IMAGE", "PRESERVE", "GAIN"):
        if mapping is None:
            raise ValueError(f"{head} requires '@ map'")
        source, target, fmap = mapping
        if head == "MORPHISM":
            got = check_morphism(source, target, fmap).is_morphism
            return got == _bool(cols[1]), f"got {str(got).lower()}"
        if head == "IMAGE":
            got = image_world(source, target, fmap, cols[1])
            return got == cols[2], f"got {got}"
        if head == "PRESERVE":
            from simbelief.testlab.generators import all_groups, positive_formulas

            groups = all_groups(source.agents & target.agents)
            key = _pair_key(source, target)
            bad = []
            count = 0
            for f in positive_formulas(cols[2].split(","), groups, int(cols[1]), key=key):
                count += 1
                rep = check_positive_preservation(source, target, fmap, f, assume_morphism=True)
                if not rep.ok:
                    bad.append(f"{rep.formula} at {rep.violations}")
            return not bad, f"{count} classes checked; violations: {bad[:3]}"
        if head == "GAIN":
            got = belief_gain_witness(source, target, fmap, cols[1])
            want = None if cols[2] == "none" else (cols[2], cols[3])
            return got == want, f"got {got}"
    world, text, expected = cols[0], cols[1], _bool(cols[2])
    got = evaluate(model, world, parse(text, experimental=True))
    return got == expected, f"got {str(got).lower()}"


def _pair_key(source, target):
    from simbelief.semantics import extension

    return lambda f: (extension(source, f), extension(target, f))


def run_fixture(name: str) -> FixtureReport:
    fx = get_fixture(name)
    models = fx.load()
    mapping = fx.load_map() if fx.map else None
    report = FixtureReport(fx.name)
    current = next(iter(models.values()))
    in_map = False
    for lineno, raw in enumerate(fx.facts_text().splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if cols[0] == "@":
            in_map = cols[1] == "map"
            if not in_map:
                current = models[cols[1]]
            continue
        try:
            ok, detail = _check_fact(cols, current, mapping if in_map else None)
        except Exception as exc:  # a broken fact is a failed fact
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.results.append(FactResult(lineno, line.replace("\t", "  "), ok, detail))
    return report
