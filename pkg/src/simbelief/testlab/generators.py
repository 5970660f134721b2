"""Seeded random models, formulas and morphisms, plus positive-formula enumeration."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from typing import Callable, Hashable, Iterable, Iterator

from simbelief.errors import SimbeliefError
from simbelief.model import (
    Complex, PolychromaticModel, Vertex, default_world_name, maximal_faces, sorted_names,
    star_condition,
)
from simbelief.morphism import VertexMap
from simbelief.syntax import (
    BOTTOM, TOP, And, Atom, Belief, DualSafeBelief, Formula, GroupBelief, GroupSafeBelief,
    Implies, Know, Not, Or, SafeBelief, is_propositional,
)

STAR_RETRIES = 200
ALL_MODALITIES = frozenset({"not", "and", "or", "implies", "K", "Sb", "Dual", "B"})
POSITIVE_MODALITIES = frozenset({"not", "and", "or", "K"})
EXPERIMENTAL_MODALITIES = frozenset({"SbG", "BG"})


class GeneratorError(SimbeliefError):
    pass


@dataclass(frozen=True)
class GenParams:
    max_vertices: int = 6
    max_agents: int = 3
    max_facet_size: int = 4
    max_worlds: int = 5
    atom_pool: int = 2
    formula_depth: int = 3
    modalities: frozenset = ALL_MODALITIES
    seed: int = 0
    proper: bool = False

    def __post_init__(self):
        for name in ("max_vertices", "max_agents", "max_facet_size", "max_worlds", "atom_pool"):
            if getattr(self, name) < 1:
                raise GeneratorError(f"{name} must be at least 1")
        if self.formula_depth < 0:
            raise GeneratorError("formula_depth must be nonnegative")

    @property
    def atoms(self) -> list[str]:
        base = "pqrstu"
        return [base[i] if i < len(base) else f"p{i}" for i in range(self.atom_pool)]

    def with_seed(self, seed: int) -> GenParams:
        return replace(self, seed=seed)


def agent_names(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def _random_subface(rng: random.Random, face: frozenset) -> frozenset:
    items = sorted_names(face)
    size = rng.randint(1, len(items))
    return frozenset(rng.sample(items, size))


def _finish(rng: random.Random, params: GenParams, agents: list[str], coloring: dict[str, str],
            facets: Iterable[frozenset], faces: Iterable[frozenset]) -> PolychromaticModel:
    worlds = {default_world_name(f): f for f in faces}
    valuation = {
        n: [p for p in params.atoms if rng.random() < 0.5] for n in sorted_names(worlds)
    }
    used = set().union(*worlds.values())
    complex_ = Complex([Vertex(v, c) for v, c in coloring.items() if v in used], facets)
    return PolychromaticModel(complex_, agents, worlds, valuation, name=f"gen{params.seed}")


def _assemble(rng: random.Random, params: GenParams, agents: list[str],
              coloring: dict[str, str], facets: list[frozenset]) -> PolychromaticModel:
    facets = sorted(maximal_faces(facets), key=sorted_names)[: params.max_worlds]
    faces = set(facets)
    for f in facets:
        if len(faces) >= params.max_worlds:
            break
        if len(f) > 1 and rng.random() < 0.5:
            faces.add(_random_subface(rng, f))
    return _finish(rng, params, agents, coloring, facets, faces)


def _improper_attempt(rng: random.Random, params: GenParams) -> PolychromaticModel:
    """Grow a world set face by face, dropping any face that breaks (⋆)."""
    agents = agent_names(rng.randint(1, params.max_agents))
    n = rng.randint(min(2, params.max_vertices), params.max_vertices)
    coloring = {f"v{i}": rng.choice(agents) for i in range(1, n + 1)}
    ids = list(coloring)
    candidates = []
    for _ in range(2 * params.max_worlds):
        size = rng.randint(1, min(params.max_facet_size, n))
        face = frozenset(rng.sample(ids, size))
        candidates.append(face)
        if size > 1 and rng.random() < 0.4:
            candidates.append(_random_subface(rng, face))
    chosen: set[frozenset] = set()
    for face in candidates:
        if len(chosen) >= params.max_worlds:
            break
        trial = chosen | {face}
        named = {default_world_name(f): f for f in trial}
        if star_condition(named, coloring).ok:
            chosen = trial
    return _finish(rng, params, agents, coloring, maximal_faces(chosen), chosen)


def _proper_model(rng: random.Random, params: GenParams) -> PolychromaticModel:
    agents = agent_names(rng.randint(1, params.max_agents))
    n = rng.randint(1, params.max_vertices)
    coloring = {f"v{i}": rng.choice(agents) for i in range(1, n + 1)}
    by_color: dict[str, list[str]] = {}
    for v, c in coloring.items():
        by_color.setdefault(c, []).append(v)
    colors = sorted(by_color)
    facets = []
    for _ in range(rng.randint(1, params.max_worlds)):
        size = rng.randint(1, min(params.max_facet_size, len(colors)))
        chosen = rng.sample(colors, size)
        facets.append(frozenset(rng.choice(by_color[c]) for c in chosen))
    return _assemble(rng, params, agents, coloring, facets)


def gen_model(params: GenParams) -> PolychromaticModel:
    """A random model that passes validation; deterministic in the seed."""
    rng = random.Random(params.seed)
    if not params.proper:
        for _ in range(STAR_RETRIES):
            model = _improper_attempt(rng, params)
            if model.report.ok:
                return model
    model = _proper_model(rng, params)
    if not model.report.ok:
        raise GeneratorError(f"proper fallback failed validation: {model.report.violations}")
    return model


def gen_models(params: GenParams, count: int, start: int = 0) -> Iterator[PolychromaticModel]:
    for seed in range(start, start + count):
        yield gen_model(params.with_seed(seed))


# -- formulas ------------------------------------------------------------------

def _group(rng: random.Random, agents: list[str]) -> frozenset:
    size = rng.randint(1, len(agents))
    return frozenset(rng.sample(agents, size))


def _leaf(rng: random.Random, atoms: list[str]) -> Formula:
    r = rng.random()
    if r < 0.1:
        return TOP
    if r < 0.2:
        return BOTTOM
    return Atom(rng.choice(atoms))


def _random_formula(rng, atoms, agents, depth, ops: list[str]) -> Formula:
    if depth == 0 or not ops or rng.random() < 0.2:
        return _leaf(rng, atoms)
    op = rng.choice(ops)
    sub = lambda: _random_formula(rng, atoms, agents, depth - 1, ops)  # noqa: E731
    if op == "not":
        return Not(sub())
    if op == "and":
        return And(sub(), sub())
    if op == "or":
        return Or(sub(), sub())
    if op == "implies":
        return Implies(sub(), sub())
    if op == "K":
        return Know(_group(rng, agents), sub())
    if op == "Sb":
        return SafeBelief(rng.choice(agents), sub())
    if op == "Dual":
        return DualSafeBelief(rng.choice(agents), sub())
    if op == "B":
        return Belief(rng.choice(agents), sub())
    if op == "SbG":
        return GroupSafeBelief(_group(rng, agents), sub())
    if op == "BG":
        return GroupBelief(_group(rng, agents), sub())
    raise GeneratorError(f"unknown modality {op!r}")


def _random_positive(rng, atoms, agents, depth) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        return _random_formula(rng, atoms, agents, depth, ["not", "and"])
    op = rng.choice(["and", "or", "K"])
    if op == "K":
        return Know(_group(rng, agents), _random_positive(rng, atoms, agents, depth - 1))
    left = _random_positive(rng, atoms, agents, depth - 1)
    right = _random_positive(rng, atoms, agents, depth - 1)
    return And(left, right) if op == "and" else Or(left, right)


def gen_formula(params: GenParams, atoms: Iterable[str], agents: Iterable[str],
                rng: random.Random | None = None, positive: bool = False) -> Formula:
    """Random formula of depth at most ``params.formula_depth``.

    Only constructors named in ``params.modalities`` are used.  With
    ``positive=True`` the result lies in the positive fragment.
    """
    rng = rng or random.Random(params.seed)
    atoms = sorted_names(set(atoms)) or ["p"]
    agents = sorted_names(set(agents))
    if positive:
        return _random_positive(rng, atoms, agents, params.formula_depth)
    ops = sorted(params.modalities)
    if not agents:
        ops = [o for o in ops if o in ("not", "and", "or", "implies")]
    return _random_formula(rng, atoms, agents, params.formula_depth, ops)


def gen_formulas(params: GenParams, atoms, agents, count: int, positive: bool = False) -> list[Formula]:
    rng = random.Random(params.seed)
    return [gen_formula(params, atoms, agents, rng, positive) for _ in range(count)]


# -- morphisms -----------------------------------------------------------------

def _morphism_attempt(rng: random.Random, params: GenParams, source: PolychromaticModel):
    mapping: dict[str, str] = {}
    target_colors: dict[str, str] = {}
    by_color: dict[str, list[str]] = {}
    for v in sorted_names(source.complex.vertices):
        by_color.setdefault(source.coloring[v], []).append(v)
    for color in sorted(by_color):
        verts = by_color[color]
        k = rng.randint(1, len(verts))
        reps = [f"u{color}{i}" for i in range(k)]
        for v in verts:
            mapping[v] = rng.choice(reps)
        for r in reps:
            target_colors[r] = color

    images = [frozenset(mapping[v] for v in f) for f in source.complex.facets]
    worlds = {frozenset(mapping[v] for v in w) for w in source.worlds.values()}
    # occasionally extra target structure the source does not reach
    if rng.random() < 0.5:
        extra = f"x{rng.randint(0, 9)}"
        target_colors[extra] = rng.choice(sorted(source.agents))
        base = rng.choice(sorted(images, key=sorted_names))
        face = _random_subface(rng, base) | {extra}
        images.append(face)
        worlds.add(face)
    facets = maximal_faces(images)
    worlds |= set(facets)
    names = {default_world_name(w): w for w in worlds}
    valuation = {n: [p for p in params.atoms if rng.random() < 0.5] for n in sorted_names(names)}
    complex_ = Complex([Vertex(v, c) for v, c in target_colors.items()], facets)
    target = PolychromaticModel(complex_, source.agents, names, valuation, name=f"tgt{params.seed}")

    # pull the valuation back so that condition 4 holds
    lookup = {w: n for n, w in names.items()}
    pulled = {
        n: valuation[lookup[frozenset(mapping[v] for v in w)]]
        for n, w in source.worlds.items()
    }
    source = PolychromaticModel(source.complex, source.agents, source.worlds, pulled,
                                name=source.name)
    return source, target, VertexMap(source.name, target.name, mapping)


def gen_morphism(params: GenParams) -> tuple[PolychromaticModel, PolychromaticModel, VertexMap]:
    """Random (source, target, morphism) triple; both models validate."""
    rng = random.Random(params.seed)
    for attempt in range(STAR_RETRIES):
        source = gen_model(params.with_seed(params.seed * 1000 + attempt))
        src, tgt, fmap = _morphism_attempt(rng, params, source)
        if tgt.report.ok:
            return src, tgt, fmap
    source = gen_model(replace(params, proper=True))
    return source, source, VertexMap.identity(source)


# -- positive enumeration ----------------------------------------------------

def all_groups(agents: Iterable[str]) -> list[frozenset]:
    agents = sorted_names(set(agents))
    return [
        frozenset(c)
        for size in range(1, len(agents) + 1)
        for c in itertools.combinations(agents, size)
    ]


def positive_formulas(atoms: Iterable[str], groups: Iterable[frozenset], max_depth: int,
                      key: Callable[[Formula], Hashable] | None = None) -> Iterator[Formula]:
    """Every positive formula up to ``max_depth`` (one per class when ``key`` is set).

    Level d+1 adds negations of propositional level-d formulas, conjunctions
    and disjunctions of level-d pairs, and ``K{G}`` of level-d formulas.
    With a ``key`` (e.g. the extensions in a fixed set of models) only one
    representative per key is kept, and propositional and modal formulas
    are kept apart so negation still reaches every propositional class.
    Since truth is compositional, checking representatives covers the
    whole family.
    """
    groups = list(groups)
    keyfn = (lambda f: f) if key is None else key
    seen: set = set()
    level: list[Formula] = []

    def admit(f: Formula) -> bool:
        k = (is_propositional(f), keyfn(f))
        if k in seen:
            return False
        seen.add(k)
        level.append(f)
        return True

    for f in [TOP, BOTTOM] + [Atom(a) for a in sorted_names(set(atoms))]:
        if admit(f):
            yield f
    for _ in range(max_depth):
        prev = list(level)
        fresh = []
        for f in prev:
            if is_propositional(f):
                fresh.append(Not(f))
        for f, g in itertools.product(prev, repeat=2):
            fresh.append(And(f, g))
            fresh.append(Or(f, g))
        for f in prev:
            for grp in groups:
                fresh.append(Know(grp, f))
        for f in fresh:
            if admit(f):
                yield f
