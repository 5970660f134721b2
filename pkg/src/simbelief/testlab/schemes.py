"""Validity schemes for safe belief, belief and knowledge, checked by instantiation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from simbelief.errors import QueryError
from simbelief.model import PolychromaticModel, sorted_names
from simbelief.semantics import extension
from simbelief.syntax import (
    And, Belief, DualSafeBelief, Formula, Implies, Know, SafeBelief, alive, iff, to_text,
)
from simbelief.testlab.generators import GenParams, gen_formula

Scheme = Callable[[str, Formula, Formula], Formula]


def _sb(a, f):
    return SafeBelief(a, f)


def _dual(a, f):
    return DualSafeBelief(a, f)


SCHEMES: dict[str, Scheme] = {
    "k-axiom": lambda a, p, q: Implies(_sb(a, Implies(p, q)), Implies(_sb(a, p), _sb(a, q))),
    "guarded-t": lambda a, p, q: Implies(alive(a), Implies(_sb(a, p), p)),
    "four": lambda a, p, q: Implies(_sb(a, p), _sb(a, _sb(a, p))),
    "dot-two": lambda a, p, q: Implies(_dual(a, _sb(a, p)), _sb(a, _dual(a, p))),
    "kyb-1": lambda a, p, q: Implies(Know(frozenset({a}), p), _sb(a, p)),
    "kyb-2": lambda a, p, q: Implies(_sb(a, p), Belief(a, p)),
    "belief-char": lambda a, p, q: Implies(alive(a), iff(Belief(a, p), _dual(a, _sb(a, p)))),
    "belief-conj": lambda a, p, q: Implies(And(Belief(a, p), Belief(a, q)), Belief(a, And(p, q))),
}

# Deliberately invalid: truth at worlds where the agent is dead is not guarded.
CONTROL_SCHEMES: dict[str, Scheme] = {
    "unguarded-t": lambda a, p, q: Implies(_sb(a, p), p),
}

DEFAULT_BUDGET = 64
DEFAULT_DEPTH = 3


@dataclass(frozen=True)
class Counterexample:
    scheme: str
    agent: str
    world: str
    phi: str
    psi: str


@dataclass
class SchemeReport:
    scheme: str
    instantiations: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def instantiations(model: PolychromaticModel, budget: int, depth: int = DEFAULT_DEPTH,
                   seed: int = 0) -> list[tuple[Formula, Formula]]:
    """``budget`` generated (phi, psi) pairs over the model's atoms and agents."""
    atoms = set().union(*model.valuation.values()) if model.valuation else set()
    params = GenParams(seed=seed, formula_depth=depth)
    atoms |= set(params.atoms)
    rng = random.Random(seed)
    agents = model.agents
    return [
        (gen_formula(params, atoms, agents, rng), gen_formula(params, atoms, agents, rng))
        for _ in range(budget)
    ]


def check_scheme(model: PolychromaticModel, scheme_id: str, budget: int = DEFAULT_BUDGET,
                 depth: int = DEFAULT_DEPTH, seed: int = 0,
                 pairs: list[tuple[Formula, Formula]] | None = None) -> SchemeReport:
    """Evaluate a scheme at every world for every agent and instantiation."""
    scheme = SCHEMES.get(scheme_id) or CONTROL_SCHEMES.get(scheme_id)
    if scheme is None:
        raise QueryError(f"unknown scheme {scheme_id!r}")
    if pairs is None:
        pairs = instantiations(model, budget, depth, seed)
    report = SchemeReport(scheme_id, instantiations=len(pairs))
    worlds = model.world_names
    for a in sorted_names(model.agents):
        for phi, psi in pairs:
            holds = extension(model, scheme(a, phi, psi))
            for w in worlds:
                if w not in holds:
                    report.counterexamples.append(
                        Counterexample(scheme_id, a, w, to_text(phi), to_text(psi))
                    )
    return report


def check_all(model: PolychromaticModel, budget: int = DEFAULT_BUDGET, depth: int = DEFAULT_DEPTH,
              seed: int = 0, include_control: bool = False) -> list[SchemeReport]:
    pairs = instantiations(model, budget, depth, seed)
    ids = list(SCHEMES) + (list(CONTROL_SCHEMES) if include_control else [])
    return [check_scheme(model, s, pairs=pairs) for s in ids]

