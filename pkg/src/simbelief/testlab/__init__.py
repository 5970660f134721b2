"""Fixtures, generators, the relational oracle and the scheme checker."""

from simbelief.testlab.fixtures import FIXTURES, Fixture, fixture_models, get_fixture, run_fixture
from simbelief.testlab.generators import (
    GenParams, all_groups, gen_formula, gen_formulas, gen_model, gen_models, gen_morphism,
    positive_formulas,
)
from simbelief.testlab.oracle import RelationalModel, relational_eval, to_relational
from simbelief.testlab.schemes import CONTROL_SCHEMES, SCHEMES, check_all, check_scheme

__all__ = [
    "all_groups",
    "check_all",
    "check_scheme",
    "CONTROL_SCHEMES",
    "Fixture",
    "fixture_models",
    "FIXTURES",
    "gen_formula",
    "gen_formulas",
    "gen_model",
    "gen_models",
    "gen_morphism",
    "GenParams",
    "get_fixture",
    "positive_formulas",
    "relational_eval",
    "RelationalModel",
    "run_fixture",
    "SCHEMES",
    "to_relational",
]
