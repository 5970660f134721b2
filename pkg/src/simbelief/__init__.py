"""Knowledge and belief on polychromatic simplicial models."""

from simbelief.errors import (
    FormulaSyntaxError, InvalidModelError, MapError, ModelError, ModelFormatError,
    PreconditionError, QueryError, SimbeliefError,
)
from simbelief.io import load_map, load_model, model_from_dict, model_to_dict
from simbelief.model import (
    Complex, PolychromaticModel, ValidationReport, Vertex, Violation, alive_worlds,
    downward_closure, facets, is_proper, multiplicity, restrict, star_condition, validate,
)
from simbelief.morphism import (
    MorphismReport, VertexMap, belief_gain_witness, check_morphism, check_positive_preservation,
    image_face, respects_indist,
)
from simbelief.semantics import (
    RelationTable, evaluate, extension, group_leq, group_min_plausible, indist, leq,
    local_plaus, min_plausible, plaus, relations, strict_plaus,
)
from simbelief.syntax import Formula, is_positive, parse, subformulas, to_text

__version__ = "0.1.0"

__all__ = [
    "alive_worlds",
    "belief_gain_witness",
    "check_morphism",
    "check_positive_preservation",
    "Complex",
    "downward_closure",
    "evaluate",
    "extension",
    "facets",
    "Formula",
    "FormulaSyntaxError",
    "group_leq",
    "group_min_plausible",
    "image_face",
    "indist",
    "InvalidModelError",
    "is_positive",
    "is_proper",
    "leq",
    "load_map",
    "load_model",
    "local_plaus",
    "MapError",
    "min_plausible",
    "model_from_dict",
    "model_to_dict",
    "ModelError",
    "ModelFormatError",
    "MorphismReport",
    "multiplicity",
    "parse",
    "plaus",
    "PolychromaticModel",
    "PreconditionError",
    "QueryError",
    "relations",
    "RelationTable",
    "respects_indist",
    "restrict",
    "SimbeliefError",
    "star_condition",
    "strict_plaus",
    "subformulas",
    "to_text",
    "validate",
    "ValidationReport",
    "Vertex",
    "VertexMap",
    "Violation",
]
