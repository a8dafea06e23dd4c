"""Exact toric and plane-arrangement computations for log Calabi-Yau pairs."""

from .arrangement import (
    PlanePair,
    associated_triangles,
    check_pair,
    decompose,
    lambda_invariants,
    peel,
)
from .bott import BottTowerSpec, NotATower, Stage, build_bott_tower, build_index_example, recognize_bott_tower
from .documents import dumps, from_document, parse, to_document
from .errors import LogCYError
from .fan import (
    Fan,
    orbit_strata,
    product,
    proj_bundle,
    projective_space,
    star_subdivision,
    validate_fan,
    weighted_projective,
)
from .fibration import (
    FanMorphism,
    cbf_pushforward,
    extract_line_bundles,
    fiber_type,
    is_locally_trivial,
    rebuild_bundle,
    split_fan,
)
from .lattice import lattice_membership, smith_normal_form
from .pairs import Component, NumericalPair, ToricPair, complexity, index, log_discrepancy, report

__version__ = "0.1.0"

__all__ = [
    "PlanePair",
    "associated_triangles",
    "check_pair",
    "decompose",
    "lambda_invariants",
    "peel",
    "BottTowerSpec",
    "NotATower",
    "Stage",
    "build_bott_tower",
    "build_index_example",
    "recognize_bott_tower",
    "dumps",
    "from_document",
    "parse",
    "to_document",
    "LogCYError",
    "Fan",
    "orbit_strata",
    "product",
    "proj_bundle",
    "projective_space",
    "star_subdivision",
    "validate_fan",
    "weighted_projective",
    "FanMorphism",
    "cbf_pushforward",
    "extract_line_bundles",
    "fiber_type",
    "is_locally_trivial",
    "rebuild_bundle",
    "split_fan",
    "lattice_membership",
    "smith_normal_form",
    "Component",
    "NumericalPair",
    "ToricPair",
    "complexity",
    "index",
    "log_discrepancy",
    "report",
]
