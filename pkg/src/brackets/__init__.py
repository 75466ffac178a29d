"""Bracket diagrams and the planarity conditions that allow them."""

from .bracketize import DiagramSearch, bracketize, diagram_on, diagram_premaps
from .diagram import TAGS, Bracket, BracketDiagram, Tag, perm_of_diagram, render
from .planarity import (
    OrientationResult,
    PlanarityResult,
    UpperBound,
    brute_force_upper_bound,
    crossing_quadruple,
    glb_condition,
    is_planar,
    is_planar_on,
    on_geodesic,
    orientation,
    upper_bound_status,
)
from .zeta import ZetaMode, construct_zeta, lub_permutation

__all__ = [
    "TAGS",
    "Bracket",
    "BracketDiagram",
    "DiagramSearch",
    "OrientationResult",
    "PlanarityResult",
    "Tag",
    "UpperBound",
    "ZetaMode",
    "bracketize",
    "brute_force_upper_bound",
    "construct_zeta",
    "crossing_quadruple",
    "diagram_on",
    "diagram_premaps",
    "glb_condition",
    "is_planar",
    "is_planar_on",
    "lub_permutation",
    "on_geodesic",
    "orientation",
    "perm_of_diagram",
    "render",
    "upper_bound_status",
]
