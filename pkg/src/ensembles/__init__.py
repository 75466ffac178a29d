"""Random matrix ensembles and their cumulant weights."""

from .cumulants import (
    CumulantFunction,
    EmpiricalCumulant,
    GinibreCumulant,
    GseCumulant,
    HaarCumulant,
    IdentityCumulant,
    WishartCumulant,
    cumulant_function,
    f_ginibre,
    f_gse,
    f_haar,
    f_identity,
    f_wishart,
)
from .manifest import EnsembleEntry, EnsembleManifest, load_manifest, parse_manifest
from .moments import MomentOracle, MomentTable, cumulants_from_moments, mixed_general_position_f
from .spec import GAUSSIAN_KINDS, EnsembleKind, EnsembleSpec

__all__ = [
    "GAUSSIAN_KINDS",
    "CumulantFunction",
    "EmpiricalCumulant",
    "EnsembleEntry",
    "EnsembleKind",
    "EnsembleManifest",
    "EnsembleSpec",
    "GinibreCumulant",
    "GseCumulant",
    "HaarCumulant",
    "IdentityCumulant",
    "MomentOracle",
    "MomentTable",
    "WishartCumulant",
    "cumulant_function",
    "cumulants_from_moments",
    "f_ginibre",
    "f_gse",
    "f_haar",
    "f_identity",
    "f_wishart",
    "load_manifest",
    "mixed_general_position_f",
    "parse_manifest",
]
