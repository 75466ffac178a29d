"""Quaternion arithmetic, index contraction, samplers and Monte Carlo."""

from .algebra import (
    Quaternion,
    QuaternionMatrix,
    adjoint_array,
    embed_array,
    from_embedding_array,
    qconj,
    qmatmul,
    qmul,
)
from .bracket_eval import as_matrix, eval_bracket
from .contraction import (
    IndexStructure,
    eval_contraction,
    eval_contraction_exact,
    eval_contraction_float,
    index_structure,
)
from .montecarlo import MCEstimate, chunk_rng, run_chunks
from .samplers import (
    gse_array,
    ginibre_array,
    haar_array,
    haar_residual,
    sample_ginibre,
    sample_gse,
    sample_haar,
    sample_wishart,
    standard_gaussian,
    wishart_array,
)

__all__ = [
    "IndexStructure",
    "MCEstimate",
    "Quaternion",
    "QuaternionMatrix",
    "adjoint_array",
    "as_matrix",
    "chunk_rng",
    "embed_array",
    "eval_bracket",
    "eval_contraction",
    "eval_contraction_exact",
    "eval_contraction_float",
    "from_embedding_array",
    "ginibre_array",
    "gse_array",
    "haar_array",
    "haar_residual",
    "index_structure",
    "qconj",
    "qmatmul",
    "qmul",
    "run_chunks",
    "sample_ginibre",
    "sample_gse",
    "sample_haar",
    "sample_wishart",
    "standard_gaussian",
    "wishart_array",
]
