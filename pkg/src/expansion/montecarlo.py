"""Monte Carlo estimates of expression expectations."""

from __future__ import annotations

import numpy as np
import structlog

from src.exceptions import EnsembleError, ExpansionError
from src.quaternion import MCEstimate, adjoint_array, eval_contraction_float, qmatmul, run_chunks
from src.utils.constants import DEFAULT_MC_CHUNK_SIZE, HAAR_RESIDUAL_TOL

from .spec import ExpressionSpec

logger = structlog.get_logger()


def mc_expectation(
    spec: ExpressionSpec,
    n_value: int,
    samples: int,
    seed: int,
    *,
    chunk_size: int = DEFAULT_MC_CHUNK_SIZE,
    workers: int = 1,
    haar_tol: float = HAAR_RESIDUAL_TOL,
) -> MCEstimate:
    """Sample every colour once per draw and contract; repeated colours reuse the draw."""
    for colour in spec.colours:
        if not spec.ensemble(colour).sampleable:
            raise EnsembleError(f"colour {colour!r} has no sampler")
    ys = None
    if spec.y_matrices is not None:
        if any(y.shape != (n_value, n_value) for y in spec.y_matrices):
            raise ExpansionError(f"Y matrices must be {n_value}x{n_value}")
        ys = [np.asarray(y.to_float().data, dtype=np.float64) for y in spec.y_matrices]
    phi_re, phi_tr = spec.premaps()

    def draw(rng: np.random.Generator, batch: int) -> np.ndarray:
        samples_of = {c: spec.ensemble(c).sample(n_value, rng, batch, tol=haar_tol) for c in spec.colours}
        factors = []
        for k, colour in enumerate(spec.word):
            x = samples_of[colour]
            if spec.eps[k] == -1:
                x = adjoint_array(x)
            if ys is not None:
                x = qmatmul(x, ys[k])
            factors.append(x)
        return np.asarray(eval_contraction_float(phi_re, phi_tr, factors), dtype=np.float64)

    logger.debug("Monte Carlo expectation", symbols=spec.n, n=n_value, samples=samples, seed=seed)
    return run_chunks(draw, samples, seed, chunk_size=chunk_size, workers=workers)
