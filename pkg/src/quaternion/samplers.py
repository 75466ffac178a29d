"""Random quaternionic matrices.

All samplers draw from an explicit ``numpy.random.Generator`` and accept an
optional ``batch`` count; batched draws return float arrays of shape
(batch, N, N, 4), single draws return a :class:`QuaternionMatrix`.
"""

from __future__ import annotations

import numpy as np
import structlog

from src.exceptions import DimensionMismatchError, QuaternionError
from src.utils.constants import HAAR_RESIDUAL_TOL

from .algebra import QuaternionMatrix, adjoint_array, qconj, qmatmul, qmul

logger = structlog.get_logger()

# Each real component of a standard quaternionic Gaussian has variance 1/4.
COMPONENT_SCALE = 0.5


def _check_dim(*dims: int) -> None:
    if any(d <= 0 for d in dims):
        raise QuaternionError(f"matrix dimensions must be positive, got {dims}")


def _wrap(data: np.ndarray, batch: int | None) -> QuaternionMatrix | np.ndarray:
    return QuaternionMatrix(data[0]) if batch is None else data


def standard_gaussian(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Float quaternion array of the given shape with i.i.d. standard entries."""
    return rng.normal(0.0, COMPONENT_SCALE, size=(*shape, 4))


def ginibre_array(n: int, rng: np.random.Generator, batch: int = 1) -> np.ndarray:
    _check_dim(n, batch)
    return standard_gaussian(rng, (batch, n, n)) / np.sqrt(n)


def gse_array(n: int, rng: np.random.Generator, batch: int = 1) -> np.ndarray:
    _check_dim(n, batch)
    g = standard_gaussian(rng, (batch, n, n))
    return (g + adjoint_array(g)) / np.sqrt(2 * n)


def wishart_array(n: int, d: QuaternionMatrix, rng: np.random.Generator, batch: int = 1) -> np.ndarray:
    """(1/N) G* D G with G of size M×N and D the fixed M×M weight."""
    if not d.is_square:
        raise DimensionMismatchError(f"Wishart weight must be square, got {d.shape}")
    m = d.rows
    _check_dim(n, m, batch)
    g = standard_gaussian(rng, (batch, m, n))
    weight = np.asarray(d.to_float().data, dtype=np.float64)
    return qmatmul(qmatmul(adjoint_array(g), weight), g) / n


def _inner(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """⟨u, v⟩ = Σ conj(u_a) v_a over the row axis; u, v of shape (batch, N, 4)."""
    return qmul(qconj(u), v).sum(axis=-2)


def _orthonormalize(columns: np.ndarray) -> np.ndarray:
    """Modified Gram–Schmidt on columns[:, k] for k = 0..N−1; columns is (batch, N, N, 4)."""
    q = columns.copy()
    n = q.shape[-2]
    for k in range(n):
        v = q[..., :, k, :]
        for j in range(k):
            u = q[..., :, j, :]
            v = v - qmul(u, _inner(u, v)[..., None, :])
        norm = np.sqrt(np.sum(v**2, axis=(-2, -1)))
        if np.any(norm == 0):
            raise QuaternionError("degenerate Gaussian draw in Haar sampler")
        q[..., :, k, :] = v / norm[..., None, None]
    return q


def haar_residual(u: np.ndarray) -> float:
    """max |U*U − I| over the batch, in quaternion components."""
    n = u.shape[-2]
    identity = np.zeros((n, n, 4))
    identity[np.arange(n), np.arange(n), 0] = 1.0
    return float(np.max(np.abs(qmatmul(adjoint_array(u), u) - identity)))


def haar_array(n: int, rng: np.random.Generator, batch: int = 1, tol: float = HAAR_RESIDUAL_TOL) -> np.ndarray:
    """Haar-distributed Sp(N) matrices by orthonormalizing the columns of a Ginibre draw."""
    _check_dim(n, batch)
    u = _orthonormalize(standard_gaussian(rng, (batch, n, n)))
    residual = haar_residual(u)
    if residual > tol:
        logger.debug("Re-orthonormalizing Haar draw", residual=residual)
        u = _orthonormalize(u)
    return u


def sample_ginibre(n: int, rng: np.random.Generator, batch: int | None = None) -> QuaternionMatrix | np.ndarray:
    return _wrap(ginibre_array(n, rng, batch or 1), batch)


def sample_gse(n: int, rng: np.random.Generator, batch: int | None = None) -> QuaternionMatrix | np.ndarray:
    return _wrap(gse_array(n, rng, batch or 1), batch)


def sample_wishart(
    n: int, d: QuaternionMatrix, rng: np.random.Generator, batch: int | None = None
) -> QuaternionMatrix | np.ndarray:
    return _wrap(wishart_array(n, d, rng, batch or 1), batch)


def sample_haar(n: int, rng: np.random.Generator, batch: int | None = None) -> QuaternionMatrix | np.ndarray:
    return _wrap(haar_array(n, rng, batch or 1), batch)
