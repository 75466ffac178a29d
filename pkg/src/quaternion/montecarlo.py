"""Chunked Monte Carlo harness with reproducible per-chunk seeding."""

from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

import numpy as np
import structlog

from src.exceptions import QuaternionError
from src.utils.constants import DEFAULT_MC_CHUNK_SIZE

logger = structlog.get_logger()

ROUNDING_TOL = 1e-12

# draw(rng, batch) -> values of shape (batch,), (batch, 4) or (batch, N, N, 4)
Draw = Callable[[np.random.Generator, int], np.ndarray]


@dataclass(frozen=True)
class MCEstimate:
    """Sample mean with its standard error, componentwise for quaternion and matrix estimands."""

    mean: float | np.ndarray
    std_error: float | np.ndarray
    sample_count: int
    seed: int

    @property
    def is_quaternion(self) -> bool:
        return np.ndim(self.mean) == 1

    def z_score(self, exact: float | np.ndarray) -> float:
        """Largest componentwise |mean − exact| / SE; 0 where both agree to rounding."""
        diff = np.abs(np.asarray(self.mean, dtype=np.float64) - np.asarray(exact, dtype=np.float64))
        se = np.asarray(self.std_error, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(diff <= ROUNDING_TOL, 0.0, diff / se)
        return float(np.max(z))

    def to_dict(self) -> dict[str, Any]:
        return {
            "mean": _plain(self.mean),
            "se": _plain(self.std_error),
            "n": self.sample_count,
            "seed": self.seed,
        }


def _plain(x: float | np.ndarray) -> float | list[Any]:
    return np.asarray(x, dtype=np.float64).tolist() if np.ndim(x) else float(x)


@dataclass(frozen=True)
class _Moments:
    count: int
    mean: np.ndarray
    m2: np.ndarray

    @classmethod
    def of(cls, values: np.ndarray) -> _Moments:
        mean = values.mean(axis=0)
        return cls(len(values), mean, ((values - mean) ** 2).sum(axis=0))

    def merge(self, other: _Moments) -> _Moments:
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / count
        m2 = self.m2 + other.m2 + delta**2 * self.count * other.count / count
        return _Moments(count, mean, m2)


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    """Independent stream for chunk ``chunk`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))


def chunk_sizes(samples: int, chunk_size: int) -> list[int]:
    full, rest = divmod(samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def run_chunks(
    draw: Draw,
    samples: int,
    seed: int,
    *,
    chunk_size: int = DEFAULT_MC_CHUNK_SIZE,
    workers: int = 1,
) -> MCEstimate:
    """Estimate E[draw] from ``samples`` draws; the result depends only on seed and chunk size."""
    if samples < 2:
        raise QuaternionError(f"Monte Carlo needs at least 2 samples, got {samples}")
    if chunk_size < 1 or workers < 1:
        raise QuaternionError("chunk_size and workers must be positive")

    sizes = chunk_sizes(samples, chunk_size)

    def run(index: int) -> _Moments:
        values = np.asarray(draw(chunk_rng(seed, index), sizes[index]), dtype=np.float64)
        return _Moments.of(values)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]

    total = parts[0]
    for part in parts[1:]:
        total = total.merge(part)
    std_error = np.sqrt(total.m2 / (total.count - 1)) / np.sqrt(total.count)
    logger.info("Monte Carlo run finished", samples=total.count, chunks=len(sizes), seed=seed, workers=workers)
    if np.ndim(total.mean) == 0:
        return MCEstimate(float(total.mean), float(std_error), total.count, seed)
    return MCEstimate(total.mean, std_error, total.count, seed)
