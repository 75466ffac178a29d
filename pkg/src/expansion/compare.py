"""Exact value against a Monte Carlo estimate."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
import structlog

from src.quaternion import MCEstimate, Quaternion, QuaternionMatrix
from src.utils.constants import DEFAULT_Z_THRESHOLD

from .engine import ExpansionResult, evaluate, format_value
from .montecarlo import mc_expectation
from .spec import ExpressionSpec

logger = structlog.get_logger()


def as_float_array(value: Any) -> float | np.ndarray:
    """Exact scalars, quaternions and matrices in the layout Monte Carlo reports."""
    if isinstance(value, Quaternion):
        return np.array([float(x) for x in value.components()])
    if isinstance(value, QuaternionMatrix):
        return np.asarray(value.to_float().data, dtype=np.float64)
    return float(value)


@dataclass(frozen=True)
class ComparisonReport:
    exact: ExpansionResult
    estimate: MCEstimate
    z: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.z <= self.threshold

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict[str, Any]:
        return {
            "exact": format_value(self.exact.materialize()),
            "mc": self.estimate.to_dict(),
            "z": self.z,
            "threshold": self.threshold,
            "verdict": self.verdict,
        }


def compare_mc(
    spec: ExpressionSpec,
    n_value: int,
    samples: int,
    seed: int,
    *,
    threshold: float = DEFAULT_Z_THRESHOLD,
    offset: float = 0.0,
    engine_options: dict[str, Any] | None = None,
    **mc_options: Any,
) -> ComparisonReport:
    """Evaluate exactly at N and by sampling; ``offset`` shifts the exact value for negative checks."""
    exact = evaluate(spec, n_value, **(engine_options or {}))
    estimate = mc_expectation(spec, n_value, samples, seed, **mc_options)
    target = as_float_array(exact.materialize()) + offset
    z = estimate.z_score(target)
    report = ComparisonReport(exact, estimate, z, threshold)
    logger.info("Comparison finished", n=n_value, samples=samples, seed=seed, z=round(z, 3), verdict=report.verdict)
    return report
