"""Ensemble definitions bound to colours."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.exceptions import EnsembleError
from src.quaternion import QuaternionMatrix, ginibre_array, gse_array, haar_array, wishart_array
from src.utils.constants import HAAR_RESIDUAL_TOL

from .moments import MomentOracle


class EnsembleKind(str, Enum):
    """Distributions a colour can carry."""

    GINIBRE = "ginibre"
    GSE = "gse"
    WISHART = "wishart"
    HAAR = "haar"
    IDENTITY = "identity"
    EMPIRICAL = "empirical"


GAUSSIAN_KINDS = frozenset({EnsembleKind.GINIBRE, EnsembleKind.GSE, EnsembleKind.WISHART})


@dataclass(frozen=True)
class EnsembleSpec:
    """One colour's distribution.

    Wishart carries its fixed M×M weight D; an empirical colour carries a
    moment oracle instead of a sampler.
    """

    colour: str
    kind: EnsembleKind
    weight: QuaternionMatrix | None = field(default=None, compare=False)
    moments: MomentOracle | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind is EnsembleKind.WISHART:
            if self.weight is None:
                raise EnsembleError(f"Wishart colour {self.colour!r} needs a weight matrix D")
            if not self.weight.is_square:
                raise EnsembleError(f"Wishart weight of colour {self.colour!r} must be square, got {self.weight.shape}")
        elif self.weight is not None:
            raise EnsembleError(f"only Wishart colours take a weight matrix, not {self.kind.value}")
        if self.kind is EnsembleKind.EMPIRICAL and self.moments is None:
            raise EnsembleError(f"empirical colour {self.colour!r} needs a moment table")

    @classmethod
    def wishart_identity(cls, colour: str, m: int) -> EnsembleSpec:
        return cls(colour, EnsembleKind.WISHART, weight=QuaternionMatrix.identity(m, exact=True))

    @property
    def M(self) -> int | None:  # noqa: N802
        return None if self.weight is None else self.weight.rows

    @property
    def is_gaussian(self) -> bool:
        return self.kind in GAUSSIAN_KINDS

    @property
    def sampleable(self) -> bool:
        return self.kind is not EnsembleKind.EMPIRICAL

    def sample(
        self, n: int, rng: np.random.Generator, batch: int, tol: float = HAAR_RESIDUAL_TOL
    ) -> np.ndarray:
        """Float draws of shape (batch, N, N, 4)."""
        if self.kind is EnsembleKind.GINIBRE:
            return ginibre_array(n, rng, batch)
        if self.kind is EnsembleKind.GSE:
            return gse_array(n, rng, batch)
        if self.kind is EnsembleKind.WISHART:
            assert self.weight is not None
            return wishart_array(n, self.weight, rng, batch)
        if self.kind is EnsembleKind.HAAR:
            return haar_array(n, rng, batch, tol=tol)
        if self.kind is EnsembleKind.IDENTITY:
            out = np.zeros((batch, n, n, 4))
            out[:, np.arange(n), np.arange(n), 0] = 1.0
            return out
        raise EnsembleError(f"colour {self.colour!r} has no sampler ({self.kind.value})")

    def describe(self) -> dict[str, object]:
        out: dict[str, object] = {"color": self.colour, "kind": self.kind.value}
        if self.weight is not None:
            out["M"] = self.weight.rows
        return out
