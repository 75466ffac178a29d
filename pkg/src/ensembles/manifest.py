"""YAML/JSON ensemble manifests binding colours to distributions.

A manifest is a list of entries (or an object with an ``ensembles`` list)::

    - color: U
      kind: haar
    - color: 2
      kind: wishart
      M: 3
      D: identity          # or inline rows of [a, b, c, d] quadruples
    - color: X
      kind: empirical
      moments:
        1: {"e": 0}
        2: {"e": "1/(2*N**2)", "(1,2)(-1,-2)": "1 - 1/(2*N)", "(1,-2)(2,-1)": "1 - 1/(2*N)"}
"""

from __future__ import annotations

from collections.abc import Iterator
from pathlib import Path
from typing import Any, Literal

import structlog
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.exceptions import ManifestError, QuatraceError
from src.quaternion import QuaternionMatrix

from .moments import MomentTable
from .spec import EnsembleKind, EnsembleSpec

logger = structlog.get_logger()

QuaternionRows = list[list[list[int | float | str]]]


class EnsembleEntry(BaseModel):
    """Wire form of one manifest entry."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    color: str = Field(..., min_length=1, description="Colour name used by the expression")
    kind: EnsembleKind = Field(..., description="Distribution of the colour")
    M: int | None = Field(None, ge=1, description="Wishart inner dimension")  # noqa: N815
    D: Literal["identity"] | QuaternionRows | None = Field(None, description="Wishart weight matrix")  # noqa: N815
    moments: dict[int, dict[str, int | float | str]] | None = Field(
        None, description="Empirical moments by degree, keyed by premap cycle notation"
    )

    @field_validator("color", mode="before")
    @classmethod
    def _colour_as_text(cls, value: Any) -> Any:
        return str(value).strip() if isinstance(value, (int, str)) else value

    @field_validator("kind", mode="before")
    @classmethod
    def _kind_lowercase(cls, value: Any) -> Any:
        return value.strip().lower().replace("haarsymplectic", "haar") if isinstance(value, str) else value

    @model_validator(mode="after")
    def _fields_match_kind(self) -> EnsembleEntry:
        if self.kind is EnsembleKind.WISHART:
            if self.D is None:
                raise ValueError("Wishart entries need 'D'")
            if self.D == "identity" and self.M is None:
                raise ValueError("'D: identity' needs 'M'")
        elif self.D is not None or self.M is not None:
            raise ValueError(f"'M' and 'D' only apply to Wishart entries, not {self.kind.value}")
        if (self.kind is EnsembleKind.EMPIRICAL) != (self.moments is not None):
            raise ValueError("'moments' is required for empirical entries and only allowed there")
        return self

    def weight(self) -> QuaternionMatrix | None:
        if self.D is None:
            return None
        if self.D == "identity":
            assert self.M is not None
            return QuaternionMatrix.identity(self.M, exact=True)
        weight = QuaternionMatrix.from_lists(self.D, exact=True)
        if self.M is not None and weight.rows != self.M:
            raise ValueError(f"'D' has {weight.rows} rows but M is {self.M}")
        return weight

    def to_spec(self) -> EnsembleSpec:
        moments = None
        if self.moments is not None:
            moments = MomentTable.from_texts(self.moments)
            for degree in sorted(self.moments):
                gaps = moments.missing(degree)
                if gaps:
                    raise ValueError(f"moments of degree {degree} miss {len(gaps)} premaps, first {gaps[0]}")
        return EnsembleSpec(self.color, self.kind, weight=self.weight(), moments=moments)


class EnsembleManifest:
    """In-memory validated colour bindings."""

    def __init__(self, ensembles: list[EnsembleSpec]) -> None:
        self._ensembles = ensembles
        self._by_colour: dict[str, EnsembleSpec] = {e.colour: e for e in ensembles}
        if len(self._by_colour) != len(ensembles):
            raise ManifestError("colours must be unique")

    @property
    def ensembles(self) -> list[EnsembleSpec]:
        return list(self._ensembles)

    @property
    def colours(self) -> list[str]:
        return [e.colour for e in self._ensembles]

    def get(self, colour: str) -> EnsembleSpec | None:
        return self._by_colour.get(colour)

    def __getitem__(self, colour: str) -> EnsembleSpec:
        try:
            return self._by_colour[colour]
        except KeyError:
            raise ManifestError(f"no ensemble bound to colour {colour!r}") from None

    def __contains__(self, colour: object) -> bool:
        return colour in self._by_colour

    def __iter__(self) -> Iterator[EnsembleSpec]:
        return iter(self._ensembles)

    def __len__(self) -> int:
        return len(self._ensembles)

    def to_dict(self) -> list[dict[str, object]]:
        return [e.describe() for e in self._ensembles]


def parse_manifest(data: Any) -> EnsembleManifest:
    """Validate already-decoded manifest data."""
    if isinstance(data, dict):
        data = data.get("ensembles")
    if not isinstance(data, list) or not data:
        raise ManifestError("Manifest must be a non-empty list of ensembles")

    seen: set[str] = set()
    ensembles: list[EnsembleSpec] = []
    for idx, raw in enumerate(data):
        if not isinstance(raw, dict):
            raise ManifestError(f"Ensemble entry at index {idx} must be an object")
        try:
            entry = EnsembleEntry.model_validate(raw)
            spec = entry.to_spec()
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(p) for p in first["loc"]) or "entry"
            raise ManifestError(f"Ensemble entry at index {idx}: {where}: {first['msg']}") from e
        except (ValueError, QuatraceError) as e:
            raise ManifestError(f"Ensemble entry at index {idx}: {e}") from e
        if spec.colour in seen:
            raise ManifestError(f"Duplicate colour: {spec.colour}")
        seen.add(spec.colour)
        ensembles.append(spec)

    return EnsembleManifest(ensembles)


def load_manifest(path: Path) -> EnsembleManifest:
    """Load and validate an ensemble manifest from YAML or JSON."""
    if not path.exists():
        raise ManifestError(f"Manifest file does not exist: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ManifestError(f"Manifest {path} is not valid YAML/JSON: {e}") from e

    manifest = parse_manifest(data)
    logger.info("Ensemble manifest loaded", path=str(path), colours=manifest.colours)
    return manifest
