"""JSON form of signed permutations.

``{"n": 3, "infinity": true, "cycles": [["inf", 1, -2], [3]]}``; ∞ is spelled
``"inf"`` and −∞ ``"-inf"``. Points not mentioned are fixed, so a one-sided
face permutation additionally carries ``"points": "positive"``.
"""

from __future__ import annotations

import re
from typing import Any, Literal

from pydantic import BaseModel, Field

from src.exceptions import InvalidPermutationError

from .premaps import PreMap, doubled
from .signed import Label, SignedDomain, SignedPermutation


class PermutationModel(BaseModel):
    """Wire form of a permutation."""

    n: int = Field(..., ge=0, description="Number of base symbols")
    infinity: bool = Field(False, description="Whether ±∞ is adjoined")
    cycles: list[list[int | str]] = Field(default_factory=list, description="Cycle notation")
    points: Literal["signed", "positive"] = Field("signed", description="Carrier: ±[n] or [n] only")

    def domain(self) -> SignedDomain:
        return SignedDomain(self.n, self.infinity)


def to_json(perm: SignedPermutation, points: Literal["signed", "positive"] | None = None) -> dict[str, Any]:
    """Serialize; fixed points are omitted."""
    if points is None:
        points = "positive" if all(k > 0 for k in perm.points) else "signed"
    cycles: list[list[Label]] = [c for c in perm.labelled_cycles() if len(c) > 1]
    model = PermutationModel(n=perm.domain.n, infinity=perm.domain.has_infinity, cycles=cycles, points=points)
    return model.model_dump()


def from_json(data: dict[str, Any] | PermutationModel) -> SignedPermutation:
    model = data if isinstance(data, PermutationModel) else PermutationModel.model_validate(data)
    domain = model.domain()
    pts = domain.positive() if model.points == "positive" else domain.carrier()
    return SignedPermutation.from_cycles(domain, model.cycles, points=pts)


def premap_from_json(data: dict[str, Any] | PermutationModel) -> PreMap:
    """Read a premap; one-sided input is doubled."""
    perm = from_json(data)
    if all(k > 0 for k in perm.points):
        return doubled(perm)
    return PreMap.from_permutation(perm)


_CYCLE = re.compile(r"\s*\(([^()]*)\)\s*")


def parse_cycles(text: str) -> list[list[str]]:
    """Split ``"(1,-2)(2,-1)"`` into symbol strings; ``"e"`` or ``""`` is the identity."""
    stripped = text.strip()
    if stripped in ("", "e"):
        return []
    cycles: list[list[str]] = []
    pos = 0
    while pos < len(stripped):
        match = _CYCLE.match(stripped, pos)
        if not match:
            raise InvalidPermutationError(f"malformed cycle notation {text!r} at position {pos}")
        body = match.group(1).strip()
        cycles.append([s.strip() for s in body.split(",")] if body else [])
        pos = match.end()
    return [c for c in cycles if c]


def premap_from_text(domain: SignedDomain, text: str) -> PreMap:
    """Premap on the full carrier of ``domain`` from cycle notation; unmentioned points are fixed."""
    return PreMap.from_permutation(SignedPermutation.from_cycles(domain, parse_cycles(text)))
