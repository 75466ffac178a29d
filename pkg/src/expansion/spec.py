"""Expressions E[Re_φRe tr_φtr(X₁^ε₁ Y₁, …, Xₙ^εₙ Yₙ)] in normalized form.

Faces are stored one-sided: positive permutations of [n] (or [n] ∪ {∞}).
Premap input whose cycles carry negative symbols is normalized by picking
an orientation shared by both premaps and moving the signs into ε.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

from pydantic import BaseModel, Field

from src.brackets import orientation
from src.combinatorics import (
    PreMap,
    SignedDomain,
    SignedPermutation,
    delta_eps,
    doubled,
    with_infinity,
)
from src.combinatorics.serialization import PermutationModel, premap_from_json, to_json
from src.ensembles import EnsembleKind, EnsembleManifest, EnsembleSpec
from src.exceptions import ExpansionError
from src.quaternion import QuaternionMatrix

YMode = Literal["identity", "residual"]
Shape = Literal["scalar", "quaternion", "matrix"]

IDENTITY_COLOUR = "I"


@dataclass(frozen=True)
class ExpressionSpec:
    """One product expression with colours bound to ensembles."""

    face_re: SignedPermutation
    face_tr: SignedPermutation
    eps: tuple[int, ...]
    word: tuple[str, ...]
    ensembles: Mapping[str, EnsembleSpec] = field(compare=False)
    y_mode: YMode = "identity"
    y_matrices: tuple[QuaternionMatrix, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        domain = self.face_re.domain
        if self.face_tr.domain != domain:
            raise ExpansionError(f"faces live on {domain} and {self.face_tr.domain}")
        expected = frozenset(domain.positive())
        for name, face in (("Re", self.face_re), ("tr", self.face_tr)):
            if face.points != expected:
                raise ExpansionError(f"{name} face must permute {sorted(expected)}, got {face}")
        n = domain.n
        if len(self.eps) != n or any(e not in (1, -1) for e in self.eps):
            raise ExpansionError(f"ε must assign ±1 to each of the {n} symbols, got {self.eps}")
        if len(self.word) != n:
            raise ExpansionError(f"colour word has {len(self.word)} letters for {n} symbols")
        missing = sorted(set(self.word) - set(self.ensembles))
        if missing:
            raise ExpansionError(f"no ensemble bound to colours {missing}")
        if self.y_mode not in ("identity", "residual"):
            raise ExpansionError(f"unknown y_mode {self.y_mode!r}")
        if self.y_matrices is not None and len(self.y_matrices) != n:
            raise ExpansionError(f"expected {n} Y matrices, got {len(self.y_matrices)}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_premaps(
        cls,
        phi_re: SignedPermutation,
        phi_tr: SignedPermutation,
        word: Sequence[str],
        ensembles: Mapping[str, EnsembleSpec] | EnsembleManifest,
        eps: Sequence[int] | None = None,
        **options: Any,
    ) -> ExpressionSpec:
        """Normalize two premaps sharing a carrier; a symbol met as −k flips ε_k."""
        if phi_re.domain.has_infinity or phi_tr.domain.has_infinity:
            phi_re, phi_tr = with_infinity(phi_re), with_infinity(phi_tr)
        domain = phi_re.domain
        eps = tuple(eps) if eps is not None else (1,) * domain.n
        chosen = orientation(phi_re, phi_tr)
        if not chosen.orientable:
            raise ExpansionError(
                f"premaps have no common orientation: X{chosen.conflict} appears both plain and starred"
            )
        assert chosen.witness is not None
        J = chosen.witness
        flipped = list(eps)
        for k in J:
            if k < 0 and not domain.is_infinite(k):
                flipped[-k - 1] = -flipped[-k - 1]

        def positive(p: SignedPermutation) -> SignedPermutation:
            induced = p.induced(J)
            return SignedPermutation(domain, {abs(k): abs(v) for k, v in induced.items()})

        return cls(
            positive(phi_re),
            positive(phi_tr),
            tuple(flipped),
            tuple(word),
            _bindings(ensembles),
            **options,
        )

    # -- derived data -------------------------------------------------------

    @property
    def domain(self) -> SignedDomain:
        return self.face_re.domain

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def infinity(self) -> bool:
        return self.domain.has_infinity

    @property
    def shape(self) -> Shape:
        if not self.infinity:
            return "scalar"
        inf = self.domain.infinity
        return "quaternion" if self.face_tr(inf) == inf else "matrix"

    @property
    def colours(self) -> list[str]:
        """Colours in order of first appearance."""
        return list(dict.fromkeys(self.word))

    def symbols_of(self, colour: str) -> list[int]:
        return [k + 1 for k, c in enumerate(self.word) if c == colour]

    def premaps(self) -> tuple[PreMap, PreMap]:
        """(φ_Re, φ_tr) on the doubled carrier."""
        return doubled(self.face_re), doubled(self.face_tr)

    def delta_eps(self) -> SignedPermutation:
        return delta_eps(self.domain, dict(enumerate(self.eps, start=1)))

    def ensemble(self, colour: str) -> EnsembleSpec:
        return self.ensembles[colour]

    def with_options(self, **options: Any) -> ExpressionSpec:
        values = {
            "face_re": self.face_re,
            "face_tr": self.face_tr,
            "eps": self.eps,
            "word": self.word,
            "ensembles": self.ensembles,
            "y_mode": self.y_mode,
            "y_matrices": self.y_matrices,
        }
        values.update(options)
        return ExpressionSpec(**values)

    def lifted(self) -> ExpressionSpec:
        """The same expression with ∞ adjoined as a fixed point of both faces."""
        if self.infinity:
            return self
        return self.with_options(face_re=_fix_infinity(self.face_re), face_tr=_fix_infinity(self.face_tr))


def _fix_infinity(face: SignedPermutation) -> SignedPermutation:
    domain = face.domain.with_infinity()
    mapping = dict(face.items())
    mapping[domain.infinity] = domain.infinity
    return SignedPermutation(domain, mapping)


def _bindings(ensembles: Mapping[str, EnsembleSpec] | EnsembleManifest) -> dict[str, EnsembleSpec]:
    if isinstance(ensembles, EnsembleManifest):
        return {e.colour: e for e in ensembles}
    return dict(ensembles)


def with_identity_colour(ensembles: Mapping[str, EnsembleSpec] | EnsembleManifest) -> dict[str, EnsembleSpec]:
    """Bindings with the implicit identity colour added."""
    out = _bindings(ensembles)
    out.setdefault(IDENTITY_COLOUR, EnsembleSpec(IDENTITY_COLOUR, EnsembleKind.IDENTITY))
    return out


class SpecModel(BaseModel):
    """Wire form of an expression: faces in cycle notation plus ε and the colour word."""

    re: PermutationModel = Field(..., description="Re face, one-sided or as a premap")
    tr: PermutationModel = Field(..., description="tr face, one-sided or as a premap")
    word: list[str] = Field(..., description="Colour of each symbol")
    eps: list[int] | None = Field(None, description="±1 per symbol; −1 marks an adjoint")
    y_mode: YMode = Field("identity", description="Residual handling")

    def to_spec(self, ensembles: Mapping[str, EnsembleSpec] | EnsembleManifest) -> ExpressionSpec:
        phi_re, phi_tr = premap_from_json(self.re), premap_from_json(self.tr)
        word = [str(c) for c in self.word]
        return ExpressionSpec.from_premaps(
            phi_re, phi_tr, word, with_identity_colour(ensembles), eps=self.eps, y_mode=self.y_mode
        )


def spec_to_json(spec: ExpressionSpec) -> dict[str, Any]:
    return {
        "re": to_json(spec.face_re, "positive"),
        "tr": to_json(spec.face_tr, "positive"),
        "word": list(spec.word),
        "eps": list(spec.eps),
        "y_mode": spec.y_mode,
    }


def spec_from_json(data: Mapping[str, Any], ensembles: Mapping[str, EnsembleSpec] | EnsembleManifest) -> ExpressionSpec:
    return SpecModel.model_validate(dict(data)).to_spec(ensembles)
