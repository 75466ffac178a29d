"""Tests for ensemble manifests."""

import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from src.ensembles import EnsembleKind, EnsembleSpec, load_manifest, parse_manifest
from src.exceptions import EnsembleError, ManifestError
from src.quaternion import QuaternionMatrix

EXAMPLE_MANIFEST = Path(__file__).parents[3] / "config" / "ensembles.example.yaml"


def _write(tmp_path, text, name="ensembles.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadManifest:
    def test_gse_fixture(self, gse_manifest):
        manifest = load_manifest(gse_manifest)
        assert manifest.colours == ["T"]
        assert manifest["T"].kind is EnsembleKind.GSE

    def test_json_list(self, tmp_path):
        data = [{"color": 1, "kind": "wishart", "M": 4, "D": "identity"}, {"color": "U", "kind": "HaarSymplectic"}]
        manifest = load_manifest(_write(tmp_path, json.dumps(data), "m.json"))
        assert manifest["1"].M == 4
        assert manifest["1"].weight == QuaternionMatrix.identity(4, exact=True)
        assert manifest["U"].kind is EnsembleKind.HAAR

    def test_object_with_ensembles_key(self, tmp_path):
        manifest = load_manifest(_write(tmp_path, "ensembles:\n  - {color: Z, kind: ginibre}\n"))
        assert "Z" in manifest
        assert len(manifest) == 1

    def test_inline_weight(self, tmp_path):
        text = "- color: W\n  kind: wishart\n  D: [[[1, 0, 0, 0], [0, 0, 0, 0]], [['1/2', 0, 0, 0], [2, 1, 0, 0]]]\n"
        weight = load_manifest(_write(tmp_path, text))["W"].weight
        assert weight.exact
        assert weight[1, 0].re == Fraction(1, 2)

    def test_empirical_moments(self, tmp_path):
        text = (
            "- color: X\n  kind: empirical\n  moments:\n"
            "    2: {e: '1/(2*N**2)', '(1,2)(-1,-2)': '1 - 1/(2*N)', '(1,-2)(2,-1)': '1 - 1/(2*N)'}\n"
        )
        spec = load_manifest(_write(tmp_path, text))["X"]
        assert spec.kind is EnsembleKind.EMPIRICAL
        assert len(spec.moments) == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(ManifestError, match="does not exist"):
            load_manifest(tmp_path / "nope.yaml")

    def test_invalid_yaml(self, tmp_path):
        with pytest.raises(ManifestError, match="not valid"):
            load_manifest(_write(tmp_path, "- color: [unclosed\n"))

    def test_shipped_example(self):
        manifest = load_manifest(EXAMPLE_MANIFEST)
        assert manifest.colours == ["U", "Z", "T", "W"]
        assert manifest["W"].M == 3

    def test_unknown_colour_lookup(self, gse_manifest):
        with pytest.raises(ManifestError, match="no ensemble"):
            load_manifest(gse_manifest)["Q"]


class TestValidation:
    @pytest.mark.parametrize(
        "data,message",
        [
            ([], "non-empty"),
            ({"other": []}, "non-empty"),
            (["gse"], "index 0 must be an object"),
            ([{"color": "T", "kind": "cauchy"}], "index 0: kind"),
            ([{"color": "W", "kind": "wishart"}], "need 'D'"),
            ([{"color": "W", "kind": "wishart", "D": "identity"}], "needs 'M'"),
            ([{"color": "U", "kind": "haar", "M": 2}], "only apply to Wishart"),
            ([{"color": "X", "kind": "empirical"}], "'moments' is required"),
            ([{"color": "T", "kind": "gse", "size": 3}], "index 0"),
            ([{"color": "T", "kind": "gse"}, {"color": "T", "kind": "haar"}], "Duplicate colour: T"),
            ([{"color": "W", "kind": "wishart", "M": 3, "D": [[[1, 0, 0, 0]]]}], "M is 3"),
            ([{"color": "X", "kind": "empirical", "moments": {2: {"e": 1}}}], "miss 2 premaps"),
        ],
    )
    def test_rejected(self, data, message):
        with pytest.raises(ManifestError, match=message):
            parse_manifest(data)

    def test_non_square_weight(self):
        with pytest.raises(ManifestError, match="square"):
            parse_manifest([{"color": "W", "kind": "wishart", "D": [[[1, 0, 0, 0], [0, 0, 0, 0]]]}])

    def test_describe(self):
        manifest = parse_manifest([{"color": "W", "kind": "wishart", "M": 2, "D": "identity"}])
        assert manifest.to_dict() == [{"color": "W", "kind": "wishart", "M": 2}]


class TestEnsembleSpec:
    def test_wishart_requires_weight(self):
        with pytest.raises(EnsembleError):
            EnsembleSpec("W", EnsembleKind.WISHART)

    def test_weight_only_for_wishart(self):
        with pytest.raises(EnsembleError):
            EnsembleSpec("U", EnsembleKind.HAAR, weight=QuaternionMatrix.identity(2, exact=True))

    def test_flags(self):
        assert EnsembleSpec("Z", EnsembleKind.GINIBRE).is_gaussian
        assert not EnsembleSpec("U", EnsembleKind.HAAR).is_gaussian
        assert EnsembleSpec("U", EnsembleKind.HAAR).sampleable

    @pytest.mark.parametrize("kind", [EnsembleKind.GINIBRE, EnsembleKind.GSE, EnsembleKind.HAAR])
    def test_sample_shape(self, kind, rng):
        assert EnsembleSpec("c", kind).sample(3, rng, batch=5).shape == (5, 3, 3, 4)

    def test_identity_sample(self, rng):
        draws = EnsembleSpec("I", EnsembleKind.IDENTITY).sample(2, rng, batch=3)
        assert np.array_equal(draws[1, :, :, 0], np.eye(2))
        assert not draws[..., 1:].any()

    def test_wishart_sample(self, rng):
        draws = EnsembleSpec.wishart_identity("W", 4).sample(2, rng, batch=2)
        assert draws.shape == (2, 2, 2, 4)

    def test_empirical_has_no_sampler(self, rng):
        spec = EnsembleSpec("X", EnsembleKind.EMPIRICAL, moments=lambda pi: 0)
        assert not spec.sampleable
        with pytest.raises(EnsembleError):
            spec.sample(2, rng, batch=1)
