"""Tests for expression translation and spec binding."""

import pytest
import sympy

from src.brackets import bracketize, diagram_premaps
from src.combinatorics import SignedDomain, SignedPermutation
from src.dsl import parse, serialize, to_permutations, to_spec
from src.ensembles import EnsembleKind, EnsembleSpec
from src.exceptions import DslError, ManifestError
from src.expansion import evaluate
from src.weingarten import N

WORKED_EXAMPLE = "E[X1*[U] Re(X2[Z1]) X3[U] X4[W] Re(tr(I X6[U] X7[Z1] X8[U]) tr(X9[Z2] X10[Z2]*))]"
INTRO = "E[tr(X3 X8* Re(X4 Re(X2) X1)) Re(tr(X5 X7* tr(X6)))]"

GSE = {"T": EnsembleSpec("T", EnsembleKind.GSE)}
GINIBRE = {"Z": EnsembleSpec("Z", EnsembleKind.GINIBRE)}


def _one_sided(n, cycles, infinity=True):
    domain = SignedDomain(n, has_infinity=infinity)
    return SignedPermutation.from_cycles(domain, cycles, points=domain.positive())


class TestToPermutations:
    def test_single_symbol(self, face):
        t = to_permutations(parse("X1"))
        expected = face(1, [["inf", 1]])
        assert t.premaps == (expected, expected)
        assert t.eps == (1,)
        assert not t.closed

    def test_worked_example(self):
        t = to_permutations(parse(WORKED_EXAMPLE))
        assert t.face_re == _one_sided(10, [["inf", 1, 3, 4], [2], [5, 6, 7, 8, 9, 10]])
        assert t.face_tr == _one_sided(10, [["inf", 1, 2, 3, 4], [5, 6, 7, 8], [9, 10]])
        assert [k for k, e in enumerate(t.eps, start=1) if e == -1] == [1, 10]
        assert t.word == ("U", "Z1", "U", "W", "I", "U", "Z1", "U", "Z2", "Z2")

    def test_intro_expression_in_written_numbers(self, face):
        t = to_permutations(parse(INTRO))
        phi_re, phi_tr = diagram_premaps(t.source_diagram())
        assert phi_re == face(8, [["inf", 3, -8], [4, 1], [2], [5, -7, 6]])
        assert phi_tr == face(8, [["inf"], [3, -8, 4, 2, 1], [5, -7], [6]])

    def test_closed_expression_drops_infinity(self):
        t = to_permutations(parse("Re(tr(X1 X2)) Re(tr(X3))"))
        assert t.closed
        face_re, face_tr = t.faces()
        assert not face_re.domain.has_infinity
        assert face_tr == _one_sided(3, [[1, 2], [3]], infinity=False)

    def test_bare_symbol_inherits_annotation(self):
        assert to_permutations(parse("X1[U] X2 X1*")).word == ("U", "2", "U")

    def test_repeated_numbers_have_no_source_diagram(self):
        with pytest.raises(DslError):
            to_permutations(parse("X1 X1*")).source_diagram()

    def test_bracketize_round_trip(self):
        t = to_permutations(parse(INTRO))
        again = to_permutations(parse(serialize(bracketize(*t.premaps))))
        assert diagram_premaps(again.source_diagram()) == t.premaps


class TestToSpec:
    def test_gse_second_moment(self):
        spec = to_spec("E[Re(tr(X1 X1))]", GSE)
        assert spec.word == ("T", "T")
        assert spec.shape == "scalar"
        assert sympy.simplify(evaluate(spec).value - (1 - 1 / (2 * N))) == 0

    def test_ginibre_normalization(self):
        assert sympy.simplify(evaluate(to_spec("E[Re(tr(X1 X1*))]", GINIBRE)).value) == 1

    def test_worked_example(self, worked_bindings):
        spec = to_spec(WORKED_EXAMPLE, worked_bindings)
        assert spec.shape == "matrix"
        assert spec.colours == ["U", "Z1", "W", "I", "Z2"]
        assert spec.eps[0] == -1 and spec.eps[9] == -1

    def test_colours_named_by_number(self):
        bindings = {"1": GSE["T"], "2": GINIBRE["Z"]}
        assert to_spec("X1 X2", bindings).word == ("1", "2")

    def test_ambiguous_default_colour(self):
        with pytest.raises(ManifestError, match="'1'"):
            to_spec("X1 X2", {**GSE, **GINIBRE})

    def test_unknown_annotation(self):
        with pytest.raises(ManifestError, match="'U'"):
            to_spec("X1[U]", GSE)

    def test_identity_token(self):
        spec = to_spec("tr(X1 I)", GINIBRE)
        assert spec.word == ("Z", "I")
        assert spec.ensemble("I").kind is EnsembleKind.IDENTITY
        assert spec.shape == "quaternion"

    def test_options_reach_the_spec(self):
        assert to_spec("Re(tr(X1 X1))", GSE, y_mode="residual").y_mode == "residual"
