"""Expansion against direct summation over a seeded corpus of Gaussian shapes."""

import numpy as np
import pytest

from src.ensembles import EnsembleKind, EnsembleSpec
from src.expansion import ColourExpansion, evaluate, exact_expectation
from src.quaternion import QuaternionMatrix

CORPUS_SIZE = 50
ORACLE_BUDGET = 5_000

ENSEMBLES = (
    EnsembleSpec("Z", EnsembleKind.GINIBRE),
    EnsembleSpec("T", EnsembleKind.GSE),
    EnsembleSpec.wishart_identity("W", 2),
    EnsembleSpec("V", EnsembleKind.WISHART, weight=QuaternionMatrix.from_lists([[[2, 0, 1, 0]]], exact=True)),
)


def _cycles(rng, n):
    """Cycles of a random permutation of [n]."""
    image = rng.permutation(n) + 1
    seen, cycles = set(), []
    for start in range(1, n + 1):
        if start in seen:
            continue
        cycle, k = [], start
        while k not in seen:
            seen.add(k)
            cycle.append(k)
            k = int(image[k - 1])
        cycles.append(cycle)
    return cycles


def _oracle_cost(spec, n_value):
    cost = 1
    for colour in spec.colours:
        cost *= ColourExpansion(spec.ensemble(colour), spec.symbols_of(colour), n_value).size()
    return cost


def _corpus(make_spec, seed):
    rng = np.random.default_rng(seed)
    shapes = []
    while len(shapes) < CORPUS_SIZE:
        n = int(rng.integers(1, 5))
        chosen = [ENSEMBLES[i] for i in rng.choice(len(ENSEMBLES), size=int(rng.integers(1, 3)), replace=False)]
        word = [chosen[int(i)].colour for i in rng.integers(len(chosen), size=n)]
        eps = [int(e) for e in rng.choice([1, -1], size=n)]
        spec = make_spec(n, _cycles(rng, n), _cycles(rng, n), word, chosen, eps=eps)
        if 0 < _oracle_cost(spec, 2) <= ORACLE_BUDGET:
            shapes.append(spec)
    return shapes


@pytest.mark.slow
class TestGaussianCorpus:
    def test_corpus_is_deterministic(self, make_spec):
        assert _corpus(make_spec, 7) == _corpus(make_spec, 7)

    def test_corpus_covers_every_ensemble(self, make_spec):
        colours = {c for spec in _corpus(make_spec, 7) for c in spec.colours}
        assert colours == {e.colour for e in ENSEMBLES}

    @pytest.mark.parametrize("n_value", [1, 2])
    def test_expansion_matches_direct_summation(self, make_spec, n_value):
        for spec in _corpus(make_spec, 7):
            assert evaluate(spec, n_value).value == exact_expectation(spec, n_value), (spec.word, spec.face_re)


@pytest.mark.slow
class TestHaarAtThree:
    @pytest.mark.parametrize(
        "re,tr,eps",
        [
            ([[1, 2]], [[1, 2]], (1, -1)),
            ([[1, 2]], [[1, 2]], (1, 1)),
            ([], [], (1, -1)),
            ([[1, 2]], [[1], [2]], (1, -1)),
        ],
    )
    def test_matches_projection_moments(self, make_spec, haar, re, tr, eps):
        spec = make_spec(2, re, tr, ["U", "U"], [haar], eps=eps)
        assert evaluate(spec, 3).value == exact_expectation(spec, 3)
