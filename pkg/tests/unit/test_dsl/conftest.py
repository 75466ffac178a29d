"""Fixtures for expression-language tests."""

import numpy as np
import pytest

from src.brackets import Bracket, BracketDiagram
from src.combinatorics import SignedDomain
from src.ensembles import EnsembleKind, EnsembleSpec


@pytest.fixture
def random_diagram():
    """Random signed symbol order with properly nested random brackets."""

    def make(rng, n, pairs):
        d = SignedDomain(n, has_infinity=True)
        symbols = [int(k) * int(rng.choice([1, -1])) for k in rng.permutation(np.arange(1, n + 1))]
        diagram = BracketDiagram.plain(d, symbols)
        for _ in range(50):
            if len(diagram.brackets) >= pairs:
                break
            lo, hi = sorted(int(x) for x in rng.choice(np.arange(1, n + 2), size=2, replace=False))
            candidate = Bracket(lo, hi, str(rng.choice(["Re", "tr"])))
            if all(candidate.nests_with(b) for b in diagram.brackets):
                diagram = diagram.with_bracket(candidate)
        return diagram

    return make


@pytest.fixture
def worked_bindings():
    return {
        "U": EnsembleSpec("U", EnsembleKind.HAAR),
        "Z1": EnsembleSpec("Z1", EnsembleKind.GINIBRE),
        "Z2": EnsembleSpec("Z2", EnsembleKind.GINIBRE),
        "W": EnsembleSpec.wishart_identity("W", 3),
    }
