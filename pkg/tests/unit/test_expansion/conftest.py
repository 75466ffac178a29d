"""Fixtures for expansion tests."""

import pytest

from src.combinatorics import SignedDomain, SignedPermutation
from src.ensembles import EnsembleKind, EnsembleSpec
from src.expansion import ExpressionSpec


def one_sided(n, cycles, infinity=False):
    domain = SignedDomain(n, has_infinity=infinity)
    return SignedPermutation.from_cycles(domain, cycles, points=domain.positive())


@pytest.fixture
def make_spec():
    """ExpressionSpec from one-sided face cycles; ``ensembles`` is a list of EnsembleSpec."""

    def make(n, re, tr, word, ensembles, eps=None, infinity=False, **options):
        bound = {e.colour: e for e in ensembles}
        return ExpressionSpec(
            one_sided(n, re, infinity),
            one_sided(n, tr, infinity),
            tuple(eps or (1,) * n),
            tuple(word),
            bound,
            **options,
        )

    return make


@pytest.fixture
def gse():
    return EnsembleSpec("T", EnsembleKind.GSE)


@pytest.fixture
def ginibre():
    return EnsembleSpec("Z", EnsembleKind.GINIBRE)


@pytest.fixture
def haar():
    return EnsembleSpec("U", EnsembleKind.HAAR)


@pytest.fixture
def identity():
    return EnsembleSpec("I", EnsembleKind.IDENTITY)
