"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from src.combinatorics import SignedDomain, SignedPermutation, doubled
from src.quaternion import QuaternionMatrix


@pytest.fixture(autouse=True)
def _no_real_toml(monkeypatch, tmp_path):
    """Prevent tests from reading ~/.quatrace/settings.toml."""
    monkeypatch.setattr("src.config.toml_source.TOML_PATH", tmp_path / "settings.toml")


@pytest.fixture
def rng():
    """Seeded generator; every test gets the same stream."""
    return np.random.default_rng(20240611)


@pytest.fixture
def exact_matrices(rng):
    """Factory for lists of small-integer quaternion matrices in exact arithmetic."""

    def make(count, size=2, bound=2):
        return [QuaternionMatrix.random_exact(size, rng=rng, bound=bound) for _ in range(count)]

    return make


@pytest.fixture
def face():
    """Premap built from cycle notation of a one-sided face permutation on ±[n]∞."""

    def make(n, cycles, infinity=True):
        domain = SignedDomain(n, has_infinity=infinity)
        mentioned = {domain.parse(x) for c in cycles for x in c}
        points = set(mentioned)
        for k in domain.positive():
            if k not in points and -k not in points:
                points.add(k)
        return doubled(SignedPermutation.from_cycles(domain, cycles, points=points))

    return make


@pytest.fixture
def gse_manifest(tmp_path):
    """One GSE colour named T."""
    path = tmp_path / "ensembles.yaml"
    path.write_text("- color: T\n  kind: gse\n")
    return path
