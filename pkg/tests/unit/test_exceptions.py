"""Test custom exceptions."""

import pytest

from src.exceptions import (
    BracketError,
    CapExceededError,
    ConfigurationError,
    DslError,
    DuplicateSymbolError,
    EnsembleError,
    InvalidConfigError,
    ManifestError,
    NotBracketableError,
    ParseError,
    QuatraceError,
    SingularGramError,
    WeingartenError,
)


def test_base_exception():
    with pytest.raises(QuatraceError):
        raise QuatraceError("Test error")


@pytest.mark.parametrize(
    "error,family",
    [
        (InvalidConfigError("bad"), ConfigurationError),
        (ManifestError("bad"), EnsembleError),
        (DuplicateSymbolError("X1 twice", 4), ParseError),
        (ParseError("bad", 0), DslError),
        (NotBracketableError("crossing"), BracketError),
        (SingularGramError(2, 6), WeingartenError),
    ],
)
def test_families(error, family):
    assert isinstance(error, family)
    assert isinstance(error, QuatraceError)


def test_parse_error_position():
    error = ParseError("expected ')'", 7)
    assert error.position == 7
    assert str(error) == "expected ')' at position 7"


def test_not_bracketable_details():
    error = NotBracketableError("crossing", "cycles interleave", crossing=(1, 2, 3, 4))
    assert str(error) == "crossing: cycles interleave"
    assert error.obstruction == "crossing"
    assert error.crossing == (1, 2, 3, 4)
    assert NotBracketableError("sign-obstruction").crossing is None


def test_cap_exceeded_fields():
    error = CapExceededError("too many terms", requested=15, cap=10)
    assert (error.requested, error.cap) == (15, 10)


def test_singular_gram_message():
    error = SingularGramError(2, 6)
    assert (error.n_value, error.degree) == (2, 6)
    assert "N=2" in str(error)
