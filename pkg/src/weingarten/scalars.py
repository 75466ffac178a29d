"""Exact scalars: rationals at a fixed N, sympy rational functions of a symbolic N."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import sympy

N = sympy.Symbol("N", positive=True, integer=True)

Scalar = Any  # Fraction | int | float | sympy.Expr


@dataclass(frozen=True)
class ScalarField:
    """Arithmetic context: ``n_value`` None means symbolic N."""

    n_value: int | None = None

    @property
    def symbolic(self) -> bool:
        return self.n_value is None

    @property
    def N(self) -> Scalar:  # noqa: N802
        return N if self.n_value is None else Fraction(self.n_value)

    def zero(self) -> Scalar:
        return sympy.Integer(0) if self.symbolic else Fraction(0)

    def one(self) -> Scalar:
        return sympy.Integer(1) if self.symbolic else Fraction(1)

    def convert(self, x: Any) -> Scalar:
        if self.symbolic:
            if isinstance(x, Fraction):
                return sympy.Rational(x.numerator, x.denominator)
            return sympy.sympify(x)
        if isinstance(x, sympy.Expr):
            return to_fraction(x.subs(N, self.n_value))
        if isinstance(x, float):
            return x
        return Fraction(x)

    def power(self, base: Scalar, exponent: int) -> Scalar:
        if self.symbolic:
            return sympy.sympify(base) ** exponent
        return Fraction(base) ** exponent

    def signed_power(self, base: int, exponent: int) -> Scalar:
        """base**exponent with an integer base, exact for negative exponents."""
        if self.symbolic:
            return sympy.Integer(base) ** exponent
        return Fraction(base) ** exponent

    def n_power(self, exponent: int) -> Scalar:
        return self.power(self.N, exponent)

    def total(self, values: list[Scalar]) -> Scalar:
        if self.symbolic:
            return simplify(sympy.Add(*values)) if values else sympy.Integer(0)
        return sum(values, Fraction(0))

    def simplify(self, x: Scalar) -> Scalar:
        return simplify(x) if self.symbolic else x


def simplify(expr: Any) -> sympy.Expr:
    """Canonical rational function: cancelled, then factored."""
    return sympy.factor(sympy.cancel(sympy.together(sympy.sympify(expr))))


def to_fraction(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    value = sympy.Rational(sympy.sympify(x))
    return Fraction(int(value.p), int(value.q))


def evaluate_at(x: Any, n_value: int) -> Fraction:
    """A symbolic value at a concrete N."""
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    return to_fraction(sympy.sympify(x).subs(N, n_value))


def format_scalar(x: Any) -> str:
    """Canonical string: exact rationals as "p/q", rational functions factored."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, int):
        return str(x)
    return str(simplify(x))


def coefficients(x: Any) -> tuple[list[int], list[int]]:
    """Integer coefficient lists (highest degree first) of numerator and denominator in N.

    Coefficients are primitive overall and the denominator's leading coefficient is positive.
    """
    num, den = sympy.fraction(sympy.cancel(sympy.together(sympy.sympify(x))))
    pn, pd = sympy.Poly(num, N), sympy.Poly(den, N)
    lc = pd.LC()
    if lc < 0:
        pn, pd = -pn, -pd
    cn = [sympy.Rational(c) for c in pn.all_coeffs()]
    cd = [sympy.Rational(c) for c in pd.all_coeffs()]
    scale = math.lcm(*[int(c.q) for c in cn + cd])
    ints_n = [int(c * scale) for c in cn]
    ints_d = [int(c * scale) for c in cd]
    g = math.gcd(*ints_n, *ints_d) or 1
    return [c // g for c in ints_n], [c // g for c in ints_d]
