"""Exact nonnegative rational arithmetic for durations and time positions.

Values are plain ``fractions.Fraction`` objects: immutable, hashable,
always stored reduced, and zero normalizes to 0/1. This module adds the
constructor checks the score pipeline relies on (nonnegative numerator,
positive denominator); everything past that is the stdlib's exact integer
arithmetic, which never overflows.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def make(num: int, den: int) -> Rational:
    """Build the reduced fraction num/den."""
    if den == 0:
        raise ValueError("rational denominator must not be zero")
    if den < 0 or num < 0:
        raise ValueError(f"negative rational {num}/{den} is not representable here")
    return Fraction(num, den)


def add(a: Rational, b: Rational) -> Rational:
    return a + b


def mul(a: Rational, b: Rational) -> Rational:
    return a * b


def compare(a: Rational, b: Rational) -> int:
    """Total order by real value: -1, 0 or 1."""
    return (a > b) - (a < b)
