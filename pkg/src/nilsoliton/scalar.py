"""Scalar backends: exact rationals (default) and tolerance-aware floats."""

from __future__ import annotations

import math
import os
from fractions import Fraction
from numbers import Rational

BACKEND_ENV = "NILSOLITON_BACKEND"


class Field:
    """Arithmetic policy shared by every routine that has to decide 'is this zero?'."""

    name = "abstract"
    exact = False

    def convert(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        raise NotImplementedError

    def sqrt(self, x):
        """Square root of a nonnegative scalar, or ``None`` if it leaves the field."""
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.is_zero(a - b)

    def sign(self, x) -> int:
        if self.is_zero(x):
            return 0
        return 1 if x > 0 else -1

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class ExactField(Field):
    name = "exact"
    exact = True
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, float):
            raise TypeError(f"refusing to coerce float {x!r} into the exact backend")
        return Fraction(x)

    def is_zero(self, x) -> bool:
        return x == 0

    def sqrt(self, x):
        x = Fraction(x)
        if x < 0:
            return None
        num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if num * num == x.numerator and den * den == x.denominator:
            return Fraction(num, den)
        return None


class FloatField(Field):
    name = "float"
    zero = 0.0
    one = 1.0

    def __init__(self, tol: float = 1e-10):
        self.tol = tol

    def convert(self, x):
        return float(x)

    def is_zero(self, x) -> bool:
        return abs(x) <= self.tol

    def sqrt(self, x):
        return math.sqrt(x) if x >= 0 else None


EXACT = ExactField()
FLOAT = FloatField()


def parse_scalar(text) -> Fraction:
    """Parse ``"p/q"``, an integer, or a decimal string into a Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Rational):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be strings or integers, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def field_of(*values) -> Field:
    """FLOAT if any value is a float, EXACT otherwise."""
    stack = list(values)
    while stack:
        v = stack.pop()
        if isinstance(v, float):
            return FLOAT
        if isinstance(v, (list, tuple)):
            stack.extend(v)
    return EXACT


def backend_from_env() -> Field:
    name = os.environ.get(BACKEND_ENV, "exact").strip().lower()
    if name == "exact":
        return EXACT
    if name == "float":
        return FLOAT
    raise ValueError(f"{BACKEND_ENV} must be 'exact' or 'float', got {name!r}")
