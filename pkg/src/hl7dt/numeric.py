"""Exact REAL values.

Values are :class:`fractions.Fraction` so canonical unit factors never pick
up binary rounding error: ``Fraction(1, 10) ** 3 == Fraction("0.001")``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivideByZero, ParseError
from .nullflavor import NullFlavor, is_nullflavor_token, parse_nullflavor

Rational = Fraction

_DECIMAL = re.compile(r"([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?")


class Ordering(enum.Enum):
    LT = "lt"
    EQ = "eq"
    GT = "gt"

    @classmethod
    def of(cls, a, b) -> Ordering:
        if a < b:
            return cls.LT
        if a > b:
            return cls.GT
        return cls.EQ

    def __str__(self) -> str:
        return self.value


def decimal_parts(literal: str) -> tuple[int, int, int]:
    """Split a decimal literal into ``(mantissa, exponent, significant_digits)``.

    The value is exactly ``mantissa * 10**exponent``.
    """
    m = _DECIMAL.fullmatch(literal.strip())
    if m is None:
        raise ParseError(f"invalid decimal literal {literal!r}")
    sign, whole, frac, exp = m.groups()
    frac = frac or ""
    digits = whole + frac
    if not digits:
        raise ParseError(f"invalid decimal literal {literal!r}")
    mantissa = int(digits)
    if sign == "-":
        mantissa = -mantissa
    exponent = (int(exp) if exp else 0) - len(frac)
    significant = digits.lstrip("0")
    precision = len(significant) if significant else max(1, len(frac))
    return mantissa, exponent, precision


def to_fraction(mantissa: int, exponent: int) -> Fraction:
    if exponent >= 0:
        return Fraction(mantissa * 10 ** exponent)
    return Fraction(mantissa, 10 ** -exponent)


@dataclass(frozen=True)
class Real:
    value: Union[Fraction, NullFlavor]
    precision: int | None = None

    def __post_init__(self):
        if self.precision is not None and self.precision < 1:
            raise ValueError("precision must be >= 1")

    @property
    def is_null(self) -> bool:
        return isinstance(self.value, NullFlavor)

    def __str__(self) -> str:
        return real_print(self)


def real_parse(literal: str) -> Real:
    if is_nullflavor_token(literal):
        return Real(parse_nullflavor(literal))
    mantissa, exponent, precision = decimal_parts(literal)
    return Real(to_fraction(mantissa, exponent), precision)


def parse_rational(text: str) -> Fraction:
    """Decimal literal or ``p/q``; used by data files."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        n = parse_rational(num)
        d = parse_rational(den)
        if d == 0:
            raise DivideByZero(f"zero denominator in {text!r}")
        return n / d
    m, e, _ = decimal_parts(text)
    return to_fraction(m, e)


def real_arith(op: str, a: Fraction, b: Fraction | int) -> Fraction:
    a = Fraction(a)
    if op == "pow_int":
        if isinstance(b, Fraction) and b.denominator != 1:
            raise ValueError("pow_int requires an integer exponent")
        n = int(b)
        if a == 0 and n < 0:
            raise DivideByZero("zero to a negative power")
        return a ** n
    b = Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivideByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def terminating_exponent(den: int) -> int | None:
    """Smallest k with ``den | 10**k``, or None if ``den`` has other prime factors."""
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    return max(twos, fives) if den == 1 else None


def real_print(r: Real | Fraction | int, max_frac_digits: int = 20) -> str:
    """Shortest exact decimal; otherwise round half-even to ``max_frac_digits``."""
    if max_frac_digits < 0:
        raise ValueError("max_frac_digits must be >= 0")
    precision = None
    if isinstance(r, Real):
        if r.is_null:
            return r.value.value
        precision = r.precision
        r = r.value
    q = Fraction(r)
    k = terminating_exponent(q.denominator)
    if k is None:
        k = max_frac_digits
        scaled = round(q * 10 ** k)
    else:
        scaled = q.numerator * (10 ** k // q.denominator)
    text = _format_scaled(scaled, k)
    if precision is not None:
        text = _pad_to_precision(text, precision)
    return text


def _format_scaled(scaled: int, k: int) -> str:
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled))
    if k == 0:
        return sign + digits
    digits = digits.rjust(k + 1, "0")
    whole, frac = digits[:-k], digits[-k:].rstrip("0")
    if not frac:
        return sign + whole
    return f"{sign}{whole}.{frac}"


def _pad_to_precision(text: str, precision: int) -> str:
    # only ever add trailing zeros; never drop digits the value needs
    digits = text.lstrip("-").replace(".", "").lstrip("0")
    missing = precision - len(digits)
    if missing <= 0 or text.lstrip("-").strip("0.") == "":
        return text
    if "." not in text:
        return f"{text}.{'0' * missing}"
    return text + "0" * missing
