"""Exact dyadic rationals m * 2^e.

Every value of phi, psi and the sl(2) trace oracle has a power-of-two
denominator, so a mantissa/exponent pair with an odd mantissa is an exact,
unique normal form. Equality of evaluators is equality of (mantissa, exponent).
"""
import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

_DYADIC_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(?:2\^(\d+)|(\d+)))?\s*$")

Number = Union["Dyadic", int]


@total_ordering
class Dyadic:
    """Value mantissa * 2**exponent in normal form (odd mantissa, or 0 * 2**0)."""

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int, exponent: int = 0):
        mantissa = int(mantissa)
        exponent = int(exponent)
        if mantissa == 0:
            exponent = 0
        else:
            shift = (mantissa & -mantissa).bit_length() - 1
            if shift:
                mantissa >>= shift
                exponent += shift
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    @classmethod
    def from_fraction(cls, value: Fraction) -> "Dyadic":
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, -(den.bit_length() - 1))

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse "m/2^k", "m/D" (D a power of two) or a plain integer."""
        match = _DYADIC_RE.match(text)
        if not match:
            raise ValueError(f"not a dyadic literal: {text!r}")
        numerator, power, denominator = match.groups()
        if power is not None:
            return cls(int(numerator), -int(power))
        if denominator is not None:
            return cls.from_fraction(Fraction(int(numerator), int(denominator)))
        return cls(int(numerator))

    @staticmethod
    def _coerce(other) -> "Dyadic":
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        if isinstance(other, Fraction):
            return Dyadic.from_fraction(other)
        return NotImplemented

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------
    def __add__(self, other: Number) -> "Dyadic":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.mantissa == 0:
            return other
        if other.mantissa == 0:
            return self
        e = min(self.exponent, other.exponent)
        m = (self.mantissa << (self.exponent - e)) + (other.mantissa << (other.exponent - e))
        return Dyadic(m, e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.mantissa, self.exponent)

    def __sub__(self, other: Number) -> "Dyadic":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "Dyadic":
        return (-self) + other

    def __mul__(self, other: Number) -> "Dyadic":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Dyadic":
        if k < 0:
            raise ValueError("negative powers leave the dyadic ring unless mantissa is ±1")
        return Dyadic(self.mantissa ** k, self.exponent * k)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.mantissa), self.exponent)

    def scale2(self, k: int) -> "Dyadic":
        """Multiply by 2**k."""
        return Dyadic(self.mantissa, self.exponent + k)

    def halve(self) -> "Dyadic":
        return self.scale2(-1)

    # ------------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------------
    def _cmp(self, other: "Dyadic") -> int:
        e = min(self.exponent, other.exponent)
        a = self.mantissa << (self.exponent - e)
        b = other.mantissa << (other.exponent - e)
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        if isinstance(other, Fraction):
            return self.to_fraction() == other
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __lt__(self, other) -> bool:
        if isinstance(other, Fraction):
            return self.to_fraction() < other
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self) -> int:
        # Equal to hash(int) and hash(Fraction) for the same number.
        return hash(self.to_fraction())

    def __bool__(self) -> bool:
        return self.mantissa != 0

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------
    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def to_decimal_string(self) -> str:
        """Exact decimal expansion; a dyadic always has a finite one."""
        if self.exponent >= 0:
            return str(self.mantissa << self.exponent)
        k = -self.exponent
        digits = str(abs(self.mantissa) * 5 ** k).rjust(k + 1, "0")
        sign = "-" if self.mantissa < 0 else ""
        return f"{sign}{digits[:-k]}.{digits[-k:]}"

    def __str__(self) -> str:
        if self.exponent >= 0:
            return str(self.mantissa << self.exponent)
        return f"{self.mantissa}/2^{-self.exponent}"

    def __repr__(self) -> str:
        return f"Dyadic({self.mantissa}, {self.exponent})"

    def __reduce__(self):
        return (Dyadic, (self.mantissa, self.exponent))


ZERO = Dyadic(0)
ONE = Dyadic(1)
THREE_EIGHTHS = Dyadic(3, -3)
MINUS_ONE_EIGHTH = Dyadic(-1, -3)
ONE_QUARTER = Dyadic(1, -2)
ONE_HALF = Dyadic(1, -1)


def cmp_abs(a: Dyadic, b: Dyadic) -> int:
    """Compare |a| with |b|: -1, 0 or 1."""
    return abs(a)._cmp(abs(b))
