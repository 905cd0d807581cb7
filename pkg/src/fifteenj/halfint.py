"""Half-integer angular momentum labels stored as doubled integers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

HalfIntLike = Union["HalfInt", int, Fraction, str, float]


@dataclass(frozen=True, order=True)
class HalfInt:
    """An exact half-integer ``j = twice / 2``.

    Signed values are allowed so the same type can carry magnetic indices
    and label differences; angular momentum magnitudes are non-negative.
    """

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise TypeError(f"twice must be an int, got {self.twice!r}")

    @classmethod
    def of(cls, value: HalfIntLike) -> HalfInt:
        """Coerce ``value`` (``3``, ``"7/2"``, ``Fraction(1, 2)``, ``2.5``) to a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a half-integer")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, float):
            if not value.is_integer() and not (2 * value).is_integer():
                raise ValueError(f"{value} is not a half-integer")
            return cls(int(round(2 * value)))
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise ValueError(f"{value} is not a half-integer")
            return cls(int(doubled))
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    @property
    def dim(self) -> int:
        """Multiplicity ``[j] = 2j + 1``."""
        return self.twice + 1

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self) -> float:
        return self.twice / 2

    def __add__(self, other: HalfIntLike) -> HalfInt:
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other: HalfIntLike) -> HalfInt:
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other: HalfIntLike) -> HalfInt:
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> HalfInt:
        return HalfInt(-self.twice)

    def __abs__(self) -> HalfInt:
        return HalfInt(abs(self.twice))

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def triangle_ok(a: HalfIntLike, b: HalfIntLike, c: HalfIntLike) -> bool:
    """Triad selection rule: ``|a-b| <= c <= a+b`` with ``a+b+c`` integral."""
    ta, tb, tc = HalfInt.of(a).twice, HalfInt.of(b).twice, HalfInt.of(c).twice
    return triangle_ok2(ta, tb, tc)


def triangle_ok2(ta: int, tb: int, tc: int) -> bool:
    """:func:`triangle_ok` on doubled integers (hot path, no coercion)."""
    if ta < 0 or tb < 0 or tc < 0:
        return False
    if (ta + tb + tc) & 1:
        return False
    return abs(ta - tb) <= tc <= ta + tb


def sign_power2(twice_exponent: int) -> int:
    """``(-1)**x`` for ``x = twice_exponent / 2``; ``x`` must be an integer."""
    if twice_exponent & 1:
        raise ValueError(f"(-1)**({twice_exponent}/2) is not real")
    return -1 if (twice_exponent >> 1) & 1 else 1


_QUARTER_TURNS = (1, 1j, -1, -1j)


def phase2(twice_exponent: int) -> complex:
    """``(-1)**x = exp(i*pi*x)`` for a half-integer ``x = twice_exponent / 2``.

    Realized as an exact four-cycle so half-integer exponents never touch
    floating point.
    """
    return _QUARTER_TURNS[twice_exponent % 4]
