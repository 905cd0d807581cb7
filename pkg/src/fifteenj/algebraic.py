"""Exact numbers of the form ``sum_i q_i * sqrt(p_i)``.

Every 3nj symbol lives in this set: rational coefficients ``q_i`` and
square-free positive radicands ``p_i``. Values are immutable and canonical,
so equality is map equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping, Union

import numpy as np

from .factorials import integer_factors, split_sqrt

Rationalish = Union[int, Fraction]


def is_squarefree(n: int, trial_limit: int = 10_000) -> bool:
    """Square-free test by trial division up to ``trial_limit``.

    A cofactor left with no small prime factors is rejected only if it is a
    perfect square; radicands built from factorials never get that far.
    """
    if n < 1:
        return False
    d = 2
    while d <= trial_limit and d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return False
        d += 1 if d == 2 else 2
    if n > 1 and d * d <= n:
        r = math.isqrt(n)
        return r * r != n
    return True


class AlgebraicNumber:
    """``sum(q * sqrt(r) for r, q in terms.items())`` in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rationalish] | None = None, *, _trusted: bool = False):
        if _trusted:
            clean = terms  # type: ignore[assignment]
        else:
            clean = {}
            for r, q in (terms or {}).items():
                r = int(r)
                q = Fraction(q)
                if r < 1:
                    raise ValueError(f"radicand must be positive, got {r}")
                if not is_squarefree(r):
                    raise ValueError(f"radicand {r} is not square-free")
                if q:
                    clean[r] = clean.get(r, Fraction(0)) + q
                    if not clean[r]:
                        del clean[r]
        self._terms = MappingProxyType(dict(sorted(clean.items())))
        self._hash = None

    def __reduce__(self):
        # mappingproxy does not pickle; rebuild from a plain dict
        return (_from_canonical, (dict(self._terms),))

    # construction -----------------------------------------------------

    @classmethod
    def rational(cls, q: Rationalish) -> AlgebraicNumber:
        q = Fraction(q)
        return cls({1: q}, _trusted=True) if q else ZERO

    @classmethod
    def term(cls, q: Rationalish, radicand: int) -> AlgebraicNumber:
        """``q * sqrt(radicand)`` for a radicand already known to be square-free."""
        q = Fraction(q)
        return cls({radicand: q}, _trusted=True) if q else ZERO

    @classmethod
    def sqrt_rational(cls, x: Rationalish, sign: int = 1) -> AlgebraicNumber:
        """``sign * sqrt(x)`` for a non-negative rational ``x``."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        if not x:
            return ZERO
        facs = integer_factors(x.numerator) / integer_factors(x.denominator)
        primes = sorted(facs.exponents)
        exps = np.array([facs.exponents[p] for p in primes], dtype=np.int64)
        q, r = split_sqrt(primes, exps)
        return cls.term(sign * q, r)

    # access -----------------------------------------------------------

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sign(self) -> int:
        if not self._terms:
            return 0
        return 1 if float(self) > 0 else -1

    # arithmetic -------------------------------------------------------

    def __add__(self, other: AlgebraicNumber | Rationalish) -> AlgebraicNumber:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for r, q in other._terms.items():
            s = out.get(r, 0) + q
            if s:
                out[r] = s
            else:
                out.pop(r, None)
        return AlgebraicNumber(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> AlgebraicNumber:
        return AlgebraicNumber({r: -q for r, q in self._terms.items()}, _trusted=True)

    def __sub__(self, other: AlgebraicNumber | Rationalish) -> AlgebraicNumber:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Rationalish) -> AlgebraicNumber:
        return (-self) + other

    def __mul__(self, other: AlgebraicNumber | Rationalish) -> AlgebraicNumber:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for r1, q1 in self._terms.items():
            for r2, q2 in other._terms.items():
                # sqrt(r1) sqrt(r2) = g sqrt(r1 r2 / g^2); both square-free
                g = math.gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                s = out.get(r, 0) + q1 * q2 * g
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return AlgebraicNumber(out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, q: Rationalish) -> AlgebraicNumber:
        q = Fraction(q)
        if not q:
            return ZERO
        return AlgebraicNumber({r: c * q for r, c in self._terms.items()}, _trusted=True)

    # comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber.rational(other)
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # conversion -------------------------------------------------------

    def __float__(self) -> float:
        return alg_to_float(self)

    def __str__(self) -> str:
        return format_algebraic(self)

    def __repr__(self) -> str:
        return f"AlgebraicNumber({format_algebraic(self)!r})"


def _from_canonical(terms: dict[int, Fraction]) -> AlgebraicNumber:
    return AlgebraicNumber(terms, _trusted=True)


def _coerce(x) -> AlgebraicNumber | None:
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return AlgebraicNumber.rational(x)
    return None


ZERO = AlgebraicNumber({}, _trusted=True)
ONE = AlgebraicNumber({1: Fraction(1)}, _trusted=True)


def alg_add(x: AlgebraicNumber, y: AlgebraicNumber) -> AlgebraicNumber:
    return x + y


def alg_mul(x: AlgebraicNumber, y: AlgebraicNumber) -> AlgebraicNumber:
    return x * y


_GUARD_BITS = 64


def alg_to_float(x: AlgebraicNumber) -> float:
    """Round ``x`` to a double.

    Each term is evaluated as a fixed-point integer carrying 53 + 64 bits
    below the leading bit of the largest term; the working scale grows until
    the sum clears the accumulated truncation error by the same guard.
    """
    terms = list(x.items())
    if not terms:
        return 0.0
    top = max(
        q.numerator.bit_length() - q.denominator.bit_length() + (r.bit_length() + 1) // 2
        for r, q in terms
    )
    scale_bits = 53 + _GUARD_BITS - top
    err_bits = len(terms).bit_length() + 1
    while True:
        total = 0
        for r, q in terms:
            n, d = abs(q.numerator), q.denominator
            if scale_bits >= 0:
                v = math.isqrt((n * n * r) << (2 * scale_bits)) // d
            else:
                v = math.isqrt(n * n * r >> (-2 * scale_bits)) // d
            total += v if q > 0 else -v
        if abs(total).bit_length() >= 53 + _GUARD_BITS // 2 + err_bits:
            return float(Fraction(total, 1 << scale_bits) if scale_bits >= 0 else total << -scale_bits)
        if scale_bits > 53 + _GUARD_BITS - top + 16_000:
            # exact cancellation is impossible for canonical nonzero input; bail out anyway
            return float(Fraction(total, 1 << scale_bits))
        scale_bits += 2 * _GUARD_BITS


def format_algebraic(x: AlgebraicNumber) -> str:
    """Text form ``n/d sqrt r + n/d sqrt r``; ``0`` when empty."""
    if not x.terms:
        return "0"
    return " + ".join(f"{q.numerator}/{q.denominator} sqrt {r}" for r, q in x.items())


_TERM_RE = re.compile(r"^\s*(-?\d+)\s*/\s*(\d+)\s+sqrt\s+(\d+)\s*$")


def parse_algebraic(text: str) -> AlgebraicNumber:
    """Inverse of :func:`format_algebraic`; rejects non-canonical radicands."""
    text = text.strip()
    if text == "0":
        return ZERO
    out: dict[int, Fraction] = {}
    for chunk in text.split(" + "):
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"malformed term {chunk!r}")
        num, den, rad = int(m.group(1)), int(m.group(2)), int(m.group(3))
        if den == 0:
            raise ValueError("zero denominator")
        if rad < 1 or not is_squarefree(rad):
            raise ValueError(f"radicand {rad} is not square-free")
        if rad in out:
            raise ValueError(f"radicand {rad} repeated")
        q = Fraction(num, den)
        if not q:
            raise ValueError("zero coefficient in canonical form")
        out[rad] = q
    return AlgebraicNumber(out, _trusted=True)
