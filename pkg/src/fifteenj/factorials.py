"""Prime-factorized factorials.

Factorials up to the largest argument seen so far are kept as rows of a
``(n + 1) x (number of primes)`` exponent table. Products and ratios of
factorials are then integer vector sums, and the square root of such a ratio
splits into an exact rational part and a square-free radicand by looking at
exponent parity.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np


def _sieve_spf(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for ``0..limit``."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p] = p
            spf[p * p :: p][spf[p * p :: p] == 0] = p
    return spf


class _FactorialTable:
    """Memo of factorial exponent vectors; readers never take the lock."""

    def __init__(self, initial: int = 256) -> None:
        self._lock = threading.Lock()
        self._build(initial)

    def _build(self, limit: int) -> None:
        spf = _sieve_spf(limit)
        primes = np.flatnonzero(spf[2:] == np.arange(2, limit + 1)) + 2
        index = {int(p): i for i, p in enumerate(primes)}
        table = np.zeros((limit + 1, len(primes)), dtype=np.int64)
        for n in range(2, limit + 1):
            table[n] = table[n - 1]
            m = n
            while m > 1:
                p = int(spf[m])
                m //= p
                table[n, index[p]] += 1
        # publish atomically: a reader sees either the old or the new state
        self._state = (limit, primes, index, table)

    def ensure(self, n: int) -> None:
        if n <= self._state[0]:
            return
        with self._lock:
            limit = self._state[0]
            if n <= limit:
                return
            while limit < n:
                limit *= 2
            self._build(limit)

    @property
    def state(self):
        return self._state


_TABLE = _FactorialTable()


def primes_up_to(n: int) -> np.ndarray:
    """Primes ``<= n`` (as used by the exponent vectors once ``ensure(n)``)."""
    _TABLE.ensure(max(n, 2))
    primes = _TABLE.state[1]
    return primes[primes <= n]


def exponent_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(primes, table)`` with ``table[k]`` the exponents of ``k!`` for ``k <= n``.

    The arrays are shared; treat them as read-only.
    """
    _TABLE.ensure(n)
    _, primes, _, table = _TABLE.state
    return primes, table


@dataclass(frozen=True)
class FactorialFactors:
    """Exact prime factorization ``{p: e}`` of a positive rational."""

    exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {int(p): int(e) for p, e in self.exponents.items() if e}
        object.__setattr__(self, "exponents", MappingProxyType(clean))

    def __mul__(self, other: FactorialFactors) -> FactorialFactors:
        out = dict(self.exponents)
        for p, e in other.exponents.items():
            out[p] = out.get(p, 0) + e
        return FactorialFactors(out)

    def __truediv__(self, other: FactorialFactors) -> FactorialFactors:
        out = dict(self.exponents)
        for p, e in other.exponents.items():
            out[p] = out.get(p, 0) - e
        return FactorialFactors(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactorialFactors):
            return NotImplemented
        return dict(self.exponents) == dict(other.exponents)

    def __hash__(self) -> int:
        return hash(frozenset(self.exponents.items()))

    def value(self) -> Fraction:
        num, den = 1, 1
        for p, e in self.exponents.items():
            if e > 0:
                num *= p**e
            else:
                den *= p ** (-e)
        return Fraction(num, den)


def factorial_factors(n: int) -> FactorialFactors:
    """Prime factorization of ``n!``.

    >>> dict(factorial_factors(6).exponents)
    {2: 4, 3: 2, 5: 1}
    """
    if n < 0:
        raise ValueError("factorial of a negative number")
    primes, table = exponent_table(max(n, 2))
    row = table[n]
    nz = np.flatnonzero(row)
    return FactorialFactors({int(primes[i]): int(row[i]) for i in nz})


def integer_factors(n: int) -> FactorialFactors:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError("only positive integers are factorized")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return FactorialFactors(out)


def factorial_ratio_vector(
    numerator: Iterable[int], denominator: Iterable[int], n_max: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Exponent vector of ``prod(a!) / prod(b!)``; returns ``(primes, exponents)``."""
    numerator = list(numerator)
    denominator = list(denominator)
    top = max(numerator + denominator + [2]) if n_max is None else n_max
    primes, table = exponent_table(top)
    vec = table[numerator].sum(axis=0) - table[denominator].sum(axis=0)
    return primes, vec


def split_sqrt(primes: Sequence[int], exponents: np.ndarray) -> tuple[Fraction, int]:
    """Write ``sqrt(prod p**e)`` as ``q * sqrt(r)`` with ``r`` square-free.

    Odd exponents contribute one factor of ``p`` to ``r``; floor division keeps
    ``q`` exact for negative exponents (``sqrt(1/p) = (1/p) * sqrt(p)``).
    """
    num, den, rad = 1, 1, 1
    for i in np.flatnonzero(exponents):
        p = int(primes[i])
        e = int(exponents[i])
        half = e // 2
        if e & 1:
            rad *= p
        if half > 0:
            num *= p**half
        elif half < 0:
            den *= p ** (-half)
    return Fraction(num, den), rad
