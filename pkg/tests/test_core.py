"""Half-integers, prime-factorized factorials and exact algebraic numbers."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fifteenj.algebraic import (
    ONE,
    ZERO,
    AlgebraicNumber,
    alg_add,
    alg_mul,
    alg_to_float,
    format_algebraic,
    is_squarefree,
    parse_algebraic,
)
from fifteenj.factorials import (
    factorial_factors,
    factorial_ratio_vector,
    integer_factors,
    split_sqrt,
)
from fifteenj.halfint import HalfInt, phase2, sign_power2, triangle_ok, triangle_ok2

twice = st.integers(0, 60)
fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 21, 30, 105])


@st.composite
def algebraics(draw, max_terms=3):
    n = draw(st.integers(0, max_terms))
    total = ZERO
    for _ in range(n):
        total = total + AlgebraicNumber.term(draw(fractions), draw(radicands))
    return total


class TestHalfInt:
    def test_parse_forms(self):
        assert HalfInt.of("3/2").twice == 3
        assert HalfInt.of(2).twice == 4
        assert HalfInt.of(Fraction(5, 2)).twice == 5
        assert HalfInt.of(1.5).twice == 3

    def test_rejects_thirds(self):
        with pytest.raises((ValueError, TypeError)):
            HalfInt.of(Fraction(1, 3))

    def test_str_and_dim(self):
        assert str(HalfInt(5)) == "5/2"
        assert str(HalfInt(4)) == "2"
        assert HalfInt(5).dim == 6

    @given(twice, twice)
    def test_arithmetic(self, a, b):
        assert (HalfInt(a) + HalfInt(b)).twice == a + b
        assert abs(HalfInt(a) - HalfInt(b)).twice == abs(a - b)

    @given(twice, twice, twice)
    def test_triangle_symmetric(self, a, b, c):
        ok = triangle_ok2(a, b, c)
        assert ok == triangle_ok2(b, c, a) == triangle_ok2(c, b, a)
        assert ok == triangle_ok(HalfInt(a), HalfInt(b), HalfInt(c))
        if ok:
            assert (a + b + c) % 2 == 0

    def test_triangle_cases(self):
        assert triangle_ok2(1, 1, 0)
        assert triangle_ok2(2, 2, 4)
        assert not triangle_ok2(1, 1, 1)
        assert not triangle_ok2(2, 2, 6)

    @given(st.integers(-40, 40))
    def test_phase_cycle(self, t):
        assert phase2(t) == pytest.approx(complex(math.cos(math.pi * t / 2), math.sin(math.pi * t / 2)))
        if t % 2 == 0:
            assert sign_power2(t) == (-1) ** (t // 2)
        else:
            with pytest.raises(ValueError):
                sign_power2(t)


class TestFactorials:
    @given(st.integers(0, 300))
    def test_factorial_value(self, n):
        assert factorial_factors(n).value() == math.factorial(n)

    @given(st.integers(1, 10**6))
    def test_integer_factors(self, n):
        assert integer_factors(n).value() == n

    @given(st.integers(0, 80), st.integers(0, 80))
    def test_ratio(self, a, b):
        q = (factorial_factors(a) / factorial_factors(b)).value()
        assert q == Fraction(math.factorial(a), math.factorial(b))
        assert (factorial_factors(a) * factorial_factors(b)).value() == math.factorial(a) * math.factorial(b)

    def test_ratio_vector_and_sqrt(self):
        primes, vec = factorial_ratio_vector([6], [3, 2])  # 720 / 12 = 60
        value = Fraction(1)
        for p, e in zip(primes, vec):
            value *= Fraction(int(p)) ** int(e)
        assert value == 60
        q, r = split_sqrt(primes, vec)
        assert (q, r) == (2, 15)

    def test_split_sqrt_negative(self):
        q, r = split_sqrt([2, 3], np.array([-3, 2]))
        assert (q, r) == (Fraction(3, 4), 2)


class TestAlgebraic:
    def test_canonical(self):
        assert AlgebraicNumber.sqrt_rational(Fraction(8, 3)) == AlgebraicNumber.term(Fraction(2, 3), 6)
        assert AlgebraicNumber.term(1, 2) + AlgebraicNumber.term(-1, 2) == ZERO
        assert not ZERO and ONE

    def test_format(self):
        assert format_algebraic(AlgebraicNumber.rational(Fraction(1, 6))) == "1/6 sqrt 1"
        assert format_algebraic(ZERO) == "0"

    def test_parse_rejects(self):
        for bad in ("1/2 sqrt 4", "1/0 sqrt 2", "x", "1/2 sqrt 2 + 1/3 sqrt 2", "0/1 sqrt 3"):
            with pytest.raises(ValueError):
                parse_algebraic(bad)

    @given(algebraics())
    def test_roundtrip(self, x):
        assert parse_algebraic(format_algebraic(x)) == x

    @given(algebraics(), algebraics(), algebraics())
    def test_field_laws(self, x, y, z):
        assert alg_add(x, y) == alg_add(y, x)
        assert alg_mul(x, y) == alg_mul(y, x)
        assert alg_mul(x, alg_add(y, z)) == alg_add(alg_mul(x, y), alg_mul(x, z))
        assert x - x == ZERO

    @given(algebraics(), algebraics())
    def test_float_matches(self, x, y):
        exact = alg_to_float(x * y)
        approx = float(x) * float(y)
        assert exact == pytest.approx(approx, rel=1e-9, abs=1e-9)

    def test_float_cancellation(self):
        # sqrt(2) - 1.41421356... rational approximant: tiny but nonzero
        x = AlgebraicNumber.term(1, 2) - AlgebraicNumber.rational(Fraction(665857, 470832))
        assert alg_to_float(x) == pytest.approx(-1.5947429102833119e-12, rel=1e-12)

    @given(fractions)
    def test_sqrt_squares(self, q):
        r = AlgebraicNumber.sqrt_rational(abs(q))
        assert r * r == AlgebraicNumber.rational(abs(q))

    @given(st.integers(1, 5000))
    def test_squarefree(self, n):
        expect = all(n % (p * p) for p in range(2, math.isqrt(n) + 1))
        assert is_squarefree(n) == expect


@given(algebraics())
def test_algebraic_pickles(x):
    import pickle

    assert pickle.loads(pickle.dumps(x)) == x
