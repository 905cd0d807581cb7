"""Brute-force magnetic-sum contractions used to check the fast reductions.

Nothing here calls the 6j machinery: every value is built from exact 3j
symbols summed over all magnetic indices.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..algebraic import ZERO, AlgebraicNumber
from ..halfint import sign_power2
from .labels import FifteenJLabels
from .symbols import wigner_3j2

ORACLE_MAX_TWICE = 6  # labels <= 3


class OracleSizeError(ValueError):
    """Labels exceed the brute-force cost guard."""


def _ms(tj: int) -> range:
    return range(-tj, tj + 1, 2)


@lru_cache(maxsize=None)
def _3j(tj1, tj2, tj3, tm1, tm2, tm3) -> AlgebraicNumber:
    # derived projections can have the wrong parity when a triad sum is odd
    if (tj1 - tm1) % 2 or (tj2 - tm2) % 2 or (tj3 - tm3) % 2:
        return ZERO
    return wigner_3j2(tj1, tj2, tj3, tm1, tm2, tm3)


@lru_cache(maxsize=None)
def _sqrt_dim(tj: int) -> AlgebraicNumber:
    return AlgebraicNumber.sqrt_rational(tj + 1)


@lru_cache(maxsize=None)
def clebsch_gordan2(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> AlgebraicNumber:
    """``<j1 m1 j2 m2 | j m>`` on doubled labels (Condon-Shortley)."""
    if tm1 + tm2 != tm:
        return ZERO
    v = _3j(tj1, tj2, tj, tm1, tm2, -tm)
    if not v:
        return ZERO
    return (v * _sqrt_dim(tj)).scale(sign_power2(tj1 - tj2 + tm))


def sixj_oracle2(ta, tb, tc, td, te, tf) -> AlgebraicNumber:
    """6j as a contraction of four 3j symbols.

    ``{a b c; d e f} = sum (-1)^(sum of (j - m) over the six labels)
    (a b c; -ma -mb -mc)(a e f; ma -me mf)(d b f; md mb -mf)(d e c; -md me mc)``.
    """
    total = ZERO
    for ma in _ms(ta):
        for mb in _ms(tb):
            mc = -ma - mb
            if abs(mc) > tc:
                continue
            v1 = _3j(ta, tb, tc, -ma, -mb, -mc)
            if not v1:
                continue
            for me in _ms(te):
                mf = me - ma
                if abs(mf) > tf:
                    continue
                v2 = _3j(ta, te, tf, ma, -me, mf)
                if not v2:
                    continue
                md = mf - mb
                if abs(md) > td:
                    continue
                v3 = _3j(td, tb, tf, md, mb, -mf)
                if not v3:
                    continue
                v4 = _3j(td, te, tc, -md, me, mc)
                if not v4:
                    continue
                ex = (ta - ma) + (tb - mb) + (tc - mc) + (td - md) + (te - me) + (tf - mf)
                total = total + (v1 * v2 * v3 * v4).scale(sign_power2(ex))
    return total


def ninej_oracle2(t1, t2, t3, t4, t5, t6, t7, t8, t9) -> AlgebraicNumber:
    """9j as the sum over all magnetic indices of its three row and three column 3j's."""
    total = ZERO
    for m1 in _ms(t1):
        for m2 in _ms(t2):
            m3 = -m1 - m2
            if abs(m3) > t3:
                continue
            r1 = _3j(t1, t2, t3, m1, m2, m3)
            if not r1:
                continue
            for m4 in _ms(t4):
                m7 = -m1 - m4
                if abs(m7) > t7:
                    continue
                c1 = _3j(t1, t4, t7, m1, m4, m7)
                if not c1:
                    continue
                for m5 in _ms(t5):
                    m6 = -m4 - m5
                    m8 = -m2 - m5
                    m9 = -m3 - m6
                    if abs(m6) > t6 or abs(m8) > t8 or abs(m9) > t9 or m7 + m8 + m9:
                        continue
                    p = _3j(t4, t5, t6, m4, m5, m6)
                    if not p:
                        continue
                    p = p * _3j(t7, t8, t9, m7, m8, m9)
                    if not p:
                        continue
                    p = p * _3j(t2, t5, t8, m2, m5, m8)
                    if not p:
                        continue
                    p = p * _3j(t3, t6, t9, m3, m6, m9)
                    if p:
                        total = total + r1 * c1 * p
    return total


def _scheme_state(ja, jb, jab, j5, jab5, j6, jab56, jc, jd, jcd, j7):
    """Product-basis amplitudes of ``((((a b)ab 5)ab5 6)ab56 (c d)cd)7, 7; 0``.

    Keys are ``(ma, mb, mc, md, m5, m6, m7)``.
    """
    cg = clebsch_gordan2
    out: dict[tuple[int, ...], AlgebraicNumber] = {}
    for ma in _ms(ja):
        for mb in _ms(jb):
            mab = ma + mb
            c1 = cg(ja, ma, jb, mb, jab, mab)
            if not c1:
                continue
            for m5 in _ms(j5):
                m1 = mab + m5
                c2 = cg(jab, mab, j5, m5, jab5, m1)
                if not c2:
                    continue
                c12 = c1 * c2
                for m6 in _ms(j6):
                    m2 = m1 + m6
                    c3 = cg(jab5, m1, j6, m6, jab56, m2)
                    if not c3:
                        continue
                    c123 = c12 * c3
                    for mc in _ms(jc):
                        for md in _ms(jd):
                            mcd = mc + md
                            c4 = cg(jc, mc, jd, md, jcd, mcd)
                            if not c4:
                                continue
                            m7 = m2 + mcd
                            c5 = cg(jab56, m2, jcd, mcd, j7, m7)
                            if not c5:
                                continue
                            c6 = cg(j7, m7, j7, -m7, 0, 0)
                            out[(ma, mb, mc, md, m5, m6, -m7)] = c123 * c4 * c5 * c6
    return out


def recoupling_overlap(labels: FifteenJLabels) -> AlgebraicNumber:
    """``<b|a>`` between the (12)(34) and (13)(24) coupling schemes, coupled to zero."""
    t = labels.twice
    a = _scheme_state(
        t["j1"], t["j2"], t["j12"], t["j5"], t["j125"], t["j6"], t["j1256"], t["j3"], t["j4"], t["j34"], t["j7"]
    )
    b = _scheme_state(
        t["j1"], t["j3"], t["j13"], t["j5"], t["j135"], t["j6"], t["j1356"], t["j2"], t["j4"], t["j24"], t["j7"]
    )
    total = ZERO
    for (m1, m3, m2, m4, m5, m6, m7), vb in b.items():
        va = a.get((m1, m2, m3, m4, m5, m6, m7))
        if va is not None:
            total = total + va * vb
    return total


_NORM_LABELS = ("j12", "j34", "j13", "j24", "j125", "j135", "j1256", "j1356")


def contract_moebius_oracle(labels: FifteenJLabels, max_twice: int = ORACLE_MAX_TWICE) -> AlgebraicNumber:
    """First-kind 15j by brute-force contraction of the ten coupling vertices.

    Each vertex is a Clebsch-Gordan coefficient (a 3j symbol dressed with
    the one-j metric phase), summed over every magnetic index; the result is
    normalized by the square root of the eight intermediate multiplicities.
    """
    t = labels.twice
    if max(t.values()) > max_twice:
        raise OracleSizeError(f"oracle contraction limited to labels <= {max_twice}/2")
    if not labels.admissible():
        return ZERO
    overlap = recoupling_overlap(labels)
    if not overlap:
        return ZERO
    norm = 1
    for n in _NORM_LABELS:
        norm *= t[n] + 1
    # 1/sqrt(n) = sqrt(n)/n
    return (overlap * AlgebraicNumber.sqrt_rational(norm)).scale(Fraction(1, norm))
