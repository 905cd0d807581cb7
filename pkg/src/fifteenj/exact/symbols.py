"""Exact 3j, 6j, 9j and 15j (first kind) symbols.

All labels enter as half-integers and are handled internally as doubled
integers. Square roots of factorial ratios are split through their prime
factorizations; the alternating Racah sums are done in integers over a
common denominator.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebraic import ZERO, AlgebraicNumber
from ..factorials import factorial_ratio_vector, split_sqrt
from ..halfint import HalfInt, HalfIntLike, sign_power2, triangle_ok2
from .cache import SymbolCache, default_cache
from .labels import FifteenJLabels


class SymbolInputError(ValueError):
    """Magnetic or angular labels outside their allowed domain."""


def _tw(x: HalfIntLike) -> int:
    return HalfInt.of(x).twice


def _falling(hi: int, lo: int) -> int:
    """``hi! / lo!`` for ``hi >= lo``."""
    out = 1
    for k in range(lo + 1, hi + 1):
        out *= k
    return out


# ---------------------------------------------------------------------------
# 3j


def wigner_3j(j1, j2, j3, m1, m2, m3) -> AlgebraicNumber:
    """Exact 3j symbol ``(j1 j2 j3; m1 m2 m3)`` (Racah's closed form)."""
    t = [_tw(x) for x in (j1, j2, j3, m1, m2, m3)]
    for tj, tm in zip(t[:3], t[3:]):
        if tj < 0:
            raise SymbolInputError("angular momentum must be non-negative")
        if abs(tm) > tj or (tj - tm) % 2:
            raise SymbolInputError(f"m={tm}/2 incompatible with j={tj}/2")
    return wigner_3j2(*t)


def wigner_3j2(tj1: int, tj2: int, tj3: int, tm1: int, tm2: int, tm3: int) -> AlgebraicNumber:
    """3j symbol on doubled, pre-validated labels."""
    if tm1 + tm2 + tm3 != 0 or not triangle_ok2(tj1, tj2, tj3):
        return ZERO
    # integer combinations (doubled sums are even here)
    a = (tj1 + tj2 - tj3) // 2
    b = (tj1 - tj2 + tj3) // 2
    c = (-tj1 + tj2 + tj3) // 2
    s = (tj1 + tj2 + tj3) // 2
    j1pm, j1mm = (tj1 + tm1) // 2, (tj1 - tm1) // 2
    j2pm, j2mm = (tj2 + tm2) // 2, (tj2 - tm2) // 2
    j3pm, j3mm = (tj3 + tm3) // 2, (tj3 - tm3) // 2
    # denominator factorials: k!, (j3-j2+m1+k)!, (j3-j1-m2+k)!, (a-k)!, (j1-m1-k)!, (j2+m2-k)!
    o1 = (tj3 - tj2 + tm1) // 2
    o2 = (tj3 - tj1 - tm2) // 2
    kmin = max(0, -o1, -o2)
    kmax = min(a, j1mm, j2pm)
    if kmin > kmax:
        return ZERO
    # common denominator L = prod of each factorial at its extreme k
    num_tops = [kmax, o1 + kmax, o2 + kmax]
    den_tops = [a - kmin, j1mm - kmin, j2pm - kmin]
    total = 0
    for k in range(kmin, kmax + 1):
        term = (
            _falling(num_tops[0], k)
            * _falling(num_tops[1], o1 + k)
            * _falling(num_tops[2], o2 + k)
            * _falling(den_tops[0], a - k)
            * _falling(den_tops[1], j1mm - k)
            * _falling(den_tops[2], j2pm - k)
        )
        total += -term if k & 1 else term
    if not total:
        return ZERO
    primes, vec = factorial_ratio_vector(
        [a, b, c, j1pm, j1mm, j2pm, j2mm, j3pm, j3mm],
        [s + 1] + [x for x in num_tops] + [x for x in den_tops] + [x for x in num_tops] + [x for x in den_tops],
    )
    q, rad = split_sqrt(primes, vec)
    phase = sign_power2(tj1 - tj2 - tm3)
    return AlgebraicNumber.term(phase * q * total, rad)


# ---------------------------------------------------------------------------
# 6j


def _sixj_uncached(ta: int, tb: int, tc: int, td: int, te: int, tf: int) -> AlgebraicNumber:
    # Racah: Delta(abc) Delta(aef) Delta(dbf) Delta(dec) sum_z (-1)^z (z+1)! / (...)
    tri = [(ta, tb, tc), (ta, te, tf), (td, tb, tf), (td, te, tc)]
    alphas = [(x + y + z) // 2 for x, y, z in tri]
    betas = [(ta + tb + td + te) // 2, (tb + tc + te + tf) // 2, (tc + ta + tf + td) // 2]
    zmin, zmax = max(alphas), min(betas)
    if zmin > zmax:
        return ZERO
    # u_z = t_z * L with L = prod (zmax - alpha)! * prod (beta - zmin)!
    u = _fact(zmin + 1)
    for al in alphas:
        u *= _falling(zmax - al, zmin - al)
    total = 0
    z = zmin
    while True:
        total += -u if z & 1 else u
        if z == zmax:
            break
        num = z + 2
        for be in betas:
            num *= be - z
        den = 1
        for al in alphas:
            den *= z + 1 - al
        u = u * num // den
        z += 1
    if not total:
        return ZERO
    num_f, den_f = [], []
    for x, y, w in tri:
        num_f += [(x + y - w) // 2, (x - y + w) // 2, (-x + y + w) // 2]
        den_f.append((x + y + w) // 2 + 1)
    # divide by L: L^2 goes under the square root as a denominator
    Ls = [zmax - al for al in alphas] + [be - zmin for be in betas]
    primes, vec = factorial_ratio_vector(num_f, den_f + Ls + Ls)
    q, rad = split_sqrt(primes, vec)
    return AlgebraicNumber.term(q * total, rad)


_FACT_CACHE = [1]


def _fact(n: int) -> int:
    while len(_FACT_CACHE) <= n:
        _FACT_CACHE.append(_FACT_CACHE[-1] * len(_FACT_CACHE))
    return _FACT_CACHE[n]


def sixj_triads_ok(ta: int, tb: int, tc: int, td: int, te: int, tf: int) -> bool:
    return (
        triangle_ok2(ta, tb, tc)
        and triangle_ok2(ta, te, tf)
        and triangle_ok2(td, tb, tf)
        and triangle_ok2(td, te, tc)
    )


def wigner_6j2(
    ta: int, tb: int, tc: int, td: int, te: int, tf: int, cache: SymbolCache | None = None
) -> AlgebraicNumber:
    """6j symbol on doubled labels, memoized in ``cache`` (default: process cache)."""
    if not sixj_triads_ok(ta, tb, tc, td, te, tf):
        return ZERO
    if cache is None:
        cache = default_cache()
    key = (ta, tb, tc, td, te, tf)
    value = cache.get(key)
    if value is None:
        value = _sixj_uncached(*key)
        cache.put(key, value)
    return value


def wigner_6j(a, b, c, d, e, f, cache: SymbolCache | None = None) -> AlgebraicNumber:
    """Exact 6j symbol ``{a b c; d e f}``; zero unless all four triads hold."""
    t = [_tw(x) for x in (a, b, c, d, e, f)]
    return wigner_6j2(*t, cache=cache)


# ---------------------------------------------------------------------------
# 9j


def wigner_9j(j1, j2, j3, j4, j5, j6, j7, j8, j9, cache: SymbolCache | None = None) -> AlgebraicNumber:
    """Exact 9j symbol with rows ``(j1 j2 j3) (j4 j5 j6) (j7 j8 j9)``.

    Single sum over ``x`` of ``(-1)^(2x) (2x+1)`` times three 6j symbols.
    """
    t = [_tw(x) for x in (j1, j2, j3, j4, j5, j6, j7, j8, j9)]
    return wigner_9j2(*t, cache=cache)


def wigner_9j2(t1, t2, t3, t4, t5, t6, t7, t8, t9, cache: SymbolCache | None = None) -> AlgebraicNumber:
    rows = [(t1, t2, t3), (t4, t5, t6), (t7, t8, t9)]
    cols = [(t1, t4, t7), (t2, t5, t8), (t3, t6, t9)]
    if not all(triangle_ok2(*r) for r in rows + cols):
        return ZERO
    lo = max(abs(t1 - t9), abs(t4 - t8), abs(t2 - t6))
    hi = min(t1 + t9, t4 + t8, t2 + t6)
    total = ZERO
    for tx in range(lo, hi + 1, 2):
        p = wigner_6j2(t1, t4, t7, t8, t9, tx, cache)
        if not p:
            continue
        p = p * wigner_6j2(t2, t5, t8, t4, tx, t6, cache)
        if not p:
            continue
        p = p * wigner_6j2(t3, t6, t9, tx, t1, t2, cache)
        if p:
            total = total + p.scale(sign_power2(2 * tx) * (tx + 1))
    return total


# ---------------------------------------------------------------------------
# 15j, first kind


def fifteen_j_phase2(L: FifteenJLabels) -> int:
    """Doubled exponent of the overall sign of the single-sum reduction."""
    t = L.twice
    return (
        -t["j1"] + t["j2"] + t["j3"] - t["j4"] + t["j5"] + t["j6"] - t["j7"]
        + t["j34"] + t["j24"] + t["j125"] + t["j135"]
    )


def fifteen_j_terms(L: FifteenJLabels, cache: SymbolCache | None = None):
    """Yield ``(2x, term)`` of the single-sum reduction, without the overall sign.

    The Moebius network is a ten-vertex ring with five rungs. Cutting the
    ring along the internal label ``x`` leaves five 6j symbols whose
    x-free triads are exactly the ten couplings of the two schemes.
    """
    t = L.twice
    j1, j2, j3, j4, j5, j6, j7 = (t[k] for k in ("j1", "j2", "j3", "j4", "j5", "j6", "j7"))
    j12, j34, j13, j24 = t["j12"], t["j34"], t["j13"], t["j24"]
    j125, j135, j1256, j1356 = t["j125"], t["j135"], t["j1256"], t["j1356"]
    pairs = [(j2, j3), (j12, j13), (j125, j135), (j1256, j1356), (j34, j24)]
    lo = max(abs(p - q) for p, q in pairs)
    hi = min(p + q for p, q in pairs)
    for tx in range(lo, hi + 1, 2):
        p = wigner_6j2(j2, j3, tx, j13, j12, j1, cache)
        if not p:
            continue
        for six in (
            (j12, j13, tx, j135, j125, j5),
            (j125, j135, tx, j1356, j1256, j6),
            (j1256, j1356, tx, j24, j34, j7),
            (j34, j24, tx, j2, j3, j4),
        ):
            p = p * wigner_6j2(*six, cache)
            if not p:
                break
        if p:
            yield tx, p.scale(tx + 1)


def wigner_15j_first(labels: FifteenJLabels, cache: SymbolCache | None = None) -> AlgebraicNumber:
    """Exact 15j symbol of the first kind in the three-row layout.

    Zero for inadmissible labels. The value equals the overlap of the two
    coupling schemes ``((((j1 j2)j12 j5)j125 j6)j1256 (j3 j4)j34)j7`` and
    ``((((j1 j3)j13 j5)j135 j6)j1356 (j2 j4)j24)j7`` divided by the square
    root of the eight intermediate multiplicities.
    """
    if not labels.admissible():
        return ZERO
    total = ZERO
    for _, term in fifteen_j_terms(labels, cache):
        total = total + term
    return total.scale(sign_power2(fifteen_j_phase2(labels)))
