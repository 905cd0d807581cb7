"""Wigner reduced rotation matrix ``d^s_{nu mu}(theta)``."""

from __future__ import annotations

import math

import numpy as np

from ..halfint import HalfInt, HalfIntLike


class DMatrixIndexError(ValueError):
    """Projection indices outside ``-s..s`` or of the wrong parity."""


def _check(ts: int, tn: int, tm: int) -> None:
    if ts < 0:
        raise DMatrixIndexError("spin must be non-negative")
    if abs(tn) > ts or abs(tm) > ts or (ts - tn) % 2 or (ts - tm) % 2:
        raise DMatrixIndexError(f"indices ({tn}/2, {tm}/2) invalid for s = {ts}/2")


def wigner_d2(ts: int, tn: int, tm: int, theta: float) -> float:
    """``d^s_{nu mu}(theta) = <s nu| exp(-i theta S_y) |s mu>`` on doubled labels.

    Wigner's explicit sum; exactly ``delta`` at ``theta == 0``.
    """
    _check(ts, tn, tm)
    if theta == 0.0:
        return 1.0 if tn == tm else 0.0
    s_p_n, s_m_n = (ts + tn) // 2, (ts - tn) // 2
    s_p_m, s_m_m = (ts + tm) // 2, (ts - tm) // 2
    diff = (tn - tm) // 2  # nu - mu
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    f = math.factorial
    pref = math.sqrt(f(s_p_n) * f(s_m_n) * f(s_p_m) * f(s_m_m))
    total = 0.0
    for k in range(max(0, -diff), min(s_p_m, s_m_n) + 1):
        den = f(s_p_m - k) * f(k) * f(s_m_n - k) * f(k + diff)
        term = c ** (ts - 2 * k - diff) * s ** (2 * k + diff) / den
        total += -term if (k + diff) & 1 else term
    return pref * total


def wigner_d(s: HalfIntLike, nu: HalfIntLike, mu: HalfIntLike, theta: float) -> float:
    """Reduced rotation matrix element ``d^s_{nu mu}(theta)``."""
    return wigner_d2(HalfInt.of(s).twice, HalfInt.of(nu).twice, HalfInt.of(mu).twice, theta)


def wigner_d_matrix(s: HalfIntLike, theta: float) -> np.ndarray:
    """Full ``(2s+1) x (2s+1)`` matrix, rows ``nu = s..-s``, columns ``mu = s..-s``."""
    ts = HalfInt.of(s).twice
    idx = range(ts, -ts - 1, -2)
    return np.array([[wigner_d2(ts, n, m, theta) for m in idx] for n in idx])


def in_range(ts: int, tn: int, tm: int) -> bool:
    """True when ``d^s_{nu mu}`` is defined (indices within ``-s..s``)."""
    return abs(tn) <= ts and abs(tm) <= ts and (ts - tn) % 2 == 0 and (ts - tm) % 2 == 0
