"""Asymptotic 15j formulas with two, three or four small angular momenta.

Large labels enter through ``J = j + 1/2``. Every result carries a regime
tag; geometry that is not classically allowed is labelled, never
extrapolated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .. import geometry as geo
from ..exact.labels import FifteenJLabels
from ..halfint import HalfInt, phase2
from .dmatrix import in_range, wigner_d2


class Regime(str, enum.Enum):
    ALLOWED = "Allowed"
    FORBIDDEN = "Forbidden"
    CAUSTIC = "Caustic"


class Formula(str, enum.Enum):
    TWO_SMALL = "two_small"
    THREE_SMALL = "three_small"
    FOUR_SMALL = "four_small"


# labels treated as small by each formula
SMALL_LABELS: dict[Formula, frozenset[str]] = {
    Formula.TWO_SMALL: frozenset({"j5", "j6"}),
    Formula.THREE_SMALL: frozenset({"j3", "j5", "j6"}),
    Formula.FOUR_SMALL: frozenset({"j1", "j4", "j5", "j6"}),
}


@dataclass(frozen=True)
class AsymptoticResult:
    value: float
    regime: Regime
    diagnostics: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.regime is Regime.ALLOWED and not math.isfinite(self.value):
            raise ValueError("allowed-regime value must be finite")


def _off(regime: Regime, reason: str) -> AsymptoticResult:
    return AsymptoticResult(math.nan, regime, {"reason": reason})  # type: ignore[dict-item]


def _zero(**diag: float) -> AsymptoticResult:
    return AsymptoticResult(0.0, Regime.ALLOWED, diag)


# index definitions: name -> (small spin, upper label, lower label)
_INDEX_DEFS: dict[str, tuple[str, str, str]] = {
    "mu1": ("j1", "j12", "j2"),
    "nu1": ("j1", "j13", "j3"),
    "mu4": ("j4", "j24", "j2"),
    "nu4": ("j4", "j34", "j3"),
    "mu3": ("j3", "j34", "j4"),
    "nu3": ("j3", "j13", "j1"),
    "mu5": ("j5", "j125", "j12"),
    "nu5": ("j5", "j135", "j13"),
    "mu6": ("j6", "j1256", "j125"),
    "nu6": ("j6", "j1356", "j135"),
}

_CASE_INDICES: dict[Formula, tuple[str, ...]] = {
    Formula.TWO_SMALL: ("mu5", "nu5", "mu6", "nu6"),
    Formula.THREE_SMALL: ("mu3", "nu3", "mu5", "nu5", "mu6", "nu6"),
    Formula.FOUR_SMALL: ("mu1", "nu1", "mu4", "nu4", "mu5", "nu5", "mu6", "nu6"),
}


@dataclass(frozen=True)
class SmallSpinIndices:
    """Projection indices ``mu_i, nu_i`` read off as label differences.

    Only the indices used by the chosen formula are populated.
    """

    values: Mapping[str, HalfInt]
    spins: Mapping[str, HalfInt]

    @classmethod
    def from_labels(cls, labels: FifteenJLabels, formula: Formula) -> SmallSpinIndices:
        t = labels.twice
        vals, spins = {}, {}
        for name in _CASE_INDICES[Formula(formula)]:
            s, hi, lo = _INDEX_DEFS[name]
            vals[name] = HalfInt(t[hi] - t[lo])
            spins[name] = HalfInt(t[s])
        return cls(vals, spins)

    def __getitem__(self, name: str) -> HalfInt:
        return self.values[name]

    def tw(self, name: str) -> int:
        return self.values[name].twice

    def in_bounds(self) -> bool:
        """``|mu|, |nu| <= s`` with matching parity for every populated index."""
        return all(
            in_range(self.spins[n].twice, v.twice, v.twice) for n, v in self.values.items()
        )


def _J(t: Mapping[str, int], name: str) -> float:
    return (t[name] + 1) / 2


def _real_sign(twice_exponent: int) -> int:
    """``(-1)^x`` for ``x = twice_exponent / 2``; must be real."""
    z = phase2(twice_exponent)
    if z.imag:
        raise ValueError("phase exponent is not an integer")
    return int(z.real)


def _dim_product(t: Mapping[str, int], names) -> int:
    out = 1
    for n in names:
        out *= t[n] + 1
    return out


# ---------------------------------------------------------------------------
# four small


def four_small_phase2(t: Mapping[str, int], ix: SmallSpinIndices) -> int:
    """Doubled exponent of the overall sign of the four-small formula.

    The base factor ``(-1)^(j2 + j3 + j7 + mu1 + mu4 + mu5 + mu6)`` times
    ``(-1)^(mu1 + nu1 + mu4 + nu4 + 2 s5 + 2 s6 + 2 j2 + 2 j3)``, the
    second factor fixed against the exact symbol for general labels.
    """
    base = t["j2"] + t["j3"] + t["j7"] + ix.tw("mu1") + ix.tw("mu4") + ix.tw("mu5") + ix.tw("mu6")
    fix = ix.tw("mu1") + ix.tw("nu1") + ix.tw("mu4") + ix.tw("nu4") + 2 * (t["j5"] + t["j6"] + t["j2"] + t["j3"])
    return base + fix


def asymp_four_small(labels: FifteenJLabels) -> AsymptoticResult:
    """Small ``j1, j4, j5, j6``: four d-matrices at the exterior angle of ``(J2, J3, J7)``."""
    t = labels.twice
    ix = SmallSpinIndices.from_labels(labels, Formula.FOUR_SMALL)
    if not ix.in_bounds() or not labels.admissible():
        return _zero()
    try:
        theta = geo.triangle_exterior_angle(_J(t, "j2"), _J(t, "j3"), _J(t, "j7"))
    except geo.ClassicallyForbidden as exc:
        return _off(Regime.FORBIDDEN, str(exc))
    d = (
        wigner_d2(t["j1"], ix.tw("nu1"), ix.tw("mu1"), theta)
        * wigner_d2(t["j4"], ix.tw("nu4"), ix.tw("mu4"), theta)
        * wigner_d2(t["j5"], ix.tw("nu5"), ix.tw("mu5"), theta)
        * wigner_d2(t["j6"], ix.tw("nu6"), ix.tw("mu6"), theta)
    )
    norm = _dim_product(t, ("j12", "j34", "j13", "j24", "j125", "j135", "j1256", "j1356"))
    sign = _real_sign(four_small_phase2(t, ix))
    return AsymptoticResult(sign * d / math.sqrt(norm), Regime.ALLOWED, {"theta": theta, "d_product": d, "sign": sign})


# ---------------------------------------------------------------------------
# three small


def ponzano_regge_phase(t: geo.EmbeddedTetrahedron, twice: Mapping[str, int]) -> float:
    """``sum (j + 1/2) psi`` over the six edges; ``twice`` maps edge name to ``2j``."""
    dih = geo.dihedral_angles(t)
    return sum((twice[name] + 1) / 2 * psi for name, (_, psi) in dih.items())


def three_small_phase2(t: Mapping[str, int], ix: SmallSpinIndices) -> int:
    """Doubled exponent of the three-small sign.

    The base factor ``(-1)^(j1 + j2 + j4 + j7 + 2 s3 + nu3 + mu5 + mu6)``
    times ``(-1)^(mu3 - nu3 + 2 s5 + 2 s6)``, the second factor fixed
    against the exact symbol.
    """
    base = t["j1"] + t["j2"] + t["j4"] + t["j7"] + 2 * t["j3"] + ix.tw("nu3") + ix.tw("mu5") + ix.tw("mu6")
    fix = ix.tw("mu3") - ix.tw("nu3") + 2 * (t["j5"] + t["j6"])
    return base + fix


def asymp_three_small(labels: FifteenJLabels) -> AsymptoticResult:
    """Small ``j3, j5, j6``: Ponzano-Regge cosine on the ``(J1, J2, J4, J7, J12, J24)`` tetrahedron."""
    t = labels.twice
    ix = SmallSpinIndices.from_labels(labels, Formula.THREE_SMALL)
    if not ix.in_bounds() or not labels.admissible():
        return _zero()
    J = {n: _J(t, n.replace("J", "j")) for n in geo.THREE_SMALL_EDGES}
    try:
        tet = geo.embed_three_small(J["J1"], J["J2"], J["J4"], J["J7"], J["J12"], J["J24"])
        phi1, phi12, phi1p, phi4p, theta1, theta2 = geo.three_small_angles(tet)
        pr = ponzano_regge_phase(tet, {n: t[n.replace("J", "j")] for n in geo.THREE_SMALL_EDGES})
    except geo.ClassicallyForbidden as exc:
        return _off(Regime.FORBIDDEN, str(exc))
    except geo.CausticDegenerate as exc:
        return _off(Regime.CAUSTIC, str(exc))
    vol = tet.volume
    mu3, nu3 = ix.tw("mu3") / 2, ix.tw("nu3") / 2
    mu56 = (ix.tw("mu5") + ix.tw("mu6")) / 2
    nu56 = (ix.tw("nu5") + ix.tw("nu6")) / 2
    s3 = t["j3"] / 2
    phase = pr + math.pi / 4 - s3 * math.pi + mu3 * phi4p + nu3 * phi1p - mu56 * phi12 - nu56 * phi1
    d = (
        wigner_d2(t["j3"], ix.tw("nu3"), ix.tw("mu3"), theta1)
        * wigner_d2(t["j5"], ix.tw("nu5"), ix.tw("mu5"), theta2)
        * wigner_d2(t["j6"], ix.tw("nu6"), ix.tw("mu6"), theta2)
    )
    norm = _dim_product(t, ("j34", "j13", "j135", "j1356", "j125", "j1256"))
    sign = _real_sign(three_small_phase2(t, ix))
    value = sign * d / math.sqrt(norm * 12 * math.pi * vol) * math.cos(phase)
    diag = {
        "volume": vol, "ponzano_regge": pr, "phase": phase, "d_product": d, "sign": sign,
        "phi1": phi1, "phi12": phi12, "phi1p": phi1p, "phi4p": phi4p, "theta1": theta1, "theta2": theta2,
    }
    return AsymptoticResult(value, Regime.ALLOWED, diag)


# ---------------------------------------------------------------------------
# two small

NineJAction = Callable[[geo.NineJConfig, Mapping[str, float]], float]

# each of the nine vectors lies in one row triangle and one column triangle;
# listed here is a partner vector from each
_PARTNERS = {
    "J1": ("J2", "J3"),
    "J2": ("J1", "J4"),
    "J3": ("J4", "J1"),
    "J4": ("J3", "J2"),
    "J12": ("J1", "J34"),
    "J34": ("J3", "J12"),
    "J13": ("J1", "J24"),
    "J24": ("J2", "J13"),
    "J7": ("J12", "J13"),
}
# weights making sum_k w_k J_k psi_k stationary (sum_k w_k J_k dpsi_k = 0)
_ACTION_WEIGHTS = {"J1": 1, "J2": 1, "J3": 1, "J4": 1, "J12": -1, "J34": -1, "J13": 1, "J24": 1, "J7": 1}


# per branch, the angles that sweep through pi rather than 0 along a j7
# sweep; these are read in [0, 2pi) so the action stays continuous
_LIFTED = {
    1: frozenset({"J2", "J3", "J12", "J13"}),
    2: frozenset({"J1", "J4", "J34", "J24", "J7"}),
}


def nine_j_dihedrals(c: geo.NineJConfig, branch: int | None = None) -> dict[str, float]:
    """Signed angle about each vector ``a`` from ``a x b`` to ``a x d``.

    ``b`` and ``d`` are its partners in the row and column triangles.
    Angles lie in ``(-pi, pi]``, except that for ``branch`` 1 or 2 the
    lifted set is taken in ``[0, 2pi)``.
    """
    lifted = _LIFTED.get(branch, frozenset())
    out = {}
    for k, (b, d) in _PARTNERS.items():
        axis = c.vector(k)
        u = np.cross(axis, c.vector(b))
        v = np.cross(axis, c.vector(d))
        s = float(np.dot(axis, np.cross(u, v))) / float(np.linalg.norm(axis))
        a = math.atan2(s, float(np.dot(u, v)))
        if k in lifted and a < 0:
            a += 2 * math.pi
        out[k] = a
    return out


def dihedral_action(c: geo.NineJConfig, lengths: Mapping[str, float]) -> float:
    """Stationary action ``sum_k w_k J_k psi_k`` of a nine-vector configuration."""
    psi = nine_j_dihedrals(c, c.branch)
    return sum(_ACTION_WEIGHTS[k] * lengths[k] * psi[k] for k in _PARTNERS)


def _parity(*twice: int) -> int:
    return (sum(twice) // 2) % 2


def nine_j_branch_signs(t: Mapping[str, int]) -> tuple[int, int]:
    """Signs multiplying ``cos S1`` and ``-sin S2``, from doubled labels.

    Fixed against exact values over random label sets; they depend on the
    parities of ``2 j`` and of the triad sums ``j1+j2+j12`` and ``j1+j3+j13``.
    """
    tri = _parity(t["j1"], t["j2"], t["j12"]) + _parity(t["j1"], t["j3"], t["j13"])
    e1 = 1 + t["j2"] + tri
    e2 = t["j1"] + t["j3"] + t["j4"] + tri
    return (-1 if e1 % 2 else 1), (-1 if e2 % 2 else 1)


def _branch_rep(c: geo.NineJConfig) -> geo.NineJConfig:
    # branch 2 is read on the member with V(J2, J3, J7) > 0, which keeps the
    # lifted angles continuous where the tetrahedron key flips
    if c.branch == 2 and geo.triple(c.J2, c.J3, c.J7) < 0:
        return c.mirrored()
    return c


def nine_j_lengths(t: Mapping[str, int]) -> dict[str, float]:
    names = {"J1": "j1", "J2": "j2", "J3": "j3", "J4": "j4", "J12": "j12", "J34": "j34", "J13": "j13", "J24": "j24", "J7": "j7"}
    return {k: _J(t, v) for k, v in names.items()}


def asymp_nine_j(twice9: Mapping[str, int], action: NineJAction = dihedral_action) -> AsymptoticResult:
    """All-large 9j ``{j1 j2 j12; j3 j4 j34; j13 j24 j7}`` from its two stationary configurations."""
    L = nine_j_lengths(twice9)
    try:
        c1, c2 = geo.solve_nine_j_config(*(L[k] for k in geo.NINE_J_NAMES))
    except geo.ClassicallyForbidden as exc:
        return _off(Regime.FORBIDDEN, str(exc))
    return _two_branch(L, c1, c2, action, nine_j_branch_signs(twice9), 0, 0, 0, 0, 0, 0)


def _two_branch(L, c1, c2, action, signs, ts5=0, ts6=0, tm5=0, tn5=0, tm6=0, tn6=0) -> AsymptoticResult:
    """Sum over the two stationary branches; doubled small spins and indices optional.

    Branch 1 enters as ``cos``, branch 2 as ``-sin``, each with its sign from
    :func:`nine_j_branch_signs`. The index phase is ``(mu5 + mu6) phi12 +
    (nu5 + nu6) phi13`` with unsigned angles, turned by the orientation of
    ``(J12, J13, J7)``.
    """
    diag: dict[str, float] = {}
    total = 0.0
    m, n = (tm5 + tm6) / 2, (tn5 + tn6) / 2
    for b, c in ((1, c1), (2, c2)):
        c = _branch_rep(c)
        try:
            phi12, phi13, theta = geo.two_small_angles(c)
        except geo.CausticDegenerate as exc:
            return _off(Regime.CAUSTIC, str(exc))
        det = abs(c.amplitude_determinant())
        if det < geo.CAUSTIC_SIN * max(L.values()) ** 6:
            return _off(Regime.CAUSTIC, "vanishing amplitude determinant")
        S = action(c, L)
        d = wigner_d2(ts5, tn5, tm5, theta) * wigner_d2(ts6, tn6, tm6, theta) if ts5 or ts6 else 1.0
        turn = 1.0 if geo.triple(c.J12, c.J13, c.J7) >= 0 else -1.0
        ph = S + turn * (m * phi12 + n * phi13)
        wave = math.cos(ph) if b == 1 else -math.sin(ph)
        total += signs[b - 1] * d / math.sqrt(det) * wave
        diag.update({f"S{b}": S, f"phi12_{b}": phi12, f"phi13_{b}": phi13, f"theta_{b}": theta,
                     f"det_{b}": det, f"d_{b}": d, f"turn_{b}": turn})
    value = total / (4 * math.pi)
    diag["sign_1"], diag["sign_2"] = signs
    return AsymptoticResult(value, Regime.ALLOWED, diag)


def asymp_two_small(labels: FifteenJLabels, action: NineJAction = dihedral_action) -> AsymptoticResult:
    """Small ``j5, j6``: the 9j on ``(j1 j2 j12; j3 j4 j34; j13 j24 j7)`` dressed by two d-matrices."""
    t = labels.twice
    ix = SmallSpinIndices.from_labels(labels, Formula.TWO_SMALL)
    if not ix.in_bounds() or not labels.admissible():
        return _zero()
    L = nine_j_lengths(t)
    try:
        c1, c2 = geo.solve_nine_j_config(*(L[k] for k in geo.NINE_J_NAMES))
    except geo.ClassicallyForbidden as exc:
        return _off(Regime.FORBIDDEN, str(exc))
    res = _two_branch(L, c1, c2, action, nine_j_branch_signs(t), t["j5"], t["j6"],
                      ix.tw("mu5"), ix.tw("nu5"), ix.tw("mu6"), ix.tw("nu6"))
    if res.regime is not Regime.ALLOWED:
        return res
    sign = _real_sign(ix.tw("mu5") + ix.tw("mu6"))
    norm = _dim_product(t, ("j125", "j135", "j1256", "j1356"))
    diag = dict(res.diagnostics, sign=sign)
    return AsymptoticResult(sign * res.value / math.sqrt(norm), Regime.ALLOWED, diag)


_FORMULAS = {
    Formula.TWO_SMALL: asymp_two_small,
    Formula.THREE_SMALL: asymp_three_small,
    Formula.FOUR_SMALL: asymp_four_small,
}


def asymptotic(labels: FifteenJLabels, formula: Formula | str) -> AsymptoticResult:
    """Evaluate the named formula; see :data:`SMALL_LABELS` for which labels it treats as small."""
    return _FORMULAS[Formula(formula)](labels)
