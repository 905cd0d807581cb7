"""Reduced rotation matrices and the three asymptotic formulas."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FOUR_SMALL_CONFIG, THREE_SMALL_CONFIG, TWO_SMALL_CONFIG
from fifteenj import geometry as geo
from fifteenj.exact import wigner_15j_first
from fifteenj.exact.symbols import wigner_9j2
from fifteenj.halfint import HalfInt
from fifteenj.harness import parse_config
from fifteenj.semiclassics import (
    DMatrixIndexError,
    Formula,
    Regime,
    asymp_nine_j,
    asymptotic,
    wigner_d,
    wigner_d2,
    wigner_d_matrix,
)
from fifteenj.semiclassics.formulas import nine_j_branch_signs, ponzano_regge_phase

H = HalfInt


def jy(s2):
    """Spin-s ``S_y`` in the basis ``m = s..-s``."""
    ms = [m / 2 for m in range(s2, -s2 - 1, -2)]
    s = s2 / 2
    n = len(ms)
    out = np.zeros((n, n), dtype=complex)
    for i in range(n - 1):
        # <m+1|S+|m> between rows i (m+1) and i+1 (m)
        c = math.sqrt(s * (s + 1) - ms[i + 1] * ms[i])
        out[i, i + 1] = c / 2j
        out[i + 1, i] = -c / 2j
    return out


def expm_hermitian(h, theta):
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * theta * w)) @ v.conj().T


class TestDMatrix:
    @pytest.mark.parametrize("s2", range(0, 7))
    def test_identity_at_zero(self, s2):
        assert np.array_equal(wigner_d_matrix(H(s2), 0.0), np.eye(s2 + 1))

    def test_spin_half(self):
        for th in (0.1, 1.3, 2.9):
            assert wigner_d("1/2", "1/2", "1/2", th) == pytest.approx(math.cos(th / 2))
            assert wigner_d("1/2", "1/2", "-1/2", th) == pytest.approx(-math.sin(th / 2))

    @pytest.mark.parametrize("s2", [2, 3, 5, 6])
    def test_generator_exponential(self, s2):
        expect = expm_hermitian(jy(s2), 0.7)
        assert np.allclose(wigner_d_matrix(H(s2), 0.7), expect.real, atol=1e-13)
        assert np.allclose(expect.imag, 0.0, atol=1e-13)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 6), st.floats(0.0, math.pi))
    def test_unitary_and_symmetric(self, s2, th):
        d = wigner_d_matrix(H(s2), th)
        assert np.allclose(d @ d.T, np.eye(s2 + 1), atol=1e-12)
        # d_{nu mu} = (-1)^(nu - mu) d_{mu nu}
        idx = range(s2, -s2 - 1, -2)
        for a, n in enumerate(idx):
            for b, m in enumerate(idx):
                sign = -1 if ((n - m) // 2) % 2 else 1
                assert d[a, b] == pytest.approx(sign * d[b, a], abs=1e-12)

    def test_bad_indices(self):
        with pytest.raises(DMatrixIndexError):
            wigner_d2(2, 4, 0, 0.3)
        with pytest.raises(DMatrixIndexError):
            wigner_d2(2, 1, 0, 0.3)


class TestPonzanoRegge:
    def test_scaling(self):
        t = geo.embed_tetrahedron([5.5, 6.5, 7.5, 6.5, 5.5, 8.5])
        twice = {n: int(2 * L - 1) for n, L in t.lengths.items()}
        t3 = geo.embed_tetrahedron([3 * x for x in (5.5, 6.5, 7.5, 6.5, 5.5, 8.5)])
        twice3 = {n: int(2 * L - 1) for n, L in t3.lengths.items()}
        assert ponzano_regge_phase(t3, twice3) == pytest.approx(3 * ponzano_regge_phase(t, twice))

    def test_regular(self):
        t = geo.embed_tetrahedron([10.5] * 6)
        assert ponzano_regge_phase(t, {n: 20 for n in t.edges}) == pytest.approx(
            6 * 10.5 * (math.pi - math.acos(1 / 3))
        )

    def test_gram_route(self):
        lengths = [9.5, 7.5, 8.5, 6.5, 10.5, 7.5]
        t = geo.embed_tetrahedron(lengths)
        twice = {n: int(2 * L - 1) for n, L in t.lengths.items()}
        gram = geo.dihedral_angles_gram(lengths)
        assert ponzano_regge_phase(t, twice) == pytest.approx(sum(L * gram[n][1] for n, L in t.lengths.items()))


def _at(cfg, j7_twice):
    spec = parse_config(cfg)
    return spec.labels.replace(j7=H(j7_twice)), spec.formula


class TestFourSmall:
    def test_published_point(self):
        L, f = _at(FOUR_SMALL_CONFIG, 236)
        res = asymptotic(L, f)
        exact = float(wigner_15j_first(L))
        assert res.regime is Regime.ALLOWED
        assert abs(res.value - exact) / abs(exact) < 0.05

    def test_index_out_of_bounds_is_zero(self):
        L, f = _at(FOUR_SMALL_CONFIG, 236)
        t = L.twice
        # mu1 = j12 - j2 = 3/2 > s1 = 1/2
        bad = L.replace(j12=H(t["j2"] + 3))
        res = asymptotic(bad, f)
        assert res.regime is Regime.ALLOWED and res.value == 0.0

    def test_all_small_zero_collapse(self):
        L, f = _at(FOUR_SMALL_CONFIG, 236)
        t = L.twice
        coll = L.replace(j1=0, j4=0, j5=0, j6=0, j12=H(t["j2"]), j125=H(t["j2"]), j1256=H(t["j2"]),
                         j34=H(t["j3"]), j13=H(t["j3"]), j135=H(t["j3"]), j1356=H(t["j3"]), j24=H(t["j2"]))
        assert coll.admissible()
        exact = float(wigner_15j_first(coll))
        assert asymptotic(coll, f).value == pytest.approx(exact, rel=1e-12)


class TestThreeSmall:
    def test_forbidden_past_edge(self):
        L, f = _at(THREE_SMALL_CONFIG, 396)
        assert asymptotic(L, f).regime is Regime.FORBIDDEN

    def test_caustic_propagates(self, monkeypatch):
        L, f = _at(THREE_SMALL_CONFIG, 200)

        def flat(*_):
            raise geo.CausticDegenerate("flat")

        monkeypatch.setattr(geo, "three_small_angles", flat)
        assert asymptotic(L, f).regime is Regime.CAUSTIC

    def test_zero_small_spins_collapse(self):
        spec = parse_config(THREE_SMALL_CONFIG)
        t = spec.labels.twice
        L = spec.labels.replace(j3=0, j5=0, j6=0, j34=H(t["j4"]), j13=H(t["j1"]), j135=H(t["j1"]),
                                j1356=H(t["j1"]), j125=H(t["j12"]), j1256=H(t["j12"]))
        for v in (215, 243, 285, 313):
            P = L.replace(j7=H(v))
            exact = float(wigner_15j_first(P))
            assert asymptotic(P, Formula.THREE_SMALL).value == pytest.approx(exact, rel=0.02)


class TestTwoSmall:
    def test_sweep_points(self):
        for v in (220, 240, 260):
            L, f = _at(TWO_SMALL_CONFIG, v)
            exact = float(wigner_15j_first(L))
            assert asymptotic(L, f).value == pytest.approx(exact, rel=0.05)

    def test_index_out_of_bounds_is_zero(self):
        L, f = _at(TWO_SMALL_CONFIG, 240)
        bad = L.replace(j125=H(L.twice["j12"] + 4))  # mu5 = 2 > s5 = 1
        res = asymptotic(bad, f)
        assert res.regime is Regime.ALLOWED and res.value == 0.0

    def test_forbidden_edge(self):
        L, f = _at(TWO_SMALL_CONFIG, 28)
        assert asymptotic(L, f).regime is Regime.FORBIDDEN

    def test_collapse_is_nine_j(self):
        spec = parse_config(TWO_SMALL_CONFIG)
        t = spec.labels.twice
        L = spec.labels.replace(j5=0, j6=0, j125=H(t["j12"]), j1256=H(t["j12"]),
                                j135=H(t["j13"]), j1356=H(t["j13"]))
        names = ("j1", "j2", "j12", "j3", "j4", "j34", "j13", "j24", "j7")
        for v in (220, 260):
            P = L.replace(j7=H(v))
            tt = P.twice
            nine = asymp_nine_j(tt).value
            norm = (tt["j12"] + 1) * (tt["j13"] + 1)
            assert asymptotic(P, Formula.TWO_SMALL).value == pytest.approx(nine / norm, rel=1e-12)
            exact9 = float(wigner_9j2(*(tt[n] for n in names)))
            assert nine == pytest.approx(exact9, rel=0.01)

    def test_branch_signs_are_signs(self):
        s = nine_j_branch_signs(parse_config(TWO_SMALL_CONFIG).labels.twice)
        assert set(s) <= {-1, 1}

    def test_diagnostics_present(self):
        L, f = _at(TWO_SMALL_CONFIG, 240)
        diag = asymptotic(L, f).diagnostics
        for key in ("S1", "S2", "det_1", "det_2", "theta_1", "theta_2"):
            assert math.isfinite(diag[key])
