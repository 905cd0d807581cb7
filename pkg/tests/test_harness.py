"""Sweep configuration, windows, summaries and CSV output."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SCALING_BASES, TWO_SMALL_CONFIG
from fifteenj.exact import SymbolCache
from fifteenj.halfint import HalfInt
from fifteenj.harness import (
    ConfigError,
    SweepRow,
    admissible_window,
    central_rows,
    eval_asymptotic,
    eval_exact,
    parse_config,
    read_csv,
    rows_to_csv,
    run_sweep,
    scale_spec,
    sign_changes,
    summarize,
)
from fifteenj.semiclassics import Formula, Regime

SMALL_SWEEP = SCALING_BASES["four_small"] + "two_range = 40..60\n"


def test_parse_published_config():
    spec = parse_config(TWO_SMALL_CONFIG)
    assert spec.formula is Formula.TWO_SMALL
    assert spec.labels.small == {"j5", "j6"}
    assert spec.varied == "j7" and not spec.has_varied_value
    assert spec.labels["j1"] == HalfInt(197)


@pytest.mark.parametrize("small", ["j5 j6", "s5,s6", "j5, s6"])
def test_small_spellings(small):
    text = TWO_SMALL_CONFIG.replace("small = s5, s6", f"small = {small}")
    assert parse_config(text).labels.small == {"j5", "j6"}


@pytest.mark.parametrize(
    "edit",
    [
        ("small = s5, s6", "small = s5"),  # mismatch with the formula
        ("formula = two_small", "formula = five_small"),
        ("two_j1 = 197", "two_j1 = x"),
        ("two_j1 = 197", "two_j1 = -1"),
        ("two_j1 = 197", ""),
        ("two_j1 = 197", "bogus = 1"),
        ("two_j1 = 197", "two_range = 5..2"),
    ],
)
def test_config_errors(edit):
    with pytest.raises(ConfigError):
        parse_config(TWO_SMALL_CONFIG.replace(*edit))


def test_comments_and_varied_value():
    spec = parse_config("# header\n" + TWO_SMALL_CONFIG + "two_j7 = 240  # a point\n")
    assert spec.has_varied_value and spec.labels["j7"] == HalfInt(240)


def test_window_matches_bruteforce():
    spec = parse_config(TWO_SMALL_CONFIG)
    w = admissible_window(spec.labels)
    ok = [v for v in range(0, 600) if spec.labels.replace(j7=HalfInt(v)).admissible()]
    assert list(w.values()) == ok
    assert str(w) == "14..162"


def test_empty_window():
    spec = parse_config(TWO_SMALL_CONFIG.replace("two_j1 = 197", "two_j1 = 1"))
    assert admissible_window(spec.labels) is None


def _row(v, rel, regime=Regime.ALLOWED):
    return SweepRow(v, 1.0, 1.0 + rel, rel, rel, regime)


def test_central_half():
    rows = [_row(v, 0.0, Regime.FORBIDDEN) for v in (0, 2)] + [_row(v, v / 100) for v in range(4, 21, 2)]
    span, mid = central_rows(rows)
    assert span == (8, 16)
    assert [r.varied2 for r in mid] == [8, 10, 12, 14, 16]
    s = summarize(rows)
    assert s.n_rows == 11 and s.n_allowed == 9 and s.n_central == 5
    assert s.median == pytest.approx(0.12)
    assert s.max == pytest.approx(0.16)


def test_summary_without_allowed():
    s = summarize([_row(0, 0.0, Regime.FORBIDDEN)])
    assert s.central2 is None and math.isnan(s.rms)
    assert s.lines() == ["rows 1, allowed 0"]


@given(st.lists(st.floats(-10, 10, allow_nan=False), max_size=30))
def test_sign_changes(values):
    nz = [v for v in values if v != 0]
    expect = sum((a > 0) != (b > 0) for a, b in zip(nz, nz[1:]))
    assert sign_changes(values) == expect


@given(st.lists(st.tuples(st.integers(0, 500), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3),
                          st.sampled_from(list(Regime))), max_size=10))
def test_csv_roundtrip(items):
    rows = [SweepRow(v, e, a, abs(a - e), abs(a - e), r) for v, e, a, r in items]
    assert read_csv(rows_to_csv(rows)) == rows


def test_sweep_serial_parallel_identical(tmp_path):
    spec = parse_config(SMALL_SWEEP)
    serial = run_sweep(spec, workers=1, cache=SymbolCache())
    parallel_cache = SymbolCache()
    parallel = run_sweep(spec, workers=2, cache=parallel_cache)
    assert serial.csv_text() == parallel.csv_text()
    assert [r.varied2 for r in serial.rows] == list(range(40, 61, 2))
    assert len(parallel_cache) > 0


def test_sweep_cold_warm_identical(tmp_path):
    spec = parse_config(SMALL_SWEEP)
    path = tmp_path / "six.txt"
    cold = SymbolCache(path)
    first = run_sweep(spec, cache=cold)
    cold.store()
    warm = SymbolCache.load(path)
    second = run_sweep(spec, cache=warm)
    assert first.csv_text() == second.csv_text()
    assert warm.misses == 0


def test_scale_spec_keeps_indices():
    spec = parse_config(SCALING_BASES["two_small"])
    big = scale_spec(spec, 2)
    t, u = spec.labels.twice, big.labels.twice
    assert u["j1"] == 2 * t["j1"] and u["j5"] == t["j5"]
    assert u["j125"] - u["j12"] == t["j125"] - t["j12"]
    assert u["j1356"] - u["j135"] == t["j1356"] - t["j135"]
    assert admissible_window(big.labels) is not None


def test_eval_strings():
    spec = parse_config(TWO_SMALL_CONFIG + "two_j7 = 2\n")
    assert eval_exact(spec.labels).startswith("0 (triad violation: j1256 j34 j7")
    assert eval_asymptotic(spec.labels, spec.formula).startswith("0 (triad violation")
    ok = parse_config(SCALING_BASES["four_small"] + "two_j7 = 50\n")
    text = eval_exact(ok.labels)
    assert "sqrt" in text and len(text.splitlines()) == 2
    assert eval_asymptotic(ok.labels, ok.formula).split()[1] == "Allowed"
