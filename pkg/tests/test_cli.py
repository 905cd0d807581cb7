"""Command line subcommands and exit codes."""

import shutil
import subprocess

import pytest

from conftest import SCALING_BASES, TWO_SMALL_CONFIG
from fifteenj.cli import EXIT_CONFIG, EXIT_FORBIDDEN, EXIT_OK, main
from fifteenj.exact import cache as cache_mod


@pytest.fixture(autouse=True)
def _fresh_default_cache(monkeypatch):
    monkeypatch.delenv("FIFTEENJ_CACHE", raising=False)
    monkeypatch.setattr(cache_mod, "_default", None)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_window(tmp_path, capsys):
    cfg = write(tmp_path, "a.cfg", TWO_SMALL_CONFIG)
    assert main(["window", cfg]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "j7 14..162 (149 points)"


def test_window_empty(tmp_path):
    cfg = write(tmp_path, "a.cfg", TWO_SMALL_CONFIG.replace("two_j1 = 197", "two_j1 = 1"))
    assert main(["window", cfg]) == EXIT_FORBIDDEN


def test_exact_and_asymp(tmp_path, capsys):
    cfg = write(tmp_path, "a.cfg", SCALING_BASES["four_small"] + "two_j7 = 50\n")
    assert main(["exact", cfg]) == EXIT_OK
    exact = float(capsys.readouterr().out.splitlines()[1])
    assert main(["asymp", cfg]) == EXIT_OK
    asym = float(capsys.readouterr().out.split()[0])
    assert asym == pytest.approx(exact, rel=0.2)


def test_asymp_forbidden(tmp_path):
    cfg = write(tmp_path, "a.cfg", TWO_SMALL_CONFIG + "two_j7 = 28\n")
    assert main(["asymp", cfg]) == EXIT_FORBIDDEN


def test_inadmissible_prints_zero(tmp_path, capsys):
    cfg = write(tmp_path, "a.cfg", TWO_SMALL_CONFIG + "two_j7 = 2\n")
    assert main(["exact", cfg]) == EXIT_OK
    assert capsys.readouterr().out.startswith("0 (triad violation")


def test_config_errors(tmp_path):
    bad = write(tmp_path, "bad.cfg", TWO_SMALL_CONFIG.replace("small = s5, s6", "small = s5"))
    assert main(["window", bad]) == EXIT_CONFIG
    assert main(["window", str(tmp_path / "missing.cfg")]) == EXIT_CONFIG
    novalue = write(tmp_path, "nv.cfg", TWO_SMALL_CONFIG)
    assert main(["exact", novalue]) == EXIT_CONFIG
    assert main(["sweep", novalue]) == EXIT_CONFIG  # no output path


def test_sweep_and_cache(tmp_path, capsys, monkeypatch):
    cfg = write(tmp_path, "s.cfg", SCALING_BASES["four_small"] + "two_range = 40..50\n")
    out = tmp_path / "out.csv"
    cache = tmp_path / "six.txt"
    monkeypatch.setenv("FIFTEENJ_CACHE", str(cache))
    assert main(["sweep", cfg, "-o", str(out)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "rows 6, allowed 6"
    assert out.read_text().splitlines()[0] == "two_j7,exact,asymptotic,abs_err,rel_err,regime"
    assert cache.exists()
    assert main(["cache", "stats", str(cache)]) == EXIT_OK
    n = int(capsys.readouterr().out.split()[1])
    assert n > 0
    assert main(["cache", "compact", str(cache)]) == EXIT_OK
    assert f"compacted {n} entries" in capsys.readouterr().out


def test_corrupt_cache(tmp_path):
    bad = write(tmp_path, "six.txt", "6j 2 2 2 2 2 2 -> 1/6 sqrt 4\n")
    assert main(["cache", "stats", bad]) == EXIT_CONFIG


@pytest.mark.skipif(shutil.which("fifteenj") is None, reason="console script not installed")
def test_console_script(tmp_path):
    cfg = write(tmp_path, "a.cfg", TWO_SMALL_CONFIG)
    run = subprocess.run(["fifteenj", "window", cfg], capture_output=True, text=True)
    assert run.returncode == 0 and "14..162" in run.stdout
    run = subprocess.run(["fifteenj", "window", str(tmp_path / "none.cfg")], capture_output=True, text=True)
    assert run.returncode == 2 and "error" in run.stderr
