"""Shared label sets and helpers for the test suite."""

from __future__ import annotations

import random

import pytest

from fifteenj.exact.cache import SymbolCache
from fifteenj.exact.labels import FifteenJLabels
from fifteenj.halfint import triangle_ok2

# Label tables for the three sweep figures; j7 is the varied label.
TWO_SMALL_CONFIG = """\
formula = two_small
small = s5, s6
two_j1 = 197
two_j2 = 187
two_j12 = 148
two_j125 = 150
two_j1256 = 148
two_j3 = 173
two_j4 = 205
two_j34 = 176
two_j135 = 192
two_j1356 = 194
two_j13 = 190
two_j24 = 180
two_j5 = 2
two_j6 = 2
"""

THREE_SMALL_CONFIG = """\
formula = three_small
small = s3, s5, s6
two_j1 = 203
two_j2 = 207
two_j12 = 192
two_j125 = 194
two_j1256 = 196
two_j3 = 3
two_j4 = 199
two_j34 = 200
two_j135 = 200
two_j1356 = 202
two_j13 = 202
two_j24 = 216
two_j5 = 2
two_j6 = 2
"""

FOUR_SMALL_CONFIG = """\
formula = four_small
small = s1, s4, s5, s6
two_j1 = 1
two_j2 = 237
two_j12 = 236
two_j125 = 238
two_j1256 = 236
two_j3 = 189
two_j4 = 3
two_j34 = 188
two_j135 = 188
two_j1356 = 190
two_j13 = 190
two_j24 = 234
two_j5 = 2
two_j6 = 2
"""

# Quarter-scale versions with the same small spins and projection indices,
# used for the scaling checks (x1, x2, x4 stays affordable exactly).
SCALING_BASES = {
    "two_small": """\
formula = two_small
small = j5 j6
two_j1 = 49
two_j2 = 47
two_j12 = 36
two_j125 = 38
two_j1256 = 36
two_j3 = 43
two_j4 = 51
two_j34 = 44
two_j135 = 50
two_j1356 = 52
two_j13 = 48
two_j24 = 44
two_j5 = 2
two_j6 = 2
""",
    "three_small": """\
formula = three_small
small = j3 j5 j6
two_j1 = 51
two_j2 = 53
two_j12 = 48
two_j125 = 50
two_j1256 = 52
two_j3 = 3
two_j4 = 49
two_j34 = 50
two_j135 = 48
two_j1356 = 50
two_j13 = 50
two_j24 = 54
two_j5 = 2
two_j6 = 2
""",
    "four_small": """\
formula = four_small
small = j1 j4 j5 j6
two_j1 = 1
two_j2 = 59
two_j12 = 58
two_j125 = 60
two_j1256 = 58
two_j3 = 47
two_j4 = 3
two_j34 = 46
two_j135 = 46
two_j1356 = 48
two_j13 = 48
two_j24 = 56
two_j5 = 2
two_j6 = 2
""",
}

# depth-first order; each label is checked against the triad it closes
_ENUM_ORDER = (
    ("j1", None), ("j2", None), ("j12", ("j1", "j2")), ("j5", None), ("j125", ("j12", "j5")),
    ("j6", None), ("j1256", ("j125", "j6")), ("j3", None), ("j4", None), ("j34", ("j3", "j4")),
    ("j7", ("j1256", "j34")), ("j13", ("j1", "j3")), ("j24", ("j2", "j4")),
    ("j135", ("j13", "j5")), ("j1356", ("j135", "j6")),
)


def admissible_15j(max_twice: int):
    """Every admissible doubled-label map with all entries ``<= max_twice``."""
    t: dict[str, int] = {}

    def rec(i):
        if i == len(_ENUM_ORDER):
            if triangle_ok2(t["j1356"], t["j24"], t["j7"]):
                yield dict(t)
            return
        name, tri = _ENUM_ORDER[i]
        for v in range(max_twice + 1):
            if tri and not triangle_ok2(t[tri[0]], t[tri[1]], v):
                continue
            t[name] = v
            yield from rec(i + 1)

    yield from rec(0)


def random_15j(rng: random.Random, max_twice: int) -> FifteenJLabels:
    """A uniformly drawn admissible label set (rejection on the last triad)."""
    while True:
        t: dict[str, int] = {}
        ok = True
        for name, tri in _ENUM_ORDER:
            if tri is None:
                t[name] = rng.randint(0, max_twice)
                continue
            a, b = t[tri[0]], t[tri[1]]
            choices = [v for v in range(abs(a - b), min(a + b, max_twice) + 1, 2)]
            if not choices:
                ok = False
                break
            t[name] = rng.choice(choices)
        if ok and triangle_ok2(t["j1356"], t["j24"], t["j7"]):
            return FifteenJLabels.from_twice(t, set())


@pytest.fixture(scope="session")
def shared_cache() -> SymbolCache:
    return SymbolCache()


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
