"""Label sweeps comparing the exact 15j symbol with its asymptotic forms.

A sweep varies one label in unit steps across its admissible window and
records exact value, asymptotic value, errors and regime per point. The
headline metric is taken over the central half of the classically allowed
span, where the formulas are expected to hold.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .algebraic import alg_to_float, format_algebraic
from .exact.cache import SymbolCache, default_cache, set_default_cache
from .exact.labels import NAMES, TRIADS, FifteenJLabels
from .exact.symbols import wigner_15j_first
from .halfint import HalfInt, triangle_ok2
from .semiclassics.formulas import SMALL_LABELS, AsymptoticResult, Formula, Regime, asymptotic

REL_ERR_FLOOR = 1e-300

# accepted spellings for the small flags; s_i is the small-spin name of j_i
_SMALL_ALIASES = {f"s{i}": f"j{i}" for i in (1, 3, 4, 5, 6)}
_FORMULA_ALIASES = {
    "two_small": Formula.TWO_SMALL, "twosmall": Formula.TWO_SMALL,
    "three_small": Formula.THREE_SMALL, "threesmall": Formula.THREE_SMALL,
    "four_small": Formula.FOUR_SMALL, "foursmall": Formula.FOUR_SMALL,
}


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class SweepSpec:
    """Fixed labels, the varied label, an optional doubled range and the formula.

    ``labels`` holds a placeholder for the varied label when the config
    omits it.
    """

    labels: FifteenJLabels
    varied: str
    formula: Formula
    range2: tuple[int, int] | None = None
    output: str | None = None
    has_varied_value: bool = True

    def __post_init__(self) -> None:
        if self.varied not in NAMES:
            raise ConfigError(f"unknown varied label {self.varied!r}")
        want = SMALL_LABELS[self.formula]
        if set(self.labels.small) != set(want):
            raise ConfigError(
                f"formula {self.formula.value} needs small = {','.join(sorted(want))}, "
                f"got {','.join(sorted(self.labels.small)) or 'none'}"
            )
        if self.varied in want:
            raise ConfigError(f"varied label {self.varied} is flagged small")
        if self.range2 is not None:
            lo, hi = self.range2
            if lo < 0 or hi < lo or (hi - lo) % 2:
                raise ConfigError(f"bad range {lo}..{hi}: need 0 <= lo <= hi and an even doubled span")


def _parse_formula(text: str) -> Formula:
    key = text.strip().lower().replace("-", "_")
    if key not in _FORMULA_ALIASES:
        raise ConfigError(f"unknown formula {text!r}")
    return _FORMULA_ALIASES[key]


def _parse_small(text: str) -> set[str]:
    out = set()
    for item in text.replace(",", " ").split():
        if not item:
            continue
        name = _SMALL_ALIASES.get(item, item)
        if name not in NAMES:
            raise ConfigError(f"unknown small label {item!r}")
        out.add(name)
    return out


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def parse_config(text: str) -> SweepSpec:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Keys: ``two_<label>`` (doubled labels), ``small``, ``varied``,
    ``formula``, ``two_range = lo..hi`` and ``output``.
    """
    twice: dict[str, int] = {}
    small: set[str] = set()
    varied = "j7"
    formula: Formula | None = None
    range2 = None
    output = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = key.strip().lower(), value.strip()
        if key.startswith("two_") and key[4:] in NAMES:
            twice[key[4:]] = _parse_int(key, value)
            if twice[key[4:]] < 0:
                raise ConfigError(f"{key} must be non-negative")
        elif key == "small":
            small = _parse_small(value)
        elif key == "varied":
            varied = _SMALL_ALIASES.get(value, value)
        elif key == "formula":
            formula = _parse_formula(value)
        elif key == "two_range":
            lo, dots, hi = value.partition("..")
            if not dots:
                raise ConfigError("two_range must look like lo..hi")
            range2 = (_parse_int(key, lo.strip()), _parse_int(key, hi.strip()))
        elif key == "output":
            output = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    if formula is None:
        raise ConfigError("missing formula")
    missing = [n for n in NAMES if n not in twice and n != varied]
    if missing:
        raise ConfigError("missing labels: " + ", ".join("two_" + n for n in missing))
    has_varied = varied in twice
    twice.setdefault(varied, 0)
    labels = FifteenJLabels.from_twice(twice, small)
    return SweepSpec(labels, varied, formula, range2, output, has_varied)


def load_config(path: str | os.PathLike) -> SweepSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return parse_config(text)


# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    """Inclusive range of a doubled label in steps of two."""

    lo2: int
    hi2: int

    def values(self) -> range:
        return range(self.lo2, self.hi2 + 1, 2)

    def __len__(self) -> int:
        return (self.hi2 - self.lo2) // 2 + 1

    def __str__(self) -> str:
        return f"{HalfInt(self.lo2)}..{HalfInt(self.hi2)}"


def admissible_window(labels: FifteenJLabels, varied: str = "j7") -> Window | None:
    """Largest range of ``varied`` keeping every triad admissible; ``None`` if empty.

    Each triad containing the varied label bounds it by ``|a-b| .. a+b`` with
    fixed parity, so the admissible set is an intersection of intervals.
    """
    t = labels.twice
    lo, hi, parity = 0, math.inf, None
    for tri in TRIADS:
        if varied not in tri:
            if not triangle_ok2(*(t[n] for n in tri)):
                return None
            continue
        a, b = (t[n] for n in tri if n != varied)
        lo, hi = max(lo, abs(a - b)), min(hi, a + b)
        if parity is None:
            parity = (a + b) % 2
        elif parity != (a + b) % 2:
            return None
    if parity is None:
        raise ValueError(f"{varied} appears in no triad")
    if lo > hi:
        return None
    return Window(int(lo), int(hi))


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class SweepRow:
    varied2: int
    exact: float
    asymptotic: float
    abs_err: float
    rel_err: float
    regime: Regime

    @classmethod
    def build(cls, varied2: int, exact: float, res: AsymptoticResult) -> SweepRow:
        if res.regime is Regime.ALLOWED:
            err = abs(res.value - exact)
            rel = err / max(abs(exact), REL_ERR_FLOOR)
        else:
            err = rel = math.nan
        return cls(varied2, exact, res.value, err, rel, res.regime)


@dataclass(frozen=True)
class SweepSummary:
    n_rows: int
    n_allowed: int
    central2: tuple[int, int] | None
    n_central: int
    rms: float
    median: float
    max: float

    def lines(self, varied: str = "j7") -> list[str]:
        if self.central2 is None:
            return [f"rows {self.n_rows}, allowed 0"]
        lo, hi = self.central2
        return [
            f"rows {self.n_rows}, allowed {self.n_allowed}",
            f"central half {varied} = {HalfInt(lo)}..{HalfInt(hi)} ({self.n_central} points)",
            f"rel_err rms {self.rms:.6g} median {self.median:.6g} max {self.max:.6g}",
        ]


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    window: Window | None
    rows: tuple[SweepRow, ...]
    summary: SweepSummary

    def csv_text(self) -> str:
        return rows_to_csv(self.rows, self.spec.varied)


def central_rows(rows: Sequence[SweepRow]) -> tuple[tuple[int, int] | None, list[SweepRow]]:
    """Allowed rows in the central half of the span of allowed points."""
    allowed = [r for r in rows if r.regime is Regime.ALLOWED]
    if not allowed:
        return None, []
    a, b = allowed[0].varied2, allowed[-1].varied2
    # keep v with a + (b-a)/4 <= v <= b - (b-a)/4, in integers
    lo4, hi4 = 4 * a + (b - a), 4 * b - (b - a)
    mid = [r for r in allowed if lo4 <= 4 * r.varied2 <= hi4]
    if not mid:
        return (a, b), []
    return (mid[0].varied2, mid[-1].varied2), mid


def summarize(rows: Sequence[SweepRow]) -> SweepSummary:
    n_allowed = sum(r.regime is Regime.ALLOWED for r in rows)
    span, mid = central_rows(rows)
    if not mid:
        return SweepSummary(len(rows), n_allowed, span, 0, math.nan, math.nan, math.nan)
    rel = np.array([r.rel_err for r in mid])
    return SweepSummary(
        len(rows), n_allowed, span, len(mid),
        float(np.sqrt(np.mean(rel**2))), float(np.median(rel)), float(rel.max()),
    )


def sign_changes(values: Iterable[float]) -> int:
    """Number of strict sign flips, skipping exact zeros."""
    signs = [v > 0 for v in values if v != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def evaluate_point(labels: FifteenJLabels, formula: Formula, varied: str, varied2: int,
                   cache: SymbolCache | None = None) -> SweepRow:
    point = labels.replace(**{varied: HalfInt(varied2)})
    exact = alg_to_float(wigner_15j_first(point, cache))
    return SweepRow.build(varied2, exact, asymptotic(point, formula))


def _worker_init(cache_path: str | None) -> None:
    set_default_cache(SymbolCache.load(cache_path) if cache_path else SymbolCache())


def _worker_chunk(args):
    tuple2, small, formula, varied, values = args
    labels = FifteenJLabels.from_tuple2(tuple2, small)
    cache = default_cache()
    n0 = len(cache)
    rows = [evaluate_point(labels, Formula(formula), varied, v, cache) for v in values]
    return rows, cache.entries_after(n0)


def sweep_values(spec: SweepSpec) -> tuple[Window | None, list[int]]:
    window = admissible_window(spec.labels, spec.varied)
    if window is None:
        return None, []
    values = list(window.values())
    if spec.range2 is not None:
        lo, hi = spec.range2
        values = [v for v in values if lo <= v <= hi]
    return window, values


def run_sweep(spec: SweepSpec, workers: int = 1, cache: SymbolCache | None = None) -> SweepResult:
    """Evaluate every point of the window; rows come back ordered by the varied label.

    With ``workers > 1`` points are spread over processes seeded from the
    cache file; their new 6j entries are merged back into ``cache``.
    """
    cache = cache if cache is not None else default_cache()
    window, values = sweep_values(spec)
    if workers <= 1 or len(values) < 2:
        rows = [evaluate_point(spec.labels, spec.formula, spec.varied, v, cache) for v in values]
    else:
        n_chunks = min(len(values), 4 * workers)
        chunks = [values[i::n_chunks] for i in range(n_chunks)]
        cache_path = str(cache.path) if cache.path is not None and cache.path.exists() else None
        tasks = [(spec.labels.as_tuple2(), tuple(spec.labels.small), spec.formula.value, spec.varied, c) for c in chunks]
        rows = []
        with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init, initargs=(cache_path,)) as pool:
            for chunk_rows, entries in pool.map(_worker_chunk, tasks):
                rows.extend(chunk_rows)
                cache.update(entries)
        rows.sort(key=lambda r: r.varied2)
    rows_t = tuple(rows)
    return SweepResult(spec, window, rows_t, summarize(rows_t))


# labels tied to a small spin: name -> (parent label, small spin); the
# offset label - parent is a projection index and is kept under scaling
_DEPENDENTS: dict[Formula, tuple[tuple[str, str, str], ...]] = {
    Formula.TWO_SMALL: (("j125", "j12", "j5"), ("j1256", "j125", "j6"), ("j135", "j13", "j5"), ("j1356", "j135", "j6")),
    Formula.THREE_SMALL: (("j34", "j4", "j3"), ("j13", "j1", "j3"), ("j125", "j12", "j5"), ("j1256", "j125", "j6"),
                          ("j135", "j13", "j5"), ("j1356", "j135", "j6")),
    Formula.FOUR_SMALL: (("j12", "j2", "j1"), ("j13", "j3", "j1"), ("j24", "j2", "j4"), ("j34", "j3", "j4"),
                         ("j125", "j12", "j5"), ("j1256", "j125", "j6"), ("j135", "j13", "j5"), ("j1356", "j135", "j6")),
}


def scale_spec(spec: SweepSpec, k: int) -> SweepSpec:
    """Multiply the large labels by ``k``, keeping small spins and projection indices.

    Labels attached to a small spin are rebuilt from their scaled parent
    plus the original offset. The varied label is left to the window.
    """
    t = dict(spec.labels.twice)
    deps = _DEPENDENTS[spec.formula]
    offsets = {name: t[name] - t[parent] for name, parent, _ in deps}
    dependent = set(offsets)
    out = {n: (v if n in spec.labels.small else k * v) for n, v in t.items() if n not in dependent}
    for name, parent, _ in deps:  # parents precede their dependents
        out[name] = out[parent] + offsets[name]
    out[spec.varied] = 0
    labels = FifteenJLabels.from_twice(out, spec.labels.small)
    return SweepSpec(labels, spec.varied, spec.formula, None, None, False)


# ---------------------------------------------------------------------------
# output


def _num(x: float) -> str:
    return format(x, ".17g")


def rows_to_csv(rows: Iterable[SweepRow], varied: str = "j7") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"two_{varied}", "exact", "asymptotic", "abs_err", "rel_err", "regime"])
    for r in rows:
        w.writerow([r.varied2, _num(r.exact), _num(r.asymptotic), _num(r.abs_err), _num(r.rel_err), r.regime.value])
    return buf.getvalue()


def read_csv(text: str) -> list[SweepRow]:
    rows = []
    reader = csv.reader(io.StringIO(text))
    next(reader)
    for v, e, a, ae, re_, regime in reader:
        rows.append(SweepRow(int(v), float(e), float(a), float(ae), float(re_), Regime(regime)))
    return rows


def eval_exact(labels: FifteenJLabels, cache: SymbolCache | None = None) -> str:
    """Algebraic form and 17-digit decimal, or ``0 (triad violation: ...)``."""
    bad = labels.violated_triads()
    if bad:
        return "0 (triad violation: " + "; ".join(" ".join(t) for t in bad) + ")"
    value = wigner_15j_first(labels, cache)
    return f"{format_algebraic(value)}\n{_num(alg_to_float(value))}"


def eval_asymptotic(labels: FifteenJLabels, formula: Formula) -> str:
    bad = labels.violated_triads()
    if bad:
        return "0 (triad violation: " + "; ".join(" ".join(t) for t in bad) + ")"
    res = asymptotic(labels, formula)
    lines = [f"{_num(res.value)} {res.regime.value}"]
    lines += [f"  {k} = {v}" for k, v in res.diagnostics.items()]
    return "\n".join(lines)
