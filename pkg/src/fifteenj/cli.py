"""``fifteenj`` command line: single evaluations, sweeps and cache upkeep.

Exit codes: 0 success, 2 configuration error, 3 classically forbidden
point or empty window, 4 convergence failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .exact.cache import CACHE_ENV, CacheParseError, SymbolCache, default_cache, set_default_cache
from .geometry import ClassicallyForbidden, ConvergenceFailure
from .harness import ConfigError, SweepSpec, admissible_window, eval_asymptotic, eval_exact, load_config, run_sweep
from .semiclassics.formulas import Regime, asymptotic

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FORBIDDEN = 3
EXIT_CONVERGENCE = 4


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _spec(path: str, need_value: bool = False) -> SweepSpec:
    spec = load_config(path)
    if need_value and not spec.has_varied_value:
        raise ConfigError(f"{path}: no value given for {spec.varied}")
    return spec


def _cache(path: str | None) -> SymbolCache:
    path = path or os.environ.get(CACHE_ENV)
    if not path:
        return default_cache()
    try:
        cache = SymbolCache.load(path)
    except CacheParseError as exc:
        raise _Fail(EXIT_CONFIG, str(exc)) from None
    set_default_cache(cache)
    return cache


def _save(cache: SymbolCache) -> None:
    if cache.path is not None:
        cache.store()


def cmd_exact(args) -> int:
    spec = _spec(args.config, need_value=True)
    cache = _cache(args.cache)
    print(eval_exact(spec.labels, cache))
    _save(cache)
    return EXIT_OK


def cmd_asymp(args) -> int:
    spec = _spec(args.config, need_value=True)
    if spec.labels.violated_triads():
        print(eval_asymptotic(spec.labels, spec.formula))
        return EXIT_OK
    res = asymptotic(spec.labels, spec.formula)
    if res.regime is not Regime.ALLOWED:
        raise _Fail(EXIT_FORBIDDEN, f"{res.regime.value} region: no asymptotic value")
    print(eval_asymptotic(spec.labels, spec.formula))
    return EXIT_OK


def cmd_window(args) -> int:
    spec = _spec(args.config)
    window = admissible_window(spec.labels, spec.varied)
    if window is None:
        raise _Fail(EXIT_FORBIDDEN, f"empty window for {spec.varied}")
    print(f"{spec.varied} {window} ({len(window)} points)")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = _spec(args.config)
    out = args.output or spec.output
    if out is None:
        raise ConfigError("no output path: pass -o or set output in the config")
    cache = _cache(args.cache)
    result = run_sweep(spec, workers=args.workers, cache=cache)
    if not result.rows:
        raise _Fail(EXIT_FORBIDDEN, f"empty window for {spec.varied}")
    Path(out).write_text(result.csv_text(), encoding="utf-8")
    _save(cache)
    for line in result.summary.lines(spec.varied):
        print(line)
    return EXIT_OK


def cmd_cache(args) -> int:
    try:
        cache = SymbolCache.load(args.path)
    except CacheParseError as exc:
        raise _Fail(EXIT_CONFIG, str(exc)) from None
    if args.action == "stats":
        size = Path(args.path).stat().st_size if Path(args.path).exists() else 0
        print(f"entries {len(cache)}")
        print(f"bytes {size}")
    else:
        cache.store()
        print(f"compacted {len(cache)} entries")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fifteenj", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_config(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("config")
        sp.set_defaults(func=fn)
        return sp

    sp = with_config("exact", cmd_exact, "exact 15j value of one label set")
    sp.add_argument("--cache", help=f"6j cache file (default ${CACHE_ENV})")
    with_config("asymp", cmd_asymp, "asymptotic value of one label set")
    with_config("window", cmd_window, "admissible range of the varied label")
    sp = with_config("sweep", cmd_sweep, "exact vs asymptotic over the window, written as CSV")
    sp.add_argument("-o", "--output")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--cache", help=f"6j cache file (default ${CACHE_ENV})")
    sp = sub.add_parser("cache", help="inspect or rewrite a 6j cache file")
    sp.add_argument("action", choices=("stats", "compact"))
    sp.add_argument("path")
    sp.set_defaults(func=cmd_cache)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, _Fail, ClassicallyForbidden, ConvergenceFailure) as exc:
        code = exc.code if isinstance(exc, _Fail) else {
            ConfigError: EXIT_CONFIG, ClassicallyForbidden: EXIT_FORBIDDEN, ConvergenceFailure: EXIT_CONVERGENCE,
        }[type(exc)]
        print(f"fifteenj: error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
