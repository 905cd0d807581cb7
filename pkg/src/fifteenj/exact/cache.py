"""Persistent memo of exact 6j values keyed by a symmetry-canonical label tuple."""

from __future__ import annotations

import itertools
import os
import threading
from functools import lru_cache
from pathlib import Path
from typing import Iterator

from ..algebraic import AlgebraicNumber, format_algebraic, parse_algebraic

CACHE_ENV = "FIFTEENJ_CACHE"

Key6 = tuple[int, int, int, int, int, int]


class CacheParseError(ValueError):
    """A cache file line could not be parsed; ``lineno`` is 1-based."""

    def __init__(self, path, lineno: int, line: str, reason: str):
        super().__init__(f"{path}:{lineno}: {reason}: {line.rstrip()!r}")
        self.path = path
        self.lineno = lineno
        self.line = line
        self.reason = reason


def _regge(k: Key6) -> Key6:
    a, b, c, d, e, f = k
    return (a, (b + c + e - f) // 2, (b + c - e + f) // 2, d, (e + f + b - c) // 2, (e + f - b + c) // 2)


def _generators(k: Key6) -> Iterator[Key6]:
    a, b, c, d, e, f = k
    yield (b, a, c, e, d, f)  # swap columns 1,2
    yield (b, c, a, e, f, d)  # cycle columns
    yield (a, e, f, d, b, c)  # exchange upper/lower in columns 2,3
    yield _regge(k)


@lru_cache(maxsize=1 << 16)
def symmetry_orbit(key: Key6) -> frozenset[Key6]:
    """All doubled-label tuples equivalent to ``key`` under the 6j symmetry group.

    The group is generated by the 24 classical column/row symmetries and the
    Regge symmetry; generic orbits have 144 elements. Regge images are only
    label tuples when the doubled sums are even, which holds whenever all
    four triads are integral.
    """
    seen = {key}
    todo = [key]
    while todo:
        k = todo.pop()
        for g in _generators(k):
            if g not in seen:
                seen.add(g)
                todo.append(g)
    return frozenset(seen)


@lru_cache(maxsize=1 << 18)
def canonical_key(key: Key6) -> Key6:
    return min(symmetry_orbit(key))


class SymbolCache:
    """Thread-safe map from canonical 6j key to exact value.

    Reads are lock-free dict lookups; inserts are serialized.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._data: dict[Key6, AlgebraicNumber] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: Key6) -> bool:
        return canonical_key(key) in self._data

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolCache):
            return NotImplemented
        return self._data == other._data

    def items(self):
        return self._data.items()

    def get(self, key: Key6) -> AlgebraicNumber | None:
        value = self._data.get(canonical_key(key))
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key: Key6, value: AlgebraicNumber) -> None:
        ck = canonical_key(key)
        with self._lock:
            self._data.setdefault(ck, value)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
        self.hits = self.misses = 0

    def stats(self) -> dict[str, int]:
        return {"entries": len(self._data), "hits": self.hits, "misses": self.misses}

    # persistence --------------------------------------------------------

    def store(self, path: str | os.PathLike | None = None) -> Path:
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("no cache path given")
        with self._lock:
            rows = sorted(self._data.items())
        tmp = target.with_name(target.name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            for key, value in rows:
                fh.write(format_entry(key, value))
                fh.write("\n")
        os.replace(tmp, target)
        return target

    @classmethod
    def load(cls, path: str | os.PathLike) -> SymbolCache:
        cache = cls(path)
        p = Path(path)
        if not p.exists():
            return cache
        with open(p, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    key, value = parse_entry(line)
                except ValueError as exc:
                    raise CacheParseError(p, lineno, line, str(exc)) from None
                cache._data[canonical_key(key)] = value
        return cache

    def merge(self, other: SymbolCache) -> None:
        self.update(other._data.items())

    def update(self, entries) -> None:
        """Insert canonical ``(key, value)`` pairs, keeping existing values."""
        with self._lock:
            for k, v in entries:
                self._data.setdefault(k, v)

    def entries_after(self, n: int) -> list[tuple[Key6, AlgebraicNumber]]:
        """Entries inserted after the first ``n`` (insertion order)."""
        with self._lock:
            return list(itertools.islice(self._data.items(), n, None))


def format_entry(key: Key6, value: AlgebraicNumber) -> str:
    labels = " ".join(str(t) for t in key)
    return f"6j {labels} -> {format_algebraic(value)}"


def parse_entry(line: str) -> tuple[Key6, AlgebraicNumber]:
    head, sep, tail = line.partition("->")
    if not sep:
        raise ValueError("missing '->'")
    fields = head.split()
    if len(fields) != 7 or fields[0] != "6j":
        raise ValueError("expected '6j' followed by six doubled labels")
    try:
        key = tuple(int(t) for t in fields[1:])
    except ValueError:
        raise ValueError("labels must be integers") from None
    if any(t < 0 for t in key):
        raise ValueError("labels must be non-negative")
    return key, parse_algebraic(tail)  # type: ignore[return-value]


_default: SymbolCache | None = None
_default_lock = threading.Lock()


def default_cache() -> SymbolCache:
    """Process-wide cache; loaded from ``$FIFTEENJ_CACHE`` when set."""
    global _default
    if _default is None:
        with _default_lock:
            if _default is None:
                env = os.environ.get(CACHE_ENV)
                _default = SymbolCache.load(env) if env else SymbolCache()
    return _default


def set_default_cache(cache: SymbolCache) -> None:
    global _default
    with _default_lock:
        _default = cache


def cache_load(path: str | os.PathLike) -> SymbolCache:
    return SymbolCache.load(path)


def cache_store(cache: SymbolCache, path: str | os.PathLike) -> Path:
    return cache.store(path)
