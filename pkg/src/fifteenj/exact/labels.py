"""The fifteen labels of the first-kind 15j symbol and its ten couplings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..halfint import HalfInt, HalfIntLike, triangle_ok2

# Array layout, row by row:
#   j1   j2   j12  j125 j1256
#   j3   j4   j34  j135 j1356
#   j13  j24  j5   j6   j7
LAYOUT: tuple[tuple[str, ...], ...] = (
    ("j1", "j2", "j12", "j125", "j1256"),
    ("j3", "j4", "j34", "j135", "j1356"),
    ("j13", "j24", "j5", "j6", "j7"),
)
NAMES: tuple[str, ...] = tuple(n for row in LAYOUT for n in row)

# The two coupling schemes. Each label sits in exactly two triads.
TRIADS: tuple[tuple[str, str, str], ...] = (
    ("j1", "j2", "j12"),
    ("j3", "j4", "j34"),
    ("j12", "j5", "j125"),
    ("j125", "j6", "j1256"),
    ("j1256", "j34", "j7"),
    ("j1", "j3", "j13"),
    ("j2", "j4", "j24"),
    ("j13", "j5", "j135"),
    ("j135", "j6", "j1356"),
    ("j1356", "j24", "j7"),
)

# Relabelling that exchanges the two schemes.
SCHEME_SWAP: dict[str, str] = {
    "j2": "j3", "j3": "j2",
    "j12": "j13", "j13": "j12",
    "j34": "j24", "j24": "j34",
    "j125": "j135", "j135": "j125",
    "j1256": "j1356", "j1356": "j1256",
}


@dataclass(frozen=True)
class FifteenJLabels:
    """Fifteen half-integer labels plus the set of names flagged small."""

    values: Mapping[str, HalfInt]
    small: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        vals = {n: HalfInt.of(self.values[n]) for n in NAMES}
        if set(self.values) - set(NAMES):
            raise KeyError(f"unknown labels {sorted(set(self.values) - set(NAMES))}")
        for n, v in vals.items():
            if v.twice < 0:
                raise ValueError(f"{n} must be non-negative")
        bad = set(self.small) - set(NAMES)
        if bad:
            raise KeyError(f"unknown small labels {sorted(bad)}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "small", frozenset(self.small))

    # construction ----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[HalfIntLike]], small: Iterable[str] = ()) -> FifteenJLabels:
        """Build from the 3x5 array layout."""
        if len(rows) != 3 or any(len(r) != 5 for r in rows):
            raise ValueError("expected a 3x5 array of labels")
        vals = {n: HalfInt.of(v) for names, row in zip(LAYOUT, rows) for n, v in zip(names, row)}
        return cls(vals, frozenset(small))

    @classmethod
    def from_twice(cls, twice: Mapping[str, int], small: Iterable[str] = ()) -> FifteenJLabels:
        return cls({n: HalfInt(int(twice[n])) for n in NAMES}, frozenset(small))

    @classmethod
    def from_tuple2(cls, t: Sequence[int], small: Iterable[str] = ()) -> FifteenJLabels:
        """Doubled labels in :data:`NAMES` order."""
        return cls({n: HalfInt(int(v)) for n, v in zip(NAMES, t)}, frozenset(small))

    # access ----------------------------------------------------------

    def __getitem__(self, name: str) -> HalfInt:
        return self.values[name]

    @property
    def twice(self) -> dict[str, int]:
        return {n: v.twice for n, v in self.values.items()}

    def as_tuple2(self) -> tuple[int, ...]:
        return tuple(self.values[n].twice for n in NAMES)

    def rows(self) -> list[list[HalfInt]]:
        return [[self.values[n] for n in row] for row in LAYOUT]

    def replace(self, small: Iterable[str] | None = None, **changes: HalfIntLike) -> FifteenJLabels:
        vals = dict(self.values)
        for k, v in changes.items():
            if k not in vals:
                raise KeyError(k)
            vals[k] = HalfInt.of(v)
        return FifteenJLabels(vals, self.small if small is None else frozenset(small))

    def scheme_swapped(self) -> FifteenJLabels:
        vals = {SCHEME_SWAP.get(n, n): v for n, v in self.values.items()}
        return FifteenJLabels(vals, frozenset(SCHEME_SWAP.get(n, n) for n in self.small))

    # selection rules -------------------------------------------------

    def triads(self) -> list[tuple[tuple[str, str, str], tuple[HalfInt, HalfInt, HalfInt]]]:
        return [(names, tuple(self.values[n] for n in names)) for names in TRIADS]  # type: ignore[misc]

    def violated_triads(self) -> list[tuple[str, str, str]]:
        t = self.twice
        return [names for names in TRIADS if not triangle_ok2(*(t[n] for n in names))]

    def admissible(self) -> bool:
        t = self.twice
        return all(triangle_ok2(t[a], t[b], t[c]) for a, b, c in TRIADS)

    def __str__(self) -> str:
        return " / ".join(" ".join(str(v) for v in row) for row in self.rows())


def enumerate_triads() -> tuple[tuple[str, str, str], ...]:
    return TRIADS
