"""Exact evaluation of 3j, 6j, 9j and first-kind 15j symbols."""

from .cache import SymbolCache, cache_load, cache_store, default_cache, set_default_cache
from .labels import NAMES, TRIADS, FifteenJLabels
from .symbols import SymbolInputError, wigner_3j, wigner_6j, wigner_9j, wigner_15j_first

__all__ = [
    "NAMES",
    "TRIADS",
    "FifteenJLabels",
    "SymbolCache",
    "SymbolInputError",
    "cache_load",
    "cache_store",
    "default_cache",
    "set_default_cache",
    "wigner_3j",
    "wigner_6j",
    "wigner_9j",
    "wigner_15j_first",
]
