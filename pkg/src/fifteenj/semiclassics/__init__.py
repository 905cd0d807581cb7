"""Asymptotic formulas for the first-kind 15j symbol with small spins."""

from .dmatrix import DMatrixIndexError, wigner_d, wigner_d2, wigner_d_matrix
from .formulas import (
    SMALL_LABELS,
    AsymptoticResult,
    Formula,
    Regime,
    SmallSpinIndices,
    asymp_four_small,
    asymp_nine_j,
    asymp_three_small,
    asymp_two_small,
    asymptotic,
)

__all__ = [
    "SMALL_LABELS",
    "AsymptoticResult",
    "DMatrixIndexError",
    "Formula",
    "Regime",
    "SmallSpinIndices",
    "asymp_four_small",
    "asymp_nine_j",
    "asymp_three_small",
    "asymp_two_small",
    "asymptotic",
    "wigner_d",
    "wigner_d2",
    "wigner_d_matrix",
]
