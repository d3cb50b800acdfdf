"""Digit-restricted harmonic sums to arbitrary precision."""

from ._core import (
    BudgetError,
    CapacityError,
    asymptotic,
    delta_table,
    irwin_sum,
    moments,
    series_coeffs,
    verify,
)

__all__ = [
    "BudgetError",
    "CapacityError",
    "asymptotic",
    "delta_table",
    "irwin_sum",
    "moments",
    "series_coeffs",
    "verify",
]
