"""Total, classical and quantum correlation functions.

Each function is a pointwise ratio of two probability tables over the same
grid.  Cells where both numerator and denominator vanish are UNDEFINED
(stored as NaN with ``defined`` False); they are skipped by every check.
Values are non-negative reals and routinely exceed 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .observables import OutcomeGrid
from .probability import ProbabilityTable
from .tensor import DimensionError

ZERO_TOL = 1e-12
CONSTANCY_TOL = 1e-9


class SupportError(ValueError):
    """Numerator carries mass where the reference distribution vanishes."""


@dataclass(frozen=True, eq=False)
class CorrelationTable:
    grid: OutcomeGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != self.grid.shape:
            raise DimensionError(f"values shape {v.shape} != grid shape {self.grid.shape}")
        if np.any(v[~np.isnan(v)] < 0):
            raise ValueError("correlation values must be non-negative")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def defined(self) -> np.ndarray:
        return ~np.isnan(self.values)

    def __getitem__(self, outcome) -> Optional[float]:
        v = self.values[self.grid.index(outcome)]
        return None if np.isnan(v) else float(v)

    def items(self) -> Iterator[tuple[tuple, Optional[float]]]:
        for outcome in self.grid.outcomes():
            yield outcome, self[outcome]

    def flat(self) -> np.ndarray:
        return self.values.ravel()


def _ratio(num: ProbabilityTable, den: ProbabilityTable) -> CorrelationTable:
    if num.grid != den.grid:
        raise DimensionError("tables live on different grids")
    n, d = num.values, den.values
    den_zero = d < ZERO_TOL
    if np.any(den_zero & (n >= ZERO_TOL)):
        raise SupportError("numerator has mass outside the reference support")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den_zero, np.nan, n / np.where(den_zero, 1.0, d))
    return CorrelationTable(num.grid, out)


def total_correlation(joint: ProbabilityTable, product: ProbabilityTable) -> CorrelationTable:
    """joint / product of marginals."""
    return _ratio(joint, product)


def classical_correlation(summed: ProbabilityTable, product: ProbabilityTable) -> CorrelationTable:
    """sum table / product of marginals."""
    return _ratio(summed, product)


def quantum_correlation(joint: ProbabilityTable, summed: ProbabilityTable) -> CorrelationTable:
    """joint / sum table."""
    return _ratio(joint, summed)


def product_rule_check(
    t: CorrelationTable, c: CorrelationTable, q: CorrelationTable, tol: float = CONSTANCY_TOL
) -> bool:
    """``t == c * q`` on every cell where all three are defined."""
    if not (t.grid == c.grid == q.grid):
        raise DimensionError("tables live on different grids")
    mask = t.defined & c.defined & q.defined
    if not mask.any():
        return True
    dev = np.abs(t.values[mask] - c.values[mask] * q.values[mask])
    return bool(np.max(dev) <= tol)


def is_quantum_correlated(q: CorrelationTable, tol: float = CONSTANCY_TOL) -> bool:
    """True when the quantum correlation function is not constant on its defined cells."""
    vals = q.values[q.defined]
    if vals.size == 0:
        raise ValueError("every cell is undefined")
    return bool(vals.max() - vals.min() > tol)


def rational_guess(x: float, max_den: int = 64, tol: float = 1e-9) -> Optional[Fraction]:
    """Nearest fraction with denominator <= ``max_den`` if within ``tol`` of ``x``."""
    if not np.isfinite(x):
        return None
    f = Fraction(x).limit_denominator(max_den)
    return f if abs(float(f) - x) <= tol else None


def expectation_sums(phi: CorrelationTable, reference: ProbabilityTable) -> float:
    """``sum phi * reference`` over defined cells (equals 1 for consistent inputs)."""
    mask = phi.defined
    return float(np.sum(phi.values[mask] * reference.values[mask]))

