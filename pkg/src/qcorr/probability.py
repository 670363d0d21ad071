"""Outcome probability functions and the reference distributions built from them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .observables import DiscreteObservable, OutcomeGrid, marginal
from .states import DensityOperator, PureState, StateDecomposition
from .tensor import ATOL, DimensionError

NORMALIZATION_TOL = 1e-10
IMAG_TOL = 1e-10


class ProbabilityError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """Probabilities over an outcome grid, stored as an array of shape ``grid.shape``."""

    grid: OutcomeGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != self.grid.shape:
            raise DimensionError(f"values shape {v.shape} != grid shape {self.grid.shape}")
        if np.any(v < -ATOL) or np.any(v > 1 + ATOL):
            raise ProbabilityError("probabilities outside [0, 1]")
        v = np.clip(v, 0.0, 1.0)
        if abs(v.sum() - 1) > NORMALIZATION_TOL:
            raise ProbabilityError(f"probabilities sum to {v.sum()!r}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __getitem__(self, outcome) -> float:
        return float(self.values[self.grid.index(outcome)])

    def items(self) -> Iterator[tuple[tuple, float]]:
        for outcome in self.grid.outcomes():
            yield outcome, self[outcome]

    def flat(self) -> np.ndarray:
        return self.values.ravel()


def _pure_expectations(effects: np.ndarray, amps: np.ndarray) -> np.ndarray:
    return np.einsum("i,...ij,j->...", amps.conj(), effects, amps)


def _check_profile(obs: DiscreteObservable, profile) -> None:
    if obs.profile != profile:
        raise DimensionError(
            f"observable acts on {obs.profile.dims}, state lives on {profile.dims}"
        )


def _real(vals: np.ndarray) -> np.ndarray:
    if vals.size and np.max(np.abs(vals.imag)) > IMAG_TOL:
        raise ProbabilityError("complex probability: non-Hermitian effect or state")
    return vals.real


def measure(
    obs: DiscreteObservable, state: Union[DensityOperator, PureState, StateDecomposition]
) -> ProbabilityTable:
    """``Tr(E(xi) rho)`` for every outcome ``xi`` of ``obs``."""
    _check_profile(obs, state.profile)
    if isinstance(state, PureState):
        vals = _pure_expectations(obs.effects, state.amplitudes)
    elif isinstance(state, StateDecomposition):
        vals = sum(w * _pure_expectations(obs.effects, s.amplitudes) for w, s in state)
    else:
        vals = np.einsum("...ij,ji->...", obs.effects, state.matrix)
    return ProbabilityTable(obs.grid, _real(vals))


def marginal_table(t: ProbabilityTable, axis: int) -> ProbabilityTable:
    """Single-axis table obtained by summing over every other axis."""
    if not 0 <= axis < t.grid.ndim:
        raise ProbabilityError(f"axis {axis} out of range for {t.grid.ndim} axes")
    others = tuple(i for i in range(t.grid.ndim) if i != axis)
    return ProbabilityTable(t.grid.select([axis]), t.values.sum(axis=others))


def marginal_tables(t: ProbabilityTable) -> list[ProbabilityTable]:
    return [marginal_table(t, i) for i in range(t.grid.ndim)]


def _outer(vectors: Sequence[np.ndarray]) -> np.ndarray:
    out = np.asarray(vectors[0], dtype=float)
    for v in vectors[1:]:
        out = np.multiply.outer(out, v)
    return out


def product_table(marginals: Sequence[ProbabilityTable]) -> ProbabilityTable:
    """Independent-outcome reference: product of single-axis marginals."""
    if not marginals:
        raise ProbabilityError("need at least one marginal")
    for m in marginals:
        if m.grid.ndim != 1:
            raise ProbabilityError("product_table takes single-axis tables")
    grid = OutcomeGrid(tuple(m.grid.axes[0] for m in marginals))
    return ProbabilityTable(grid, _outer([m.values for m in marginals]))


def sum_table(obs: DiscreteObservable, decomposition: StateDecomposition) -> ProbabilityTable:
    """Weighted sum over member states of the product of their single-axis marginals."""
    _check_profile(obs, decomposition.profile)
    axes_obs = [marginal(obs, [i]) for i in range(obs.grid.ndim)]
    total = np.zeros(obs.grid.shape)
    for w, psi in decomposition:
        per_axis = [_real(_pure_expectations(o.effects, psi.amplitudes)) for o in axes_obs]
        total = total + w * _outer(per_axis)
    return ProbabilityTable(obs.grid, total)
