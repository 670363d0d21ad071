"""Discrete POV observables on labeled outcome grids.

Effects are stored as one array of shape ``grid.shape + (D, D)`` so that
marginalization is a sum over leading axes.  Outcome labels are exact
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .tensor import (
    ATOL,
    DimensionError,
    DimensionProfile,
    as_profile,
    frozen,
    is_hermitian,
    is_projection,
    kron_all,
    max_norm,
    probe_min,
)

HALF = Fraction(1, 2)
SPIN_LABELS = (HALF, -HALF)
POSITIVITY_TOL = 1e-10


class ObservableError(ValueError):
    """Raised when effects fail positivity/completeness or builders get bad input."""


def as_label(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**6)
    return Fraction(x)


def format_label(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class OutcomeGrid:
    axes: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        axes = tuple(tuple(as_label(v) for v in ax) for ax in self.axes)
        if not axes:
            raise ObservableError("grid needs at least one axis")
        for ax in axes:
            if not ax:
                raise ObservableError("grid axes must be non-empty")
            if len(set(ax)) != len(ax):
                raise ObservableError(f"duplicate labels on axis {ax}")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def spin(cls, n: int) -> OutcomeGrid:
        return cls((SPIN_LABELS,) * n)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(ax) for ax in self.axes)

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def outcomes(self) -> Iterator[tuple[Fraction, ...]]:
        """All outcome tuples, lexicographic in axis-label order."""
        return itertools.product(*self.axes)

    def index(self, outcome: Sequence) -> tuple[int, ...]:
        if len(outcome) != self.ndim:
            raise KeyError(f"outcome {outcome!r} has wrong arity for {self.ndim} axes")
        try:
            return tuple(ax.index(as_label(v)) for ax, v in zip(self.axes, outcome))
        except ValueError:
            raise KeyError(f"outcome {outcome!r} not on grid") from None

    def select(self, axes: Iterable[int]) -> OutcomeGrid:
        return OutcomeGrid(tuple(self.axes[i] for i in sorted(axes)))

    def transpose(self, order: Sequence[int]) -> OutcomeGrid:
        return OutcomeGrid(tuple(self.axes[i] for i in order))


@dataclass(frozen=True, eq=False)
class DiscreteObservable:
    """A POV function: outcome tuple -> positive operator, summing to identity.

    ``effects`` has shape ``grid.shape + (D, D)``; ``effects[idx]`` is the
    effect for the outcome at grid index ``idx``.
    """

    grid: OutcomeGrid
    effects: np.ndarray
    profile: DimensionProfile

    def __post_init__(self):
        profile = as_profile(self.profile)
        eff = frozen(self.effects)
        d = profile.total
        if eff.shape != self.grid.shape + (d, d):
            raise DimensionError(
                f"effects shape {eff.shape} does not fit grid {self.grid.shape} "
                f"and dimension {d}"
            )
        flat = eff.reshape(-1, d, d)
        for k, e in enumerate(flat):
            if not is_hermitian(e, ATOL):
                raise ObservableError(f"effect #{k} is not Hermitian")
            if probe_min(e) < -POSITIVITY_TOL or probe_min(np.eye(d) - e) < -POSITIVITY_TOL:
                raise ObservableError(f"effect #{k} is not between 0 and 1")
        if max_norm(flat.sum(axis=0) - np.eye(d)) > ATOL:
            raise ObservableError("effects do not sum to the identity")
        object.__setattr__(self, "effects", eff)
        object.__setattr__(self, "profile", profile)

    @classmethod
    def from_mapping(cls, grid: OutcomeGrid, effects: dict, profile) -> DiscreteObservable:
        """Build from ``{outcome tuple: matrix}``; every grid point must be present."""
        profile = as_profile(profile)
        d = profile.total
        arr = np.zeros(grid.shape + (d, d), dtype=complex)
        seen = set()
        for outcome, m in effects.items():
            idx = grid.index(outcome)
            arr[idx] = m
            seen.add(idx)
        if len(seen) != grid.size:
            raise ObservableError("effect map does not cover the whole grid")
        return cls(grid, arr, profile)

    def effect(self, outcome: Sequence) -> np.ndarray:
        return self.effects[self.grid.index(outcome)]

    def items(self) -> Iterator[tuple[tuple[Fraction, ...], np.ndarray]]:
        for outcome in self.grid.outcomes():
            yield outcome, self.effect(outcome)

    def flat_effects(self) -> np.ndarray:
        d = self.profile.total
        return self.effects.reshape(-1, d, d)

    def is_pv(self, tol: float = ATOL) -> bool:
        return all(is_projection(e, tol) for e in self.flat_effects())


class SpinAxis(enum.Enum):
    x = "x"
    y = "y"
    z = "z"


def spin_half(axis: SpinAxis | str) -> tuple[np.ndarray, np.ndarray]:
    """Spectral projectors ``(P_+, P_-)`` of the spin-1/2 component along ``axis``."""
    axis = SpinAxis(axis)
    if axis is SpinAxis.z:
        plus = np.array([[1, 0], [0, 0]], dtype=complex)
    elif axis is SpinAxis.x:
        plus = np.array([[1, 1], [1, 1]], dtype=complex) / 2
    else:
        # columns are P_y|0> = (|0> + i|1>)/2 and P_y|1> = (-i|0> + |1>)/2
        plus = np.array([[1, -1j], [1j, 1]], dtype=complex) / 2
    return plus, np.eye(2, dtype=complex) - plus


LocalFactor = Union[SpinAxis, str, Sequence[np.ndarray], None]


def _projector_pair(factor) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(factor, (SpinAxis, str)):
        return spin_half(factor)
    plus, minus = (np.asarray(m, dtype=complex) for m in factor)
    for m in (plus, minus):
        if m.shape != (2, 2):
            raise DimensionError("local factors must be 2x2 qubit projectors")
        if not is_projection(m):
            raise ObservableError("local factor operators must be projections")
    return plus, minus


def local_joint(factors: Sequence[LocalFactor]) -> DiscreteObservable:
    """Joint PV observable of local spin measurements on a register of qubits.

    Each entry of ``factors`` is an axis name, a ``(plus, minus)`` projector
    pair, or ``None`` for an unmeasured qubit (identity on that slot).  The
    effect at ``(e1, ..., ek)`` is the tensor product of the chosen local
    projectors; ``+1/2`` is listed first on every axis.
    """
    factors = list(factors)
    measured = [k for k, f in enumerate(factors) if f is not None]
    if not measured:
        raise ObservableError("at least one qubit must be measured")
    pairs = [_projector_pair(factors[k]) for k in measured]
    single = [_single_qubit_observable(p) for p in pairs]
    n = len(factors)
    slots = [k + 1 for k in measured]
    embedded = [embed(o, DimensionProfile.qubits(n), [s]) for o, s in zip(single, slots)]
    for a, b in itertools.combinations(embedded, 2):
        if not comeasurable(a, b):
            raise ObservableError("factor observables are not comeasurable")

    k = len(pairs)
    grid = OutcomeGrid.spin(k)
    effects = np.empty(grid.shape + (2**k, 2**k), dtype=complex)
    for idx in itertools.product(range(2), repeat=k):
        effects[idx] = kron_all([pairs[j][i] for j, i in enumerate(idx)])
    obs = DiscreteObservable(grid, effects, DimensionProfile.qubits(k))
    if k == n:
        return obs
    return embed(obs, DimensionProfile.qubits(n), slots)


def _single_qubit_observable(pair) -> DiscreteObservable:
    return DiscreteObservable(OutcomeGrid.spin(1), np.stack(pair), DimensionProfile((2,)))


def embed(obs: DiscreteObservable, target_profile, slots: Sequence[int]) -> DiscreteObservable:
    """Extend ``obs`` to a larger register, acting as identity off ``slots`` (1-based)."""
    target = as_profile(target_profile)
    slots = list(slots)
    n = len(target)
    if any(b <= a for a, b in zip(slots, slots[1:])):
        raise DimensionError("slots must be strictly increasing")
    if not slots or slots[0] < 1 or slots[-1] > n:
        raise DimensionError(f"slots {slots} out of range 1..{n}")
    if target.select(slots).dims != obs.profile.dims:
        raise DimensionError(
            f"observable profile {obs.profile.dims} does not match slots {slots} "
            f"of {target.dims}"
        )
    if len(slots) == n:
        return DiscreteObservable(obs.grid, obs.effects, target)

    rest = [k for k in range(1, n + 1) if k not in slots]
    d_rest = target.select(rest).total
    ident = np.eye(d_rest, dtype=complex)
    # effect (x) identity lives on factor order slots + rest; permute back
    current = slots + rest
    perm = [current.index(k) for k in range(1, n + 1)]
    dims_current = tuple(target.dims[k - 1] for k in current)
    m = len(obs.grid.shape)
    big = np.einsum("...ij,kl->...ikjl", obs.effects, ident)
    big = big.reshape(obs.grid.shape + (obs.profile.total * d_rest,) * 2)
    t = big.reshape(obs.grid.shape + dims_current + dims_current)
    lead = list(range(m))
    rows = [m + p for p in perm]
    cols = [m + n + p for p in perm]
    t = np.transpose(t, lead + rows + cols)
    return DiscreteObservable(
        obs.grid, t.reshape(obs.grid.shape + (target.total, target.total)), target
    )


def marginal(obs: DiscreteObservable, kept_axes: Iterable[int]) -> DiscreteObservable:
    """Sum effects over the axes not in ``kept_axes`` (0-based axis indices)."""
    kept = sorted(set(kept_axes))
    if not kept:
        raise ObservableError("keep at least one axis")
    if kept[0] < 0 or kept[-1] >= obs.grid.ndim:
        raise ObservableError(f"axes {kept} out of range for {obs.grid.ndim} axes")
    dropped = tuple(i for i in range(obs.grid.ndim) if i not in kept)
    effects = obs.effects.sum(axis=dropped) if dropped else obs.effects
    return DiscreteObservable(obs.grid.select(kept), effects, obs.profile)


def comeasurable(a: DiscreteObservable, b: DiscreteObservable, tol: float = ATOL) -> bool:
    """Sufficient test: every effect of ``a`` commutes with every effect of ``b``."""
    if a.profile != b.profile:
        raise DimensionError(f"profiles differ: {a.profile.dims} vs {b.profile.dims}")
    ea, eb = a.flat_effects(), b.flat_effects()
    ab = np.einsum("pij,qjk->pqik", ea, eb)
    ba = np.einsum("qij,pjk->pqik", eb, ea)
    return max_norm(ab - ba) <= tol
