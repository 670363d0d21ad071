"""Pure states, weighted decompositions of mixed states, density operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .tensor import (
    ATOL,
    DimensionError,
    DimensionProfile,
    as_profile,
    frozen,
    is_hermitian,
    partial_trace,
    probe_min,
)

POSITIVITY_TOL = 1e-10


class StateError(ValueError):
    """Raised for unnormalized amplitudes, bad weights or non-physical operators."""


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    profile: DimensionProfile

    def __post_init__(self):
        profile = as_profile(self.profile)
        amps = frozen(np.ravel(self.amplitudes))
        if amps.size != profile.total:
            raise DimensionError(
                f"{amps.size} amplitudes do not fit profile {profile.dims}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > ATOL:
            raise StateError(f"state is not normalized (norm {norm!r})")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "profile", profile)

    @classmethod
    def normalized(cls, amplitudes, profile) -> PureState:
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        return cls(amps / np.linalg.norm(amps), profile)

    def projector(self) -> np.ndarray:
        """``|psi><psi|``."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def inner(self, other: PureState) -> complex:
        """``<self|other>``."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self):
        return f"PureState(dims={self.profile.dims}, amplitudes={self.amplitudes!r})"


@dataclass(frozen=True, eq=False)
class StateDecomposition:
    """A mixed state with a fixed statistical content: ``sum_m w_m |psi_m><psi_m|``."""

    terms: tuple[tuple[float, PureState], ...]

    def __post_init__(self):
        terms = tuple((float(w), s) for w, s in self.terms)
        if not terms:
            raise StateError("a decomposition needs at least one term")
        if any(w < 0 for w, _ in terms):
            raise StateError("weights must be non-negative")
        total = sum(w for w, _ in terms)
        if abs(total - 1) > ATOL:
            raise StateError(f"weights sum to {total!r}, not 1")
        profiles = {s.profile for _, s in terms}
        if len(profiles) != 1:
            raise DimensionError("all member states must share one profile")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def pure(cls, state: PureState) -> StateDecomposition:
        return cls(((1.0, state),))

    @property
    def profile(self) -> DimensionProfile:
        return self.terms[0][1].profile

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for w, _ in self.terms)

    @property
    def states(self) -> tuple[PureState, ...]:
        return tuple(s for _, s in self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    matrix: np.ndarray
    profile: DimensionProfile

    def __post_init__(self):
        profile = as_profile(self.profile)
        m = frozen(self.matrix)
        if m.shape != (profile.total, profile.total):
            raise DimensionError(
                f"matrix shape {m.shape} does not fit profile {profile.dims}"
            )
        if not is_hermitian(m, ATOL):
            raise StateError("density operator is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1) > ATOL:
            raise StateError(f"density operator has trace {tr!r}")
        if probe_min(m) < -POSITIVITY_TOL:
            raise StateError("density operator fails the positivity probes")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "profile", profile)


StateLike = Union[PureState, StateDecomposition, DensityOperator]


def density_of(state: StateLike) -> DensityOperator:
    if isinstance(state, DensityOperator):
        return state
    if isinstance(state, PureState):
        return DensityOperator(state.projector(), state.profile)
    rho = sum(w * s.projector() for w, s in state.terms)
    return DensityOperator(rho, state.profile)


def reduce(state: StateLike, traced_factors: Iterable[int]) -> DensityOperator:
    """Partial trace of the state's density operator over ``traced_factors``."""
    rho = density_of(state)
    traced = set(traced_factors)
    kept = [k for k in range(1, len(rho.profile) + 1) if k not in traced]
    reduced = partial_trace(rho.matrix, rho.profile, traced)
    if not kept:
        return DensityOperator(reduced, DimensionProfile((1,)))
    # re-symmetrize to absorb rounding in the einsum contraction
    reduced = (reduced + reduced.conj().T) / 2
    return DensityOperator(reduced, rho.profile.select(kept))


def basis_state(profile, labels: Sequence[int]) -> PureState:
    """Computational basis ket, e.g. ``basis_state((2, 2), (1, 1))`` is ``|11>``."""
    profile = as_profile(profile)
    if len(labels) != len(profile):
        raise DimensionError(f"{len(labels)} labels for {len(profile)} factors")
    for lab, d in zip(labels, profile.dims):
        if not 0 <= lab < d:
            raise DimensionError(f"label {lab} out of range for dimension {d}")
    amps = np.zeros(profile.total, dtype=complex)
    amps[np.ravel_multi_index(tuple(labels), profile.dims)] = 1
    return PureState(amps, profile)


def ket(bits: str) -> PureState:
    """Qubit basis ket from a bit string: ``ket("011")``."""
    return basis_state(DimensionProfile.qubits(len(bits)), [int(b) for b in bits])


def _superpose(coeffs: dict[str, complex]) -> PureState:
    n = len(next(iter(coeffs)))
    amps = sum(c * ket(bits).amplitudes for bits, c in coeffs.items())
    return PureState.normalized(amps, DimensionProfile.qubits(n))


def make_ghz() -> PureState:
    """(|000> - |111>)/sqrt(2)."""
    return _superpose({"000": 1, "111": -1})


def make_w() -> PureState:
    """(|011> + |101> + |110>)/sqrt(3)."""
    return _superpose({"011": 1, "101": 1, "110": 1})


_BELL = {
    1: {"00": 1, "11": 1},
    2: {"00": 1, "11": -1},
    3: {"01": 1, "10": 1},
    4: {"01": 1, "10": -1},
}


def make_bell(k: int) -> PureState:
    """Bell states B1..B4: (|00>+|11>), (|00>-|11>), (|01>+|10>), (|01>-|10>), over sqrt(2)."""
    try:
        return _superpose(_BELL[k])
    except KeyError:
        raise StateError(f"Bell index must be 1..4, got {k!r}") from None
