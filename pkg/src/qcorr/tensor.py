"""Small dense complex linear algebra on tensor-product spaces.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Factor spaces
are numbered from 1, leftmost slot first, and computational indices are
big-endian (``|011>`` is index 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from typing import Iterable, Sequence

import numpy as np

ATOL = 1e-12


class DimensionError(ValueError):
    """Raised when matrix shapes do not fit the requested operation."""


@dataclass(frozen=True)
class DimensionProfile:
    """Ordered factor dimensions of a tensor-product space, e.g. ``(2, 2, 2)``."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise DimensionError("a profile needs at least one factor")
        if any(d < 1 for d in dims):
            raise DimensionError(f"factor dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def qubits(cls, n: int) -> DimensionProfile:
        return cls((2,) * n)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def select(self, slots: Iterable[int]) -> DimensionProfile:
        """Sub-profile for 1-based ``slots`` (order kept)."""
        return DimensionProfile(tuple(self.dims[s - 1] for s in sorted(slots)))


def as_profile(profile) -> DimensionProfile:
    if isinstance(profile, DimensionProfile):
        return profile
    return DimensionProfile(tuple(profile))


def frozen(a) -> np.ndarray:
    """Return a read-only complex copy of ``a``."""
    out = np.array(a, dtype=complex)
    out.flags.writeable = False
    return out


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def max_norm(a: np.ndarray) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def _require_square(a: np.ndarray, what: str = "operation") -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} needs a square matrix, got shape {a.shape}")


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i*p + k, j*q + l)`` is ``a[i, j] * b[k, l]``."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(mats: Sequence) -> np.ndarray:
    return _fold(kron, mats)


def trace(a) -> complex:
    a = np.asarray(a)
    _require_square(a, "trace")
    return complex(np.trace(a))


def partial_trace(a, profile, traced_factors: Iterable[int]) -> np.ndarray:
    """Trace out the 1-based ``traced_factors`` of an operator on ``profile``.

    The remaining factors keep their original order.  Tracing every factor
    yields a 1x1 matrix holding the full trace.
    """
    a = np.asarray(a, dtype=complex)
    profile = as_profile(profile)
    _require_square(a, "partial trace")
    if a.shape[0] != profile.total:
        raise DimensionError(
            f"matrix of size {a.shape[0]} does not match profile {profile.dims}"
        )
    traced = set(traced_factors)
    if not traced:
        raise DimensionError("no factors to trace out")
    n = len(profile)
    bad = [t for t in traced if not 1 <= t <= n]
    if bad:
        raise DimensionError(f"factor indices {bad} out of range 1..{n}")

    kept = [k for k in range(n) if k + 1 not in traced]
    t = a.reshape(profile.dims + profile.dims)
    # einsum labels: rows 0..n-1, cols n..2n-1; traced columns reuse row labels
    rows = list(range(n))
    cols = [k if k + 1 in traced else n + k for k in range(n)]
    out_labels = kept + [n + k for k in kept]
    reduced = np.einsum(t, rows + cols, out_labels)
    d = int(np.prod([profile.dims[k] for k in kept])) if kept else 1
    return reduced.reshape(d, d)


def is_hermitian(a, tol: float = ATOL) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and max_norm(a - dagger(a)) <= tol


def is_projection(a, tol: float = ATOL) -> bool:
    """True iff ``a`` is self-adjoint and idempotent in the max-entry norm."""
    a = np.asarray(a, dtype=complex)
    _require_square(a, "projection check")
    return max_norm(a - dagger(a)) <= tol and max_norm(a @ a - a) <= tol


def probe_vectors(dim: int) -> np.ndarray:
    """Rows are the positivity probes for a space of dimension ``dim``.

    Computational basis vectors plus every two-element superposition
    ``(|i> + c|j>)/sqrt(2)`` with ``c`` in ``{1, -1, i, -i}``.
    """
    probes = [np.eye(dim, dtype=complex)]
    s = 1 / np.sqrt(2)
    for i in range(dim):
        for j in range(i + 1, dim):
            block = np.zeros((4, dim), dtype=complex)
            block[:, i] = s
            block[:, j] = np.array([1, -1, 1j, -1j]) * s
            probes.append(block)
    return np.vstack(probes)


def probe_min(a) -> float:
    """Smallest ``<v|a|v>`` (real part) over :func:`probe_vectors`."""
    a = np.asarray(a, dtype=complex)
    v = probe_vectors(a.shape[0])
    vals = np.einsum("ki,ij,kj->k", v.conj(), a, v)
    return float(np.min(vals.real))
