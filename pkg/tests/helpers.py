"""Random instance generators and brute-force oracles shared by the tests.

The oracles deliberately avoid the package's kron/einsum paths: everything
is written as explicit index loops over the computational basis.
"""

from __future__ import annotations

import itertools

import numpy as np

from qcorr.states import PureState, StateDecomposition
from qcorr.tensor import DimensionProfile


def random_matrix(rng, n, m=None):
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))


def random_density(rng, n):
    g = random_matrix(rng, n)
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_pure(rng, n_qubits) -> PureState:
    v = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return PureState.normalized(v, DimensionProfile.qubits(n_qubits))


def random_decomposition(rng, n_qubits, n_terms) -> StateDecomposition:
    w = rng.dirichlet(np.ones(n_terms))
    w = w / w.sum()
    return StateDecomposition(tuple((wi, random_pure(rng, n_qubits)) for wi in w))


def random_axes(rng, n):
    return [str(a) for a in rng.choice(["x", "y", "z"], size=n)]


def kron_oracle(a, b):
    p, q = a.shape
    r, s = b.shape
    out = np.zeros((p * r, q * s), dtype=complex)
    for i in range(p):
        for j in range(q):
            for k in range(r):
                for l in range(s):
                    out[i * r + k, j * s + l] = a[i, j] * b[k, l]
    return out


def _bits(index, n):
    return [(index >> (n - 1 - k)) & 1 for k in range(n)]


def product_effect_entry(locals_, row, col):
    """Entry of a tensor product of 2x2 local operators by the index formula."""
    n = len(locals_)
    out = 1 + 0j
    for op, r, c in zip(locals_, _bits(row, n), _bits(col, n)):
        out *= op[r, c]
    return out


_PLUS = {
    "z": np.array([[1, 0], [0, 0]], dtype=complex),
    "x": np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex),
    "y": np.array([[0.5, -0.5j], [0.5j, 0.5]], dtype=complex),
}


def local_projectors(axes):
    """Per-slot ``(P+, P-)`` written out by hand; ``None`` for unmeasured slots."""
    out = []
    for a in axes:
        if a is None:
            out.append(None)
        else:
            plus = _PLUS[a]
            out.append((plus, np.eye(2) - plus))
    return out


def probability_oracle(axes, terms):
    """Brute-force outcome distribution of a local spin measurement.

    ``terms`` is a list of ``(weight, amplitudes)``.  For each outcome the
    effect is a product projector E; its action on each member state is an
    explicit amplitude sum ``(E psi)_i = sum_j E_ij psi_j`` and the
    probability is ``sum_m w_m ||E psi_m||^2``.  Returns a flat list in grid
    order (+1/2 first on every axis).
    """
    n = len(axes)
    dim = 2**n
    pairs = local_projectors(axes)
    measured = [k for k, p in enumerate(pairs) if p is not None]
    ident = np.eye(2, dtype=complex)
    probs = []
    for choice in itertools.product(range(2), repeat=len(measured)):
        ops = [ident] * n
        for k, c in zip(measured, choice):
            ops[k] = pairs[k][c]
        total = 0.0
        for w, psi in terms:
            phi = [0j] * dim
            for i in range(dim):
                acc = 0j
                for j in range(dim):
                    acc += product_effect_entry(ops, i, j) * psi[j]
                phi[i] = acc
            total += w * sum(abs(z) ** 2 for z in phi)
        probs.append(total)
    return probs


def sum_table_oracle(axes, terms):
    """Sum table by explicit expansion: per state, per slot single-qubit marginals."""
    n = len(axes)
    measured = [k for k, a in enumerate(axes) if a is not None]
    out = []
    for choice in itertools.product(range(2), repeat=len(measured)):
        total = 0.0
        for w, psi in terms:
            prod = 1.0
            for k, c in zip(measured, choice):
                one = [None] * n
                one[k] = axes[k]
                p = probability_oracle(one, [(1.0, psi)])
                prod *= p[c]
            total += w * prod
        out.append(total)
    return out


def terms_of(state):
    if isinstance(state, PureState):
        return [(1.0, state.amplitudes)]
    return [(w, s.amplitudes) for w, s in state.terms]
