"""Brute-force ground truth for small stabilizer states.

Dense statevectors, density matrices summed over the whole group, von Neumann
entropies, and the local subgroup rank straight from its definition. Nothing
here reuses the elimination code it is meant to check.

Qubit 0 is the most significant bit of a basis index, so dense operators
agree with ``np.kron`` in qubit order.

Size limits guard against accidental huge allocations. A statevector on n
qubits costs ``16 * 2**n`` bytes (256 KiB at 14); a density matrix costs
``16 * 4**n`` bytes (16 MiB at 10). Setting ``STABSPLIT_ORACLE_MAX_QUBITS``
replaces every limit with that value.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .clifford import Gate
from .pauli import PauliOperator
from .stabilizer import Partition, StabilizerGroup

DEFAULT_LIMITS = {"statevector": 14, "density": 10, "enumerate": 20, "local_rank": 12}
ENV_VAR = "STABSPLIT_ORACLE_MAX_QUBITS"
EIGEN_FLOOR = 1e-12


class OracleSizeError(ValueError):
    pass


def limit(kind: str) -> int:
    override = os.environ.get(ENV_VAR)
    if override:
        return int(override)
    return DEFAULT_LIMITS[kind]


def _check_size(n: int, kind: str) -> None:
    cap = limit(kind)
    if n > cap:
        raise OracleSizeError(f"{kind} oracle limited to {cap} qubits, got {n} (set {ENV_VAR})")


@dataclass(frozen=True, eq=False)
class DenseState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (2**self.n,):
            raise ValueError("amplitude vector has the wrong length")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"state is not normalised (norm {norm})")

    def overlap(self, other: DenseState) -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def apply_pauli(p: PauliOperator, psi: np.ndarray) -> np.ndarray:
    """``p @ psi`` for a dense vector, without building the matrix."""
    n = p.n
    idx = np.arange(2**n)
    # qubit j is bit (n-1-j) of the basis index
    xm = sum(1 << (n - 1 - j) for j in range(n) if p.x >> j & 1)
    zm = sum(1 << (n - 1 - j) for j in range(n) if p.z >> j & 1)
    ny = bin(p.x & p.z).count("1")
    zpar = np.bitwise_count(idx & zm) & 1
    out = np.empty_like(psi)
    out[idx ^ xm] = psi * (1 - 2 * zpar.astype(float))
    return (1j ** ((p.phase + ny) % 4)) * out


def statevector(s: StabilizerGroup) -> DenseState:
    """The +1 joint eigenvector of the generators, first nonzero amplitude real positive."""
    n = s.n
    _check_size(n, "statevector")
    gens = s.generators
    for b in range(2**n):
        psi = np.zeros(2**n, dtype=complex)
        psi[b] = 1
        for g in gens:
            psi = (psi + apply_pauli(g, psi)) / 2
        norm = np.linalg.norm(psi)
        if norm > 1e-6:
            psi /= norm
            first = psi[np.flatnonzero(np.abs(psi) > 1e-12)[0]]
            psi *= abs(first) / first
            return DenseState(n, psi)
    raise AssertionError("no basis state survives the stabilizer projectors")


def enumerate_group(s: StabilizerGroup) -> Iterator[PauliOperator]:
    """All ``2**n`` group elements; element ``k`` multiplies the generators whose bit is set in ``k``."""
    n = s.n
    _check_size(n, "enumerate")
    gens = s.generators
    for k in range(2**n):
        g = PauliOperator.identity(n)
        for i in range(n):
            if k >> i & 1:
                g = g @ gens[i]
        yield g


def _restricted_matrix(p: PauliOperator, block) -> np.ndarray:
    mat = np.array([[1.0 + 0j]])
    for q in block:
        mat = np.kron(mat, PauliOperator.single(1, 0, p.letter(q)).to_matrix())
    return (1j**p.phase) * mat


def density_from_group(s: StabilizerGroup, traced_block=None) -> np.ndarray:
    """``2**-n`` times the sum of every group element, or with ``traced_block``
    the reduced state on the complement from the elements acting as identity there."""
    n = s.n
    _check_size(n, "density")
    traced = sorted(traced_block or [])
    keep = [q for q in range(n) if q not in set(traced)]
    rho = np.zeros((2 ** len(keep),) * 2, dtype=complex)
    tmask = sum(1 << q for q in traced)
    for g in enumerate_group(s):
        if (g.x | g.z) & tmask:
            continue
        rho += _restricted_matrix(g, keep)
    return rho / 2 ** len(keep)


def partial_trace(rho: np.ndarray, n: int, traced) -> np.ndarray:
    traced = sorted(traced)
    keep = [q for q in range(n) if q not in set(traced)]
    t = rho.reshape((2,) * (2 * n))
    t = np.transpose(t, keep + traced + [n + q for q in keep] + [n + q for q in traced])
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    return np.einsum("ajbj->ab", t.reshape(dk, dt, dk, dt))


def reduced_spectrum(state: DenseState, keep) -> np.ndarray:
    """Eigenvalues of the reduced density matrix on ``keep``."""
    n = state.n
    keep = sorted(keep)
    rest = [q for q in range(n) if q not in set(keep)]
    psi = np.transpose(state.amplitudes.reshape((2,) * n), keep + rest)
    mat = psi.reshape(2 ** len(keep), 2 ** len(rest))
    sv = np.linalg.svd(mat, compute_uv=False)
    return sv**2


def von_neumann_entropy(eigenvalues: np.ndarray) -> float:
    lam = eigenvalues[eigenvalues > EIGEN_FLOOR]
    return float(-(lam * np.log2(lam)).sum())


def entanglement_entropy_dense(state: DenseState, bipartition: Partition) -> float:
    """Base-2 von Neumann entropy of the reduced state on block B."""
    return von_neumann_entropy(reduced_spectrum(state, bipartition.blocks[1]))


def brute_force_local_rank(s: StabilizerGroup, partition: Partition, elements=None) -> int:
    """Rank of the span of all group elements that act as identity on some block.

    Spans are grown as explicit sets of exponent vectors, so no elimination
    routine is involved. ``elements`` may carry a cached ``list(enumerate_group(s))``.
    """
    n = s.n
    _check_size(n, "local_rank")
    if partition.n != n:
        raise ValueError(f"partition is over {partition.n} qubits, group over {n}")
    masks = [sum(1 << q for q in blk) for blk in partition.blocks]
    span = {0}
    r = 0
    for k, g in enumerate(enumerate_group(s) if elements is None else elements):
        support = g.x | g.z
        if k in span or not any(support & m == 0 for m in masks):
            continue
        span |= {v ^ k for v in span}
        r += 1
    return r


_GATE_MATS = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def apply_circuit_dense(state: DenseState, circuit) -> DenseState:
    n = state.n
    psi = state.amplitudes.reshape((2,) * n).copy()
    for gate in circuit:
        gate = gate if isinstance(gate, Gate) else Gate(*gate)
        if gate.name == "CNOT":
            c, t = gate.qubits
            sel = [slice(None)] * n
            sel[c] = 1
            sub = psi[tuple(sel)]
            axis = t if t < c else t - 1
            psi[tuple(sel)] = np.flip(sub, axis=axis)
        else:
            (q,) = gate.qubits
            psi = np.moveaxis(np.tensordot(_GATE_MATS[gate.name], psi, axes=([1], [q])), 0, q)
    return DenseState(n, psi.reshape(-1))


def bell_product_state(n: int, pair_sites, product_sites=()) -> DenseState:
    """``(|00> + |11>)/sqrt 2`` on each pair, ``|0>`` on every other qubit."""
    psi = np.zeros(2**n, dtype=complex)
    for k in range(2 ** len(pair_sites)):
        idx = 0
        for i, (a, b) in enumerate(pair_sites):
            if k >> i & 1:
                idx |= (1 << (n - 1 - a)) | (1 << (n - 1 - b))
        psi[idx] = 1
    return DenseState(n, psi / np.linalg.norm(psi))
