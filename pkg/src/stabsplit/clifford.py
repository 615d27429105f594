"""Clifford gates over {H, S, CNOT, X, Z}: conjugation of stabilizer tableaus,
gate-list text/JSON format, and random Clifford circuits and states."""
from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .stabilizer import StabilizerGroup

GATE_ARITY = {"H": 1, "S": 1, "X": 1, "Z": 1, "CNOT": 2}


class Gate(NamedTuple):
    name: str
    qubits: tuple[int, ...]

    def __str__(self) -> str:
        return " ".join([self.name, *map(str, self.qubits)])

    @classmethod
    def parse(cls, text: str) -> Gate:
        parts = text.split()
        if not parts or parts[0] not in GATE_ARITY:
            raise ValueError(f"unknown gate {text!r}")
        name, args = parts[0], parts[1:]
        if len(args) != GATE_ARITY[name]:
            raise ValueError(f"gate {name} takes {GATE_ARITY[name]} qubit(s): {text!r}")
        qubits = tuple(int(a) for a in args)
        if name == "CNOT" and qubits[0] == qubits[1]:
            raise ValueError(f"CNOT control and target coincide: {text!r}")
        return cls(name, qubits)


def H(q: int) -> Gate:
    return Gate("H", (q,))


def S(q: int) -> Gate:
    return Gate("S", (q,))


def CNOT(c: int, t: int) -> Gate:
    return Gate("CNOT", (c, t))


def X(q: int) -> Gate:
    return Gate("X", (q,))


def Z(q: int) -> Gate:
    return Gate("Z", (q,))


def format_circuit(circuit: Iterable[Gate]) -> str:
    return "\n".join(str(g) for g in circuit)


def parse_circuit(text: str) -> list[Gate]:
    return [Gate.parse(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


def circuit_to_json(circuit: Iterable[Gate]) -> list[str]:
    return [str(g) for g in circuit]


def circuit_support(circuit: Iterable[Gate]) -> set[int]:
    return {q for g in circuit for q in g.qubits}


def apply_gate(x: np.ndarray, z: np.ndarray, r: np.ndarray, gate: Gate) -> None:
    """Conjugate tableau rows in place. ``r`` holds sign bits (phase // 2)."""
    name, qs = gate
    if name == "CNOT":
        c, t = qs
        r ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
        x[:, t] ^= x[:, c]
        z[:, c] ^= z[:, t]
        return
    (q,) = qs
    if name == "H":
        r ^= x[:, q] & z[:, q]
        x[:, q], z[:, q] = z[:, q].copy(), x[:, q].copy()
    elif name == "S":
        r ^= x[:, q] & z[:, q]
        z[:, q] ^= x[:, q]
    elif name == "X":
        r ^= z[:, q]
    elif name == "Z":
        r ^= x[:, q]
    else:
        raise ValueError(f"unknown gate {name}")


def apply_circuit(s: StabilizerGroup, circuit: Iterable[Gate]) -> StabilizerGroup:
    """Stabilizer group of ``U|psi>`` for the circuit ``U`` (gates applied in list order)."""
    x, z, r = s.x.copy(), s.z.copy(), (s.phase // 2).astype(np.uint8)
    for gate in circuit:
        for q in gate.qubits:
            if not 0 <= q < s.n:
                raise IndexError(f"gate {gate} acts outside {s.n} qubits")
        apply_gate(x, z, r, gate)
    return StabilizerGroup(x, z, (2 * r).astype(np.uint8))


def _apply_layer(x, z, r, hs, ss, controls, targets, xs, zs):
    """One layer of gates on disjoint qubits, vectorised across columns."""
    if len(hs):
        r ^= np.bitwise_xor.reduce(x[:, hs] & z[:, hs], axis=1)
        x[:, hs], z[:, hs] = z[:, hs], x[:, hs].copy()
    if len(ss):
        r ^= np.bitwise_xor.reduce(x[:, ss] & z[:, ss], axis=1)
        z[:, ss] ^= x[:, ss]
    if len(controls):
        c, t = controls, targets
        r ^= np.bitwise_xor.reduce(x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1), axis=1)
        x[:, t] ^= x[:, c]
        z[:, c] ^= z[:, t]
    if len(xs):
        r ^= np.bitwise_xor.reduce(z[:, xs], axis=1)
    if len(zs):
        r ^= np.bitwise_xor.reduce(x[:, zs], axis=1)


def random_layers(qubits: Sequence[int], depth: int, rng: np.random.Generator):
    """Yield ``depth`` layers of random gates confined to ``qubits``.

    A layer is a random single-qubit Clifford (from H and S) on each qubit,
    CNOTs on a random matching, and a random Pauli for the signs.
    """
    qubits = np.asarray(sorted(qubits), dtype=np.int64)
    m = len(qubits)
    for _ in range(depth):
        # each qubit gets one of: -, H, S, HS, SH, HSH (the six 1q Cliffords mod Paulis)
        kind = rng.integers(0, 6, size=m)
        first_h = qubits[np.isin(kind, (1, 3, 5))]
        mid_s = qubits[np.isin(kind, (2, 3, 4, 5))]
        last_h = qubits[np.isin(kind, (4, 5))]
        perm = rng.permutation(qubits)
        pairs = perm[: 2 * (m // 2)].reshape(-1, 2)
        keep = rng.random(len(pairs)) < 0.75
        pairs = pairs[keep]
        xs = qubits[rng.random(m) < 0.5]
        zs = qubits[rng.random(m) < 0.5]
        yield first_h, mid_s, last_h, pairs[:, 0], pairs[:, 1], xs, zs


def layers_to_circuit(layers) -> list[Gate]:
    circuit = []
    for first_h, mid_s, last_h, cs, ts, xs, zs in layers:
        circuit += [H(int(q)) for q in first_h]
        circuit += [S(int(q)) for q in mid_s]
        circuit += [H(int(q)) for q in last_h]
        circuit += [CNOT(int(c), int(t)) for c, t in zip(cs, ts)]
        circuit += [X(int(q)) for q in xs]
        circuit += [Z(int(q)) for q in zs]
    return circuit


def random_clifford_circuit(
    qubits: Sequence[int], depth: int, rng: np.random.Generator
) -> list[Gate]:
    return layers_to_circuit(random_layers(qubits, depth, rng))


def default_depth(n: int) -> int:
    return 2 * math.ceil(math.log2(max(n, 2))) + 4


def random_stabilizer_state(
    n: int, rng: np.random.Generator | int | None = None, depth: int | None = None
) -> StabilizerGroup:
    """Random Clifford conjugation of ``<Z_0, ..., Z_{n-1}>``.

    Uses ``depth`` layers of :func:`random_layers` (enough for near-maximal
    entanglement across balanced cuts by default). Not Haar-uniform over the
    Clifford group.
    """
    rng = np.random.default_rng(rng)
    depth = default_depth(n) if depth is None else depth
    x = np.zeros((n, n), np.uint8)
    z = np.eye(n, dtype=np.uint8)
    r = np.zeros(n, np.uint8)
    for first_h, mid_s, last_h, cs, ts, xs, zs in random_layers(range(n), depth, rng):
        _apply_layer(x, z, r, first_h, [], [], [], [], [])
        _apply_layer(x, z, r, [], mid_s, [], [], [], [])
        _apply_layer(x, z, r, last_h, [], cs, ts, xs, zs)
    return StabilizerGroup(x, z, (2 * r).astype(np.uint8))


def random_local_circuit(blocks, rng: np.random.Generator, depth: int | None = None) -> list[Gate]:
    """Random Clifford circuit whose gates never straddle two blocks."""
    circuit = []
    for b in blocks:
        d = default_depth(len(b)) if depth is None else depth
        circuit += random_clifford_circuit(b, d, rng)
    return circuit
