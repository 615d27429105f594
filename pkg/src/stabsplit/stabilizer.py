"""Stabilizer groups of pure states, partitions of their qubits, and graph states."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .gf2 import BitMatrix
from .pauli import PauliOperator, bits_to_int, int_to_bits
from .tableau import PauliRows


class StabilizerError(ValueError):
    pass


class NonCommutingError(StabilizerError):
    def __init__(self, i: int, j: int):
        super().__init__(f"generators {i} and {j} anticommute")
        self.i, self.j = i, j


class DependentGeneratorsError(StabilizerError):
    pass


class MinusIdentityError(StabilizerError):
    pass


class WrongGeneratorCountError(StabilizerError):
    pass


class NonHermitianError(StabilizerError):
    pass


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Ordered split of qubits ``0..n-1`` into disjoint, covering, nonempty blocks."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(q) for q in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise PartitionError("a partition needs at least one block")
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise PartitionError("empty block in partition")
            for q in b:
                if not 0 <= q < self.n:
                    raise PartitionError(f"qubit {q} out of range for n={self.n}")
                if q in seen:
                    raise PartitionError(f"qubit {q} appears in more than one block")
                seen.add(q)
        if len(seen) != self.n:
            missing = sorted(set(range(self.n)) - seen)
            raise PartitionError(f"qubits {missing} are not assigned to any block")

    @classmethod
    def parse(cls, text: str, n: int) -> Partition:
        """Parse ``"0,1|2"`` style syntax."""
        blocks = []
        for chunk in text.strip().split("|"):
            try:
                blocks.append([int(tok) for tok in chunk.split(",") if tok.strip()])
            except ValueError as exc:
                raise PartitionError(f"bad partition {text!r}: {exc}") from None
        return cls(n, tuple(map(tuple, blocks)))

    @classmethod
    def bipartition(cls, n: int, a: Iterable[int]) -> Partition:
        a = sorted(set(a))
        b = [q for q in range(n) if q not in set(a)]
        return cls(n, (tuple(a), tuple(b)))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(n, tuple((q,) for q in range(n)))

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def block_of(self, q: int) -> int:
        for i, b in enumerate(self.blocks):
            if q in b:
                return i
        raise IndexError(q)

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True, eq=False)
class GraphAdjacency:
    n: int
    gamma: BitMatrix

    def __post_init__(self):
        if self.gamma.shape != (self.n, self.n):
            raise ValueError(f"adjacency must be {self.n}x{self.n}")
        dense = self.gamma.to_dense()
        if np.any(np.diag(dense)):
            raise ValueError("adjacency matrix has self loops")
        if not np.array_equal(dense, dense.T):
            raise ValueError("adjacency matrix is not symmetric")

    @classmethod
    def from_dense(cls, gamma) -> GraphAdjacency:
        gamma = np.asarray(gamma, dtype=np.uint8)
        return cls(gamma.shape[0], BitMatrix.from_dense(gamma))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> GraphAdjacency:
        gamma = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self loop on vertex {u}")
            if gamma[u, v]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            gamma[u, v] = gamma[v, u] = 1
        return cls.from_dense(gamma)

    @classmethod
    def random(cls, n: int, p: float, rng: np.random.Generator) -> GraphAdjacency:
        upper = np.triu(rng.random((n, n)) < p, k=1).astype(np.uint8)
        return cls.from_dense(upper | upper.T)

    @property
    def edges(self) -> list[tuple[int, int]]:
        u, v = np.nonzero(np.triu(self.gamma.to_dense(), k=1))
        return list(zip(u.tolist(), v.tolist()))


@dataclass(frozen=True, eq=False)
class StabilizerGroup:
    """n independent, commuting, Hermitian generators with -I excluded.

    Stored as unpacked (n, n) bit arrays ``x``, ``z`` and phases in ``{0, 2}``.
    Build with :meth:`from_generators` (validating) or :meth:`from_arrays`.
    """

    x: np.ndarray
    z: np.ndarray
    phase: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for a in (self.x, self.z, self.phase):
            a.flags.writeable = False

    @property
    def n(self) -> int:
        return self.x.shape[1]

    @classmethod
    def from_generators(cls, generators: Sequence[PauliOperator]) -> StabilizerGroup:
        gens = list(generators)
        if not gens:
            raise StabilizerError("no generators given")
        n = gens[0].n
        if any(g.n != n for g in gens):
            raise StabilizerError("generators act on different numbers of qubits")
        for i, g in enumerate(gens):
            if not g.is_hermitian:
                raise NonHermitianError(f"generator {i} ({g}) has a non-real phase")
        x = np.array([int_to_bits(g.x, n) for g in gens], dtype=np.uint8).reshape(len(gens), n)
        z = np.array([int_to_bits(g.z, n) for g in gens], dtype=np.uint8).reshape(len(gens), n)
        phase = np.array([g.phase for g in gens], dtype=np.uint8)
        return cls.from_arrays(x, z, phase)

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> StabilizerGroup:
        from .pauli import parse

        return cls.from_generators([parse(s) for s in labels])

    @classmethod
    def from_arrays(cls, x, z, phase, validate: bool = True) -> StabilizerGroup:
        x = np.array(x, dtype=np.uint8)
        z = np.array(z, dtype=np.uint8)
        phase = np.array(phase, dtype=np.uint8) % 4
        if validate:
            _validate(x, z, phase)
        return cls(x, z, phase)

    @classmethod
    def zero_state(cls, n: int) -> StabilizerGroup:
        return cls(np.zeros((n, n), np.uint8), np.eye(n, dtype=np.uint8), np.zeros(n, np.uint8))

    @cached_property
    def generators(self) -> list[PauliOperator]:
        return [
            PauliOperator(self.n, bits_to_int(self.x[i]), bits_to_int(self.z[i]), int(self.phase[i]))
            for i in range(self.n)
        ]

    def labels(self) -> list[str]:
        return [g.to_label() for g in self.generators]

    def __repr__(self) -> str:
        return f"StabilizerGroup<{', '.join(self.labels())}>"

    def symplectic_matrix(self) -> BitMatrix:
        return BitMatrix.from_dense(np.hstack([self.x, self.z]))

    def rows(self) -> PauliRows:
        return PauliRows.from_arrays(self.x, self.z, self.phase)

    def _rref_rows(self) -> PauliRows:
        if "rref" not in self._cache:
            rows = self.rows()
            pivots = rows.eliminate(_xz_columns(rows))
            self._cache["rref"] = (rows, pivots)
        return self._cache["rref"]

    def sign_of(self, p: PauliOperator) -> int | None:
        """``+1`` if ``p`` (phase ignored) is in the group, ``-1`` if its negative is, else ``None``."""
        if p.n != self.n:
            raise ValueError(f"operator on {p.n} qubits, group on {self.n}")
        if not all(p.commutes(g) for g in self.generators):
            return None
        rows, pivots = self._rref_rows()
        target = PauliRows.from_arrays(
            p.x_bits()[None, :], p.z_bits()[None, :], [0], coeff=np.zeros((1, self.n), np.uint8)
        )
        work = PauliRows.concat([rows, target])
        work.eliminate(pivots)
        if work.data[-1, : 2 * work.w].any():
            return None
        # p @ g == i**t for the group element g consumed, so g == i**t p
        return 1 if work.phase[-1] == 0 else -1

    def contains(self, p: PauliOperator) -> bool:
        return p.is_hermitian and self.sign_of(p) == p.sign

    def same_group(self, other: StabilizerGroup) -> bool:
        return other.n == self.n and all(self.contains(g) for g in other.generators)

    def tensor(self, other: StabilizerGroup) -> StabilizerGroup:
        n, m = self.n, other.n
        x = np.zeros((n + m, n + m), np.uint8)
        z = np.zeros((n + m, n + m), np.uint8)
        x[:n, :n], z[:n, :n] = self.x, self.z
        x[n:, n:], z[n:, n:] = other.x, other.z
        return StabilizerGroup(x, z, np.concatenate([self.phase, other.phase]))


def _xz_columns(rows: PauliRows) -> list[int]:
    return [rows.x_col(q) for q in range(rows.n)] + [rows.z_col(q) for q in range(rows.n)]


def _validate(x: np.ndarray, z: np.ndarray, phase: np.ndarray) -> None:
    if x.ndim != 2 or x.shape != z.shape or phase.shape != (x.shape[0],):
        raise StabilizerError("inconsistent tableau shapes")
    m, n = x.shape
    if m == 0:
        raise StabilizerError("no generators given")
    bad = np.flatnonzero(phase % 2)
    if bad.size:
        raise NonHermitianError(f"generator {bad[0]} has a non-real phase")
    xf, zf = x.astype(np.float32), z.astype(np.float32)
    gram = (xf @ zf.T + zf @ xf.T).astype(np.int64) & 1
    i, j = np.nonzero(np.triu(gram))
    if i.size:
        raise NonCommutingError(int(i[0]), int(j[0]))
    rows = PauliRows.from_arrays(x, z, phase)
    pivots = rows.eliminate(_xz_columns(rows))
    if len(pivots) < m:
        # rows past the pivots are products equal to +I or -I
        if np.any(rows.phase[len(pivots):] == 2):
            raise MinusIdentityError("the generators multiply to -I")
        raise DependentGeneratorsError(f"generators have rank {len(pivots)} < {m}")
    if m != n:
        raise WrongGeneratorCountError(f"{m} generators given for {n} qubits; need exactly {n}")


def _check_block(block, n: int) -> list[int]:
    block = sorted(set(int(q) for q in block))
    for q in block:
        if not 0 <= q < n:
            raise IndexError(f"qubit index {q} out of range for {n} qubits")
    return block


def kernel_rows(s: StabilizerGroup, block) -> PauliRows:
    """Independent rows generating the elements of ``s`` that act as identity on ``block``."""
    block = _check_block(block, s.n)
    rows = s.rows()
    pivots = rows.eliminate(rows.qubit_columns(block))
    return rows.take(np.arange(len(pivots), s.n))


def kernel_subgroup(s: StabilizerGroup, block) -> list[PauliOperator]:
    """Generators of ``{g in S : g restricted to block is I}``, the kernel of the projection on ``block``."""
    return kernel_rows(s, block).to_paulis()


@dataclass
class LocalSubgroup:
    generators: list[PauliOperator]
    rank: int
    block_ranks: list[int]
    block_generators: list[list[PauliOperator]]


def local_subgroup(s: StabilizerGroup, partition: Partition) -> LocalSubgroup:
    """The product of the per-block kernels, reduced to an independent generating set."""
    if partition.n != s.n:
        raise PartitionError(f"partition is over {partition.n} qubits, group over {s.n}")
    parts = [kernel_rows(s, b) for b in partition.blocks]
    block_ranks = [len(p) for p in parts]
    nonempty = [p for p in parts if len(p)]
    if not nonempty:
        return LocalSubgroup([], 0, block_ranks, [[] for _ in parts])
    stacked = PauliRows.concat(nonempty)
    pivots = stacked.eliminate([stacked.coeff_col(i) for i in range(s.n)])
    independent = stacked.take(np.arange(len(pivots)))
    return LocalSubgroup(
        independent.to_paulis(), len(pivots), block_ranks, [p.to_paulis() for p in parts]
    )


def from_graph(g: GraphAdjacency) -> StabilizerGroup:
    """Graph state: generator ``j`` is X on ``j`` and Z on each neighbour of ``j``."""
    return StabilizerGroup(np.eye(g.n, dtype=np.uint8), g.gamma.to_dense(), np.zeros(g.n, np.uint8))


@dataclass(frozen=True)
class MeasurementResult:
    state: StabilizerGroup
    outcome: int
    deterministic: bool


def measure_pauli(
    s: StabilizerGroup,
    m: PauliOperator,
    forced_outcome: int | None = None,
    rng: np.random.Generator | int | None = None,
) -> MeasurementResult:
    """Measure the Hermitian Pauli ``m`` and return the post-measurement group.

    Random outcomes are drawn from ``rng`` (a Generator or seed) unless
    ``forced_outcome`` is given. Forcing an outcome of probability zero raises.
    """
    if m.n != s.n:
        raise ValueError(f"operator on {m.n} qubits, group on {s.n}")
    if not m.is_hermitian:
        raise NonHermitianError(f"cannot measure {m}: non-real phase")
    if m.is_identity:
        raise ValueError("cannot measure the identity")
    if forced_outcome not in (None, 1, -1):
        raise ValueError("forced_outcome must be +1, -1 or None")
    gens = list(s.generators)
    anti = [i for i, g in enumerate(gens) if not g.commutes(m)]
    if not anti:
        sign = s.sign_of(m)
        outcome = sign * m.sign
        if forced_outcome is not None and forced_outcome != outcome:
            raise ValueError(f"outcome {forced_outcome:+d} has probability zero")
        return MeasurementResult(s, outcome, True)
    if forced_outcome is None:
        rng = np.random.default_rng(rng)
        outcome = int(rng.choice([1, -1]))
    else:
        outcome = forced_outcome
    r = anti[0]
    for j in anti[1:]:
        gens[j] = gens[j] @ gens[r]
    gens[r] = m if outcome == 1 else -m
    return MeasurementResult(StabilizerGroup.from_generators(gens), outcome, False)
