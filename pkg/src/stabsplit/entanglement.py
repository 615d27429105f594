"""Bipartite entanglement entropy and the multipartite measure ``e = n - |S_loc|``."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .canonical import CanonicalForm, InvariantViolation, _require_bipartition, canonicalize
from .gf2 import BitMatrix, rank
from .stabilizer import (
    GraphAdjacency,
    Partition,
    PartitionError,
    StabilizerGroup,
    kernel_rows,
    local_subgroup,
)

MAX_PARTITION_QUBITS = 10


class Method(str, enum.Enum):
    CANONICAL_PAIRS = "canonical_pairs"
    KERNEL_RANK = "kernel_rank"
    GRAPH_RANK = "graph_rank"
    BRUTE_FORCE = "brute_force"


@dataclass
class EntanglementReport:
    n: int
    partition: Partition
    value: int
    method: Method
    canonical: CanonicalForm | None = None
    block_generators: list[list] | None = None
    local_generators: list | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.value <= self.n:
            raise InvariantViolation(f"measure {self.value} outside [0, {self.n}]")

    def witnesses(self) -> dict | None:
        if self.canonical is not None:
            cf = self.canonical
            return {
                "S_A": [str(g) for g in cf.local_a],
                "S_B": [str(g) for g in cf.local_b],
                "pairs": [[str(g), str(gb)] for g, gb in cf.pairs],
            }
        if self.block_generators is not None:
            return {
                "blocks": [[str(g) for g in gens] for gens in self.block_generators],
                "S_loc": [str(g) for g in self.local_generators or []],
            }
        return None


def entropy_bipartite(
    s: StabilizerGroup, bipartition: Partition, witnesses: bool = True
) -> EntanglementReport:
    """Entanglement entropy (in ebits) of ``s`` across ``bipartition``.

    With ``witnesses`` the canonical form is built and ``|S_AB| / 2``,
    ``n_A - |S_A|`` and ``n_B - |S_B|`` are checked against each other.
    Without, only ``S_A`` is computed and ``E = n_A - |S_A|``.
    """
    a, b = _require_bipartition(s, bipartition)
    if not witnesses:
        size_a = len(kernel_rows(s, b))
        return EntanglementReport(s.n, bipartition, len(a) - size_a, Method.KERNEL_RANK)
    cf = canonicalize(s, bipartition)
    s_ab = 2 * cf.p
    from_a = len(a) - len(cf.local_a)
    from_b = len(b) - len(cf.local_b)
    if not s_ab // 2 == from_a == from_b:
        raise InvariantViolation(
            f"|S_AB|/2 = {s_ab // 2}, n_A - |S_A| = {from_a}, n_B - |S_B| = {from_b} disagree"
        )
    return EntanglementReport(s.n, bipartition, cf.p, Method.CANONICAL_PAIRS, canonical=cf)


def e_multi(s: StabilizerGroup, partition: Partition) -> EntanglementReport:
    """``n - |S_loc|`` where ``S_loc`` is the product of the per-block kernels ``S_j``.

    ``S_j`` holds the group elements acting as identity on block ``j``.
    """
    loc = local_subgroup(s, partition)
    return EntanglementReport(
        s.n,
        partition,
        s.n - loc.rank,
        Method.KERNEL_RANK,
        block_generators=loc.block_generators,
        local_generators=loc.generators,
        extra={"block_ranks": loc.block_ranks, "local_rank": loc.rank},
    )


def graph_bipartite_rank(g: GraphAdjacency, bipartition: Partition) -> int:
    """GF(2) rank of the adjacency block with rows in B and columns in A."""
    if bipartition.n != g.n or bipartition.k != 2:
        raise PartitionError("need a bipartition over the graph's vertices")
    a, b = bipartition.blocks
    return rank(BitMatrix.from_dense(g.gamma.to_dense()[np.ix_(b, a)]))


def is_finer(a: Partition, b: Partition) -> bool:
    """True when every block of ``a`` sits inside some block of ``b``."""
    if a.n != b.n:
        raise PartitionError(f"partitions over {a.n} and {b.n} qubits")
    owner = {q: i for i, blk in enumerate(b.blocks) for q in blk}
    return all(len({owner[q] for q in blk}) == 1 for blk in a.blocks)


def all_partitions(
    n: int, max_blocks: int | None = None, limit: int = MAX_PARTITION_QUBITS
) -> Iterator[Partition]:
    """Set partitions of ``0..n-1`` with at most ``max_blocks`` blocks.

    Enumerated as restricted-growth strings in lexicographic order.
    """
    if n > limit:
        raise ValueError(f"n = {n} exceeds the partition enumeration limit {limit}")
    if n <= 0:
        return
    max_blocks = n if max_blocks is None else max_blocks
    labels = [0] * n

    def rec(i: int, used: int):
        if i == n:
            blocks = [[] for _ in range(used)]
            for q, lab in enumerate(labels):
                blocks[lab].append(q)
            yield Partition(n, tuple(map(tuple, blocks)))
            return
        for lab in range(min(used + 1, max_blocks)):
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    yield from rec(1, 1) if max_blocks >= 1 else iter(())
