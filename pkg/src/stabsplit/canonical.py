"""Canonical generators of a stabilizer group for a bipartition {A, B}.

The group splits into operators local to A, operators local to B, and ``p``
pairs ``(g_k, gbar_k)`` whose restrictions to A (equivalently to B)
anticommute with each other and commute with the restriction of every other
canonical generator. ``p`` is the entanglement entropy in ebits, and local
Cliffords turn the state into ``p`` Bell pairs times a product state.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import clifford
from .clifford import Gate
from .gf2 import BitMatrix, eliminate, rank
from .pauli import PauliOperator
from .stabilizer import (
    DependentGeneratorsError,
    Partition,
    PartitionError,
    StabilizerGroup,
    kernel_rows,
)
from .tableau import PauliRows


class InvariantViolation(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


@dataclass
class CompatibilityIndices:
    """``c``: largest rank of an abelian subgroup; ``p``: the remainder, ``|G| - c``.

    ``pairs`` anticommute only within each pair; ``center`` commutes with everything.
    """

    c: int
    p: int
    pairs: list[tuple[PauliOperator, PauliOperator]]
    center: list[PauliOperator]

    @property
    def pairing(self) -> list[PauliOperator]:
        return [op for pair in self.pairs for op in pair] + list(self.center)


def _pair_rows(rows: PauliRows, mask: np.ndarray | None = None):
    """Symplectic Gram-Schmidt over the rows, in place.

    Rows are visited in index order; each one is paired with the first later
    row it anticommutes with (under ``mask``), and every remaining row is then
    multiplied by members of the new pair to clear its anticommutation with
    both. Rows that find no partner are central. Returns ``(pairs, center)``
    as row indices.
    """
    m = len(rows)
    active = np.ones(m, dtype=bool)
    pairs, center = [], []
    for i in range(m):
        if not active[i]:
            continue
        active[i] = False
        sp_i = rows.symplectic_with(i, mask).astype(bool) & active
        hits = np.flatnonzero(sp_i)
        if hits.size == 0:
            center.append(i)
            continue
        j = int(hits[0])
        active[j] = False
        pairs.append((i, j))
        sp_j = rows.symplectic_with(j, mask).astype(bool) & active
        sp_i[j] = False
        # r -> r g_i^<r,g_j> g_j^<r,g_i>
        rows.mul_into(sp_j, i)
        rows.mul_into(sp_i, j)
    return pairs, center


def _expand_ascending(gens: list[PauliOperator], coeff: np.ndarray) -> PauliOperator:
    out = PauliOperator.identity(gens[0].n)
    for i in np.flatnonzero(coeff):
        out = out @ gens[i]
    return out


def compatibility(gens: list[PauliOperator]) -> CompatibilityIndices:
    """Compatibility and incompatibility indices of the group generated by ``gens``.

    Products are formed left to right in ascending generator index, so phases
    are exact even when the inputs do not commute.
    """
    gens = list(gens)
    if not gens:
        return CompatibilityIndices(0, 0, [], [])
    n = gens[0].n
    x = np.array([g.x_bits() for g in gens], dtype=np.uint8).reshape(len(gens), n)
    z = np.array([g.z_bits() for g in gens], dtype=np.uint8).reshape(len(gens), n)
    if rank(BitMatrix.from_dense(np.hstack([x, z]))) < len(gens):
        raise DependentGeneratorsError("compatibility() needs independent generators")
    rows = PauliRows.from_arrays(x, z, np.zeros(len(gens), np.uint8))
    pairs, center = _pair_rows(rows)
    coeff = rows.coeff_array()
    p = len(pairs)
    return CompatibilityIndices(
        c=len(gens) - p,
        p=p,
        pairs=[(_expand_ascending(gens, coeff[i]), _expand_ascending(gens, coeff[j])) for i, j in pairs],
        center=[_expand_ascending(gens, coeff[i]) for i in center],
    )


@dataclass
class CanonicalForm:
    bipartition: Partition
    local_a: list[PauliOperator]
    local_b: list[PauliOperator]
    pairs: list[tuple[PauliOperator, PauliOperator]]

    @property
    def n(self) -> int:
        return self.bipartition.n

    @property
    def a(self) -> tuple[int, ...]:
        return self.bipartition.blocks[0]

    @property
    def b(self) -> tuple[int, ...]:
        return self.bipartition.blocks[1]

    @property
    def p(self) -> int:
        return len(self.pairs)

    def operators(self) -> list[PauliOperator]:
        """Canonical generators: A-local, B-local, then ``g_1, gbar_1, g_2, ...``."""
        return self.local_a + self.local_b + [op for pair in self.pairs for op in pair]

    def group(self) -> StabilizerGroup:
        return StabilizerGroup.from_generators(self.operators())

    def table(self) -> str:
        lines = [f"S_A  (|S_A| = {len(self.local_a)}, local to {_fmt_block(self.a)})"]
        lines += [f"  {g}" for g in self.local_a] or ["  (trivial)"]
        lines.append(f"S_B  (|S_B| = {len(self.local_b)}, local to {_fmt_block(self.b)})")
        lines += [f"  {g}" for g in self.local_b] or ["  (trivial)"]
        lines.append(f"S_AB (p = {self.p} anticommuting pairs)")
        lines += [f"  {k}: {g}  {gb}" for k, (g, gb) in enumerate(self.pairs)] or ["  (none)"]
        return "\n".join(lines)


def _fmt_block(block) -> str:
    return "{" + ",".join(map(str, block)) + "}"


def _sort_key_bytes(x: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Per-row bytes whose lexicographic order is that of the ``(x|z)`` bit vectors."""
    return np.packbits(np.hstack([x, z]), axis=1, bitorder="big")


def _require_bipartition(s: StabilizerGroup, bipartition: Partition) -> tuple[list[int], list[int]]:
    if bipartition.n != s.n:
        raise PartitionError(f"partition is over {bipartition.n} qubits, group over {s.n}")
    if bipartition.k != 2:
        raise PartitionError(f"expected a bipartition, got {bipartition.k} blocks")
    return list(bipartition.blocks[0]), list(bipartition.blocks[1])


def canonicalize(s: StabilizerGroup, bipartition: Partition) -> CanonicalForm:
    """Bring the generators of ``s`` into canonical form for ``bipartition = A|B``.

    Pair members are oriented so that ``g_k`` has the lexicographically larger
    ``(x|z)`` restriction to A, and pairs are ordered by the lowest qubit in
    the A-support of ``g_k``.
    """
    a, b = _require_bipartition(s, bipartition)
    n = s.n
    loc_a = kernel_rows(s, b)
    loc_b = kernel_rows(s, a)

    # complete S_A . S_B to a basis using original generators outside the span
    if len(loc_a) + len(loc_b):
        local = PauliRows.concat([loc_a, loc_b])
        coeff = np.ascontiguousarray(local.coeffs).copy()
        pivots = set(eliminate(coeff, range(n)))
    else:
        pivots = set()
    rest = [i for i in range(n) if i not in pivots]
    ab = s.rows().take(rest)

    side = a if len(a) <= len(b) else b
    pair_idx, center = _pair_rows(ab, ab.block_word_mask(side))
    if center:
        raise InvariantViolation(
            f"A-restricted S_AB has a center of rank {len(center)}; it must be trivial"
        )

    xa = ab.x_array()[:, a]
    za = ab.z_array()[:, a]
    keys = [bytes(k) for k in _sort_key_bytes(xa, za)]
    oriented = []
    for i, j in pair_idx:
        if keys[j] > keys[i]:
            i, j = j, i
        support = np.flatnonzero(xa[i] | za[i])
        oriented.append((int(support[0]) if support.size else -1, keys[i], keys[j], i, j))
    oriented.sort()

    ops = ab.to_paulis()
    return CanonicalForm(
        bipartition=bipartition,
        local_a=loc_a.to_paulis(),
        local_b=loc_b.to_paulis(),
        pairs=[(ops[i], ops[j]) for *_, i, j in oriented],
    )


def _restricted_arrays(ops: list[PauliOperator], block, n: int):
    x = np.array([op.x_bits() for op in ops], dtype=np.uint8).reshape(len(ops), n)[:, list(block)]
    z = np.array([op.z_bits() for op in ops], dtype=np.uint8).reshape(len(ops), n)[:, list(block)]
    return x, z


def _anticommutation(x: np.ndarray, z: np.ndarray) -> np.ndarray:
    xf, zf = x.astype(np.float32), z.astype(np.float32)
    return ((xf @ zf.T + zf @ xf.T).astype(np.int64) & 1).astype(np.uint8)


def fig1_pattern(cf: CanonicalForm) -> np.ndarray:
    """Expected anticommutation matrix of the restricted canonical generators."""
    n, p = cf.n, cf.p
    off = len(cf.local_a) + len(cf.local_b)
    pattern = np.zeros((n, n), dtype=np.uint8)
    for k in range(p):
        i, j = off + 2 * k, off + 2 * k + 1
        pattern[i, j] = pattern[j, i] = 1
    return pattern


def check_canonical_form(cf: CanonicalForm, s: StabilizerGroup | None = None) -> list[str]:
    """Every violated canonical-form invariant, as messages (empty when all hold)."""
    problems = []
    n, a, b = cf.n, cf.a, cf.b
    ops = cf.operators()
    if len(ops) != n:
        problems.append(f"|S_A| + |S_B| + 2p = {len(ops)} != n = {n}")
        return problems
    if any(not g.restrict(b).is_identity for g in cf.local_a):
        problems.append("an S_A generator acts on B")
    if any(not g.restrict(a).is_identity for g in cf.local_b):
        problems.append("an S_B generator acts on A")
    x_all, z_all = _restricted_arrays(ops, range(n), n)
    if _anticommutation(x_all, z_all).any():
        problems.append("canonical generators do not all commute")
    elif rank(BitMatrix.from_dense(np.hstack([x_all, z_all]))) < n:
        problems.append("canonical generators are dependent")
    elif s is not None and not s.same_group(cf.group()):
        problems.append("canonical generators do not generate the input group")
    expected = fig1_pattern(cf)
    for name, block in (("A", a), ("B", b)):
        xr, zr = _restricted_arrays(ops, block, n)
        if not np.array_equal(_anticommutation(xr, zr), expected):
            problems.append(f"{name}-restricted commutation pattern differs from the pair structure")
    p = cf.p
    if p != len(a) - len(cf.local_a) or p != len(b) - len(cf.local_b):
        problems.append(
            f"p = {p} but n_A - |S_A| = {len(a) - len(cf.local_a)}, n_B - |S_B| = {len(b) - len(cf.local_b)}"
        )
    xa, za = _restricted_arrays(ops, a, n)
    proj_rank = rank(BitMatrix.from_dense(np.hstack([xa, za])))
    if proj_rank != n - len(cf.local_b) or p != proj_rank - len(a):
        problems.append(f"rank of A-restrictions is {proj_rank}, expected {n - len(cf.local_b)}")
    return problems


@dataclass
class EPRExtraction:
    circuit_a: list[Gate]
    circuit_b: list[Gate]
    pair_sites: list[tuple[int, int]]
    product_sites: list[int] = field(default_factory=list)

    @property
    def circuit(self) -> list[Gate]:
        return self.circuit_a + self.circuit_b


class _SideReducer:
    """Maps Pauli rows on one side to single-qubit X/Z using local Cliffords.

    Works on unpacked rows over the side's qubits; gates are recorded with
    local column indices and translated to global qubits by the caller.
    """

    def __init__(self, x: np.ndarray, z: np.ndarray):
        self.x, self.z = x.copy(), z.copy()
        self.r = np.zeros(x.shape[0], np.uint8)
        self.gates: list[Gate] = []
        self.free = list(range(x.shape[1]))

    def apply(self, gate: Gate) -> None:
        clifford.apply_gate(self.x, self.z, self.r, gate)
        self.gates.append(gate)

    def to_x(self, row: int) -> int:
        """Reduce ``row`` to X on one free qubit; returns that qubit."""
        x, z = self.x[row], self.z[row]
        if not any(x[j] for j in self.free):
            q = next(j for j in self.free if z[j])
            self.apply(clifford.H(q))
        q = next(j for j in self.free if x[j])
        for j in self.free:
            if j != q and x[j]:
                self.apply(clifford.CNOT(q, j))
        for j in self.free:
            if j != q and z[j]:
                self.apply(clifford.H(j))
                self.apply(clifford.CNOT(q, j))
        if z[q]:
            self.apply(clifford.S(q))
        return q

    def to_z(self, row: int) -> int:
        """Reduce ``row`` to Z on one free qubit; returns that qubit."""
        x, z = self.x[row], self.z[row]
        if any(x[j] for j in self.free):
            q = self.to_x(row)
            self.apply(clifford.H(q))
            return q
        q = next(j for j in self.free if z[j])
        for j in self.free:
            if j != q and z[j]:
                self.apply(clifford.CNOT(j, q))
        return q

    def partner_to_z(self, row: int, q: int) -> None:
        """Reduce ``row`` to Z on ``q`` while keeping X on ``q`` fixed."""
        x, z = self.x[row], self.z[row]
        for j in self.free:
            if j == q:
                continue
            if x[j] and z[j]:
                self.apply(clifford.S(j))
            if x[j]:
                self.apply(clifford.H(j))
        for j in self.free:
            if j != q and z[j]:
                self.apply(clifford.CNOT(j, q))
        if x[q]:
            for g in (clifford.H(q), clifford.S(q), clifford.H(q)):
                self.apply(g)

    def run(self, n_pairs: int) -> tuple[list[int], list[int]]:
        sites = []
        for k in range(n_pairs):
            q = self.to_x(2 * k)
            self.partner_to_z(2 * k + 1, q)
            self.free.remove(q)
            sites.append(q)
        local_sites = []
        for row in range(2 * n_pairs, self.x.shape[0]):
            q = self.to_z(row)
            self.free.remove(q)
            local_sites.append(q)
            # later local rows commute with Z_q; clear their Z_q by row products
            hit = np.flatnonzero(self.z[row + 1 :, q]) + row + 1
            self.x[hit] ^= self.x[row]
            self.z[hit] ^= self.z[row]
        return sites, local_sites


def _pauli_z(q: int) -> list[Gate]:
    return [clifford.S(q), clifford.S(q)]


def _pauli_x(q: int) -> list[Gate]:
    return [clifford.H(q), clifford.S(q), clifford.S(q), clifford.H(q)]


def extract_epr(cf: CanonicalForm) -> EPRExtraction:
    """Local Clifford circuits turning the state into ``p`` Bell pairs and ``|0>`` elsewhere.

    After applying ``circuit_a`` (supported on A) and ``circuit_b`` (supported
    on B), qubits ``(a_k, b_k)`` of each pair site hold ``(|00> + |11>)/sqrt 2``
    and every other qubit holds ``|0>``.
    """
    n, a, b = cf.n, list(cf.a), list(cf.b)
    pair_ops = [op for pair in cf.pairs for op in pair]
    circuits, sites, rest = [], [], []
    for block, local in ((a, cf.local_a), (b, cf.local_b)):
        x, z = _restricted_arrays(pair_ops + local, block, n)
        red = _SideReducer(x, z)
        pair_local, rest_local = red.run(cf.p)
        circuits.append([Gate(g.name, tuple(block[q] for q in g.qubits)) for g in red.gates])
        sites.append([block[q] for q in pair_local])
        rest.append([block[q] for q in rest_local])
    circ_a, circ_b = circuits
    pair_sites = list(zip(sites[0], sites[1]))
    product_sites = sorted(rest[0] + rest[1])

    mapped = clifford.apply_circuit(cf.group(), circ_a + circ_b)
    # sign fixes: Z = S.S flips XX, X = H.S.S.H flips ZZ and a lone Z
    fixes_a, fixes_b = [], []
    for qa, qb in pair_sites:
        xx = PauliOperator(n, (1 << qa) | (1 << qb), 0)
        zz = PauliOperator(n, 0, (1 << qa) | (1 << qb))
        if mapped.sign_of(xx) == -1:
            fixes_a += _pauli_z(qa)
        if mapped.sign_of(zz) == -1:
            fixes_a += _pauli_x(qa)
    for q in product_sites:
        if mapped.sign_of(PauliOperator.single(n, q, "Z")) == -1:
            (fixes_a if q in set(a) else fixes_b).extend(_pauli_x(q))
    out = EPRExtraction(circ_a + fixes_a, circ_b + fixes_b, pair_sites, product_sites)

    final = clifford.apply_circuit(cf.group(), out.circuit)
    if not final.same_group(target_group(n, pair_sites, product_sites)):
        raise InvariantViolation("EPR extraction did not reach the Bell-pair form")
    return out


def target_group(n: int, pair_sites, product_sites) -> StabilizerGroup:
    gens = []
    for qa, qb in pair_sites:
        mask = (1 << qa) | (1 << qb)
        gens += [PauliOperator(n, mask, 0), PauliOperator(n, 0, mask)]
    gens += [PauliOperator.single(n, q, "Z") for q in product_sites]
    return StabilizerGroup.from_generators(gens)
