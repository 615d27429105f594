import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_bipartition, state_from_seed
from stabsplit import (
    GraphAdjacency,
    Partition,
    StabilizerGroup,
    canonicalize,
    check_canonical_form,
    compatibility,
    extract_epr,
    from_graph,
)
from stabsplit.canonical import fig1_pattern, target_group
from stabsplit.clifford import apply_circuit, circuit_support
from stabsplit.gf2 import BitMatrix, rank
from stabsplit.oracle import apply_circuit_dense, bell_product_state, statevector
from stabsplit.pauli import PauliOperator, parse
from stabsplit.stabilizer import DependentGeneratorsError, PartitionError

seeds = st.integers(0, 2**32 - 1)


def labels(ops):
    return [str(g) for g in ops]


def gram_rank(gens):
    m = np.array([[0 if g.commutes(h) else 1 for h in gens] for g in gens], dtype=np.uint8)
    return rank(BitMatrix.from_dense(m.reshape(len(gens), len(gens))))


class TestExamples:
    def test_epr(self, epr):
        cf = canonicalize(epr, Partition.parse("0|1", 2))
        assert cf.local_a == [] and cf.local_b == []
        assert [labels(p) for p in cf.pairs] == [["+XX", "+ZZ"]]

    def test_ghz(self, ghz3):
        cf = canonicalize(ghz3, Partition.parse("0,1|2", 3))
        assert labels(cf.local_a) == ["+ZZI"]
        assert cf.local_b == []
        assert [labels(p) for p in cf.pairs] == [["+XXX", "+IZZ"]]

    def test_product(self):
        s = StabilizerGroup.from_labels(["ZI", "IZ"])
        cf = canonicalize(s, Partition.parse("0|1", 2))
        assert labels(cf.local_a) == ["+ZI"]
        assert labels(cf.local_b) == ["+IZ"]
        assert cf.pairs == []

    def test_needs_two_blocks(self, ghz3):
        with pytest.raises(PartitionError):
            canonicalize(ghz3, Partition.singletons(3))

    def test_table_mentions_every_generator(self, ghz3):
        table = canonicalize(ghz3, Partition.parse("0,1|2", 3)).table()
        for label in ("+ZZI", "+XXX", "+IZZ"):
            assert label in table


class TestCompatibility:
    def test_abelian(self):
        ci = compatibility([parse(t) for t in ("ZZI", "IZZ", "XXX")])
        assert (ci.c, ci.p, ci.pairs) == (3, 0, [])
        assert len(ci.center) == 3

    def test_single_qubit(self):
        ci = compatibility([parse("X"), parse("Z")])
        assert (ci.c, ci.p) == (1, 1)

    def test_two_qubits(self):
        ci = compatibility([parse(t) for t in ("XI", "ZI", "IX", "IZ")])
        assert (ci.c, ci.p) == (2, 2)

    def test_dependent_input(self):
        with pytest.raises(DependentGeneratorsError):
            compatibility([parse("XI"), parse("IX"), parse("XX")])

    @given(st.integers(1, 5), st.integers(1, 8), seeds)
    def test_pairing_structure(self, n, m, seed):
        rng = np.random.default_rng(seed)
        gens = [PauliOperator(n, int(rng.integers(2**n)), int(rng.integers(2**n))) for _ in range(m)]
        sym = np.array([g.symplectic() for g in gens])
        r = rank(BitMatrix.from_dense(sym))
        if r < m:
            with pytest.raises(DependentGeneratorsError):
                compatibility(gens)
            return
        ci = compatibility(gens)
        assert ci.c + ci.p == m and ci.p <= ci.c
        assert 2 * ci.p == gram_rank(gens)
        out = ci.pairing
        assert len(out) == m
        assert rank(BitMatrix.from_dense(np.array([g.symplectic() for g in out]))) == m
        for i, g in enumerate(out):
            for j, h in enumerate(out):
                partner = i < 2 * ci.p and j < 2 * ci.p and i // 2 == j // 2 and i != j
                assert g.commutes(h) == (not partner)


@given(st.integers(2, 8), seeds)
def test_canonical_invariants(n, seed):
    s = state_from_seed(n, seed)
    bip = random_bipartition(n, np.random.default_rng(seed))
    cf = canonicalize(s, bip)
    assert check_canonical_form(cf, s) == []
    ops = cf.operators()
    a = list(bip.blocks[0])
    restricted = [g.restrict(a) for g in ops]
    pattern = np.array([[0 if g.commutes(h) else 1 for h in restricted] for g in restricted])
    assert np.array_equal(pattern, fig1_pattern(cf))


def test_check_reports_broken_forms(ghz3):
    cf = canonicalize(ghz3, Partition.parse("0,1|2", 3))
    cf.local_a = [parse("ZZZ")]
    assert any("acts on B" in msg for msg in check_canonical_form(cf, ghz3))
    cf = canonicalize(ghz3, Partition.parse("0,1|2", 3))
    cf.pairs = [(cf.pairs[0][1], cf.pairs[0][0]), ]
    cf.local_a = []
    assert check_canonical_form(cf, ghz3)


def _epr_overlap(s, bip):
    ex = extract_epr(canonicalize(s, bip))
    out = apply_circuit_dense(statevector(s), ex.circuit)
    ref = bell_product_state(s.n, ex.pair_sites, ex.product_sites)
    return ex, abs(out.overlap(ref))


class TestExtraction:
    def test_epr_is_already_a_pair(self, epr):
        ex, ov = _epr_overlap(epr, Partition.parse("0|1", 2))
        assert ex.pair_sites == [(0, 1)]
        assert ov == pytest.approx(1, abs=1e-9)

    def test_ghz(self, ghz3):
        ex, ov = _epr_overlap(ghz3, Partition.parse("0,1|2", 3))
        assert len(ex.pair_sites) == 1 and ex.pair_sites[0][1] == 2
        assert len(ex.product_sites) == 1 and ex.product_sites[0] in (0, 1)
        assert ov == pytest.approx(1, abs=1e-9)

    def test_ring5(self):
        ring = from_graph(GraphAdjacency.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]))
        bip = Partition.parse("0,1,2|3,4", 5)
        ex, ov = _epr_overlap(ring, bip)
        assert len(ex.pair_sites) == 2
        assert ov == pytest.approx(1, abs=1e-9)
        after = apply_circuit(ring, ex.circuit)
        for qa, qb in ex.pair_sites:
            for letter in "XZ":
                op = PauliOperator.single(5, qa, letter) @ PauliOperator.single(5, qb, letter)
                assert after.sign_of(op) == 1

    @given(st.integers(2, 8), seeds)
    def test_random(self, n, seed):
        s = state_from_seed(n, seed)
        bip = random_bipartition(n, np.random.default_rng(seed + 1))
        ex, ov = _epr_overlap(s, bip)
        a, b = set(bip.blocks[0]), set(bip.blocks[1])
        assert circuit_support(ex.circuit_a) <= a and circuit_support(ex.circuit_b) <= b
        assert {g.name for g in ex.circuit} <= {"H", "S", "CNOT"}
        assert apply_circuit(s, ex.circuit).same_group(target_group(n, ex.pair_sites, ex.product_sites))
        assert ov == pytest.approx(1, abs=1e-9)
