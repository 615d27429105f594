"""Packed rows of Pauli operators, with exact phases and coefficient tracking.

Each row is laid out as ``[x | z | coeff]`` in 64-bit words, the three
sections word-aligned. ``coeff`` records which original generators were
multiplied together to produce the row. Phases are kept in the ``X^x Z^z``
ordering (``i**t X^x Z^z``), where multiplying rows only costs a sign
``(-1)^(z1 . x2)``.

Row products are taken as ``target <- target @ pivot``. The rows used here
always commute as full operators, so the order never changes the phase.
"""
from __future__ import annotations

import numpy as np

from .gf2 import WORD, column_bits, n_words, pack_rows, row_parity, unpack_rows
from .pauli import PauliOperator, bits_to_int


class PauliRows:
    def __init__(self, n: int, n_coeff: int, data: np.ndarray, phase: np.ndarray):
        self.n = n
        self.n_coeff = n_coeff
        self.w = n_words(n)
        self.data = data
        self.phase = phase

    @classmethod
    def from_arrays(cls, x, z, s, coeff=None) -> PauliRows:
        """Build from unpacked (m, n) bit arrays and phases in the ``i**s * Y-letter`` form."""
        x = np.asarray(x, dtype=np.uint8)
        z = np.asarray(z, dtype=np.uint8)
        m, n = x.shape
        if coeff is None:
            coeff = np.eye(m, dtype=np.uint8)
        coeff = np.asarray(coeff, dtype=np.uint8)
        data = np.hstack(
            [pack_rows(x, n), pack_rows(z, n), pack_rows(coeff, coeff.shape[1])]
        )
        t = (np.asarray(s, dtype=np.int64) + (x & z).sum(axis=1)) % 4
        return cls(n, coeff.shape[1], data, t.astype(np.int8))

    def __len__(self) -> int:
        return self.data.shape[0]

    def copy(self) -> PauliRows:
        return PauliRows(self.n, self.n_coeff, self.data.copy(), self.phase.copy())

    def take(self, idx) -> PauliRows:
        idx = np.asarray(idx, dtype=np.int64)
        return PauliRows(self.n, self.n_coeff, self.data[idx].copy(), self.phase[idx].copy())

    @staticmethod
    def concat(parts) -> PauliRows:
        parts = list(parts)
        first = parts[0]
        return PauliRows(
            first.n,
            first.n_coeff,
            np.vstack([p.data for p in parts]),
            np.concatenate([p.phase for p in parts]),
        )

    # column indices into the packed layout
    def x_col(self, q: int) -> int:
        return q

    def z_col(self, q: int) -> int:
        return self.w * WORD + q

    def coeff_col(self, i: int) -> int:
        return 2 * self.w * WORD + i

    def qubit_columns(self, block) -> list[int]:
        cols = []
        for q in sorted(block):
            cols += [self.x_col(q), self.z_col(q)]
        return cols

    def block_word_mask(self, block) -> np.ndarray:
        """Word mask selecting ``block`` qubits within one n-bit section."""
        bits = np.zeros((1, self.n), dtype=np.uint8)
        bits[0, list(block)] = 1
        return pack_rows(bits, self.n)[0]

    @property
    def xs(self) -> np.ndarray:
        return self.data[:, : self.w]

    @property
    def zs(self) -> np.ndarray:
        return self.data[:, self.w : 2 * self.w]

    @property
    def coeffs(self) -> np.ndarray:
        return self.data[:, 2 * self.w :]

    def mul_into(self, targets: np.ndarray, p: int) -> None:
        """Replace every row selected by ``targets`` (bool mask or index array) by ``row @ row[p]``."""
        idx = np.flatnonzero(targets) if targets.dtype == bool else targets
        if idx.size == 0:
            return
        w = self.w
        pivot = self.data[p]
        sel = self.data[idx]
        sign = np.bitwise_count(sel[:, w : 2 * w] & pivot[:w]).sum(axis=1, dtype=np.int64) & 1
        self.phase[idx] = (self.phase[idx] + self.phase[p] + 2 * sign.astype(np.int8)) & 3
        sel ^= pivot
        self.data[idx] = sel

    def swap(self, i: int, j: int) -> None:
        if i != j:
            self.data[[i, j]] = self.data[[j, i]]
            self.phase[[i, j]] = self.phase[[j, i]]

    def eliminate(self, columns, start_row: int = 0) -> list[int]:
        """Gauss-Jordan elimination over ``columns``, tracking phases.

        Same pivoting rule as :func:`stabsplit.gf2.eliminate`. Returns the
        pivot columns; pivot rows occupy ``start_row .. start_row + len - 1``.
        """
        nrows = len(self)
        r = start_row
        pivots = []
        for c in columns:
            if r >= nrows:
                break
            w, b = divmod(c, WORD)
            bit = np.uint64(1) << np.uint64(b)
            hits = np.flatnonzero(self.data[r:, w] & bit)
            if hits.size == 0:
                continue
            self.swap(r, r + int(hits[0]))
            rows = np.flatnonzero(self.data[:, w] & bit)
            self.mul_into(rows[rows != r], r)
            pivots.append(c)
            r += 1
        return pivots

    def symplectic_with(self, p: int, mask: np.ndarray | None = None) -> np.ndarray:
        """Symplectic product of every row with row ``p``, optionally restricted by a qubit word mask."""
        w = self.w
        xp, zp = self.data[p, :w], self.data[p, w : 2 * w]
        if mask is not None:
            xp, zp = xp & mask, zp & mask
        return row_parity(self.xs & zp) ^ row_parity(self.zs & xp)

    def column(self, c: int) -> np.ndarray:
        return column_bits(self.data, c)

    def x_array(self) -> np.ndarray:
        return unpack_rows(self.xs, self.n)

    def z_array(self) -> np.ndarray:
        return unpack_rows(self.zs, self.n)

    def coeff_array(self) -> np.ndarray:
        return unpack_rows(np.ascontiguousarray(self.coeffs), self.n_coeff)

    def s_phases(self) -> np.ndarray:
        """Phases converted back to the ``i**s * Y-letter`` form."""
        w = self.w
        xz = np.bitwise_count(self.data[:, :w] & self.data[:, w : 2 * w]).sum(
            axis=1, dtype=np.int64
        )
        return ((self.phase.astype(np.int64) - xz) % 4).astype(np.uint8)

    def nonzero_on(self, block) -> np.ndarray:
        """Rows acting non-trivially on ``block``."""
        m = self.block_word_mask(block)
        return ((self.xs | self.zs) & m).any(axis=1)

    def to_paulis(self) -> list[PauliOperator]:
        x, z, s = self.x_array(), self.z_array(), self.s_phases()
        return [
            PauliOperator(self.n, bits_to_int(x[i]), bits_to_int(z[i]), int(s[i]))
            for i in range(len(self))
        ]
