"""Linear algebra over GF(2) on bit-packed rows.

Rows are packed little-bit-endian into 64-bit words: column ``c`` lives in
word ``c // 64`` at bit ``c % 64``. Padding bits past ``cols`` are always
zero, so row XOR is a plain word-wise XOR.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WORD = 64


def n_words(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def pack_rows(dense: np.ndarray, cols: int | None = None) -> np.ndarray:
    """Pack a (rows, cols) 0/1 array into a (rows, words) uint64 array."""
    dense = np.asarray(dense, dtype=np.uint8)
    if dense.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {dense.shape}")
    rows, c = dense.shape
    cols = c if cols is None else cols
    words = n_words(cols)
    out = np.zeros((rows, words * 8), dtype=np.uint8)
    if rows and c:
        packed = np.packbits(dense & 1, axis=1, bitorder="little")
        out[:, : packed.shape[1]] = packed
    return out.view("<u8").reshape(rows, words).astype(np.uint64, copy=False)


def unpack_rows(data: np.ndarray, cols: int) -> np.ndarray:
    rows = data.shape[0]
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(data, dtype="<u8").view(np.uint8).reshape(rows, -1)
    return np.unpackbits(as_bytes, axis=1, count=cols, bitorder="little")


def column_bits(data: np.ndarray, c: int) -> np.ndarray:
    """Bit ``c`` of every row, as a bool array."""
    w, b = divmod(c, WORD)
    return ((data[:, w] >> np.uint64(b)) & np.uint64(1)).astype(bool)


def row_parity(data: np.ndarray) -> np.ndarray:
    """Parity of the popcount of each packed row."""
    if data.shape[1] == 0:
        return np.zeros(data.shape[0], dtype=np.uint8)
    return (np.bitwise_count(data).sum(axis=1, dtype=np.int64) & 1).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """Dense GF(2) matrix with packed rows."""

    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self):
        if self.data.shape != (self.rows, n_words(self.cols)):
            raise ValueError(
                f"packed data shape {self.data.shape} does not match "
                f"{self.rows}x{self.cols}"
            )
        self.data.flags.writeable = False

    @classmethod
    def from_dense(cls, dense) -> BitMatrix:
        arr = np.asarray(dense, dtype=np.uint8)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {arr.shape}")
        if np.any(arr > 1):
            raise ValueError("entries must be 0 or 1")
        return cls(arr.shape[0], arr.shape[1], pack_rows(arr))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, np.zeros((rows, n_words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.data, self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> np.ndarray:
        return unpack_rows(self.data[i : i + 1], self.cols)[0]

    def __len__(self) -> int:
        return self.rows

    def __iter__(self):
        yield from self.to_dense()

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        body = "\n".join("".join(map(str, r)) for r in self.to_dense())
        return f"BitMatrix({self.rows}x{self.cols})\n{body}"

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        prod = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)
        return BitMatrix.from_dense((prod & 1).astype(np.uint8))

    def submatrix(self, rows, cols) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense()[np.ix_(list(rows), list(cols))])


def eliminate(data: np.ndarray, pivot_columns, start_row: int = 0) -> list[int]:
    """In-place Gauss-Jordan elimination restricted to ``pivot_columns``.

    Columns are scanned in the given order; for each one the first row at or
    below the current pivot row with that bit set becomes the pivot and is
    XORed into every other row that has the bit (above and below). Rows before
    ``start_row`` are reduced but never chosen as pivots. Returns the pivot
    columns found; pivot rows end up at ``start_row .. start_row + len - 1``.
    """
    nrows = data.shape[0]
    r = start_row
    pivots = []
    for c in pivot_columns:
        if r >= nrows:
            break
        w, b = divmod(c, WORD)
        bit = np.uint64(1) << np.uint64(b)
        hits = np.flatnonzero(data[r:, w] & bit)
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            data[[r, p]] = data[[p, r]]
        mask = (data[:, w] & bit).astype(bool)
        mask[r] = False
        if mask.any():
            data[mask] ^= data[r]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: BitMatrix) -> int:
    """GF(2) rank of ``m``."""
    if m.rows == 0 or m.cols == 0:
        return 0
    work = m.data.copy()
    return len(eliminate(work, range(m.cols)))


def rref_with_transform(m: BitMatrix) -> tuple[BitMatrix, BitMatrix, list[int]]:
    """Reduced row echelon form of ``m`` with the row transform that produced it.

    Returns ``(reduced, transform, pivots)`` with ``transform @ m == reduced``
    and ``transform`` invertible.
    """
    rows, cols = m.shape
    aug = np.hstack([m.to_dense(), np.eye(rows, dtype=np.uint8)])
    data = pack_rows(aug)
    pivots = eliminate(data, range(cols))
    dense = unpack_rows(data, cols + rows)
    return (
        BitMatrix.from_dense(dense[:, :cols]),
        BitMatrix.from_dense(dense[:, cols:]),
        pivots,
    )


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the right null space ``{v : m v = 0}``, one vector per row."""
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return BitMatrix.identity(cols)
    work = m.data.copy()
    pivots = eliminate(work, range(cols))
    reduced = unpack_rows(work[: len(pivots)], cols)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        basis[i, pivots] = reduced[:, f]
    return BitMatrix.from_dense(basis.reshape(len(free), cols))


def solve_left(m: BitMatrix, v) -> np.ndarray | None:
    """Find ``x`` with ``x @ m == v`` over GF(2), or ``None`` if ``v`` is not in the row space."""
    v = np.asarray(v, dtype=np.uint8)
    if v.shape != (m.cols,):
        raise ValueError(f"vector of length {v.shape} does not match {m.cols} columns")
    reduced, transform, pivots = rref_with_transform(m)
    red = reduced.to_dense()
    coeff = np.zeros(m.rows, dtype=np.uint8)
    residual = v.copy()
    for i, c in enumerate(pivots):
        if residual[c]:
            residual ^= red[i]
            coeff[i] = 1
    if residual.any():
        return None
    return ((coeff.astype(np.int64) @ transform.to_dense().astype(np.int64)) & 1).astype(np.uint8)
