"""n-qubit Pauli operators in binary symplectic form.

An operator is ``i**phase * P_0 (x) P_1 (x) ... (x) P_{n-1}`` where qubit ``j``
carries ``P_j = I, X, Z, Y`` for ``(x_j, z_j) = (0,0), (1,0), (0,1), (1,1)``.
The bit pattern ``x_j = z_j = 1`` stands for the matrix Y itself, so Hermitian
operators are exactly those with ``phase in {0, 2}``. Bit ``j`` of the integer
masks ``x`` and ``z`` is qubit ``j``; in text, qubit 0 is the leftmost letter.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}
_SIGNS = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PAULI_RE = re.compile(r"^\s*([+-]?)(i?)([IXYZ]*)\s*$")

_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class PauliParseError(ValueError):
    pass


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        for name in ("n", "x", "z", "phase"):
            object.__setattr__(self, name, int(getattr(self, name)))
        limit = 1 << self.n
        if self.n < 0 or not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"x/z masks do not fit in {self.n} qubits")
        if not 0 <= self.phase < 4:
            object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n)

    @classmethod
    def from_bits(cls, x, z, phase: int = 0) -> PauliOperator:
        x = np.asarray(x, dtype=np.uint8)
        z = np.asarray(z, dtype=np.uint8)
        if x.shape != z.shape or x.ndim != 1:
            raise ValueError("x and z must be 1-d arrays of equal length")
        return cls(x.size, bits_to_int(x), bits_to_int(z), phase)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str, phase: int = 0) -> PauliOperator:
        x, z = _BITS[letter]
        return cls(n, x << qubit, z << qubit, phase)

    def x_bits(self) -> np.ndarray:
        return int_to_bits(self.x, self.n)

    def z_bits(self) -> np.ndarray:
        return int_to_bits(self.z, self.n)

    def symplectic(self) -> np.ndarray:
        """The 2n-bit vector ``(x | z)``."""
        return np.concatenate([self.x_bits(), self.z_bits()])

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise ValueError(f"{self} has a non-real phase")
        return 1 if self.phase == 0 else -1

    @property
    def support(self) -> list[int]:
        mask = self.x | self.z
        return [j for j in range(self.n) if mask >> j & 1]

    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def letter(self, qubit: int) -> str:
        return _LETTERS[(self.x >> qubit & 1, self.z >> qubit & 1)]

    def _check(self, other: PauliOperator):
        if self.n != other.n:
            raise ValueError(f"qubit count mismatch: {self.n} vs {other.n}")

    def multiply(self, other: PauliOperator) -> PauliOperator:
        """Exact operator product ``self @ other``."""
        self._check(other)
        # move to the X^x Z^z ordering, where the product only picks up (-1)^(z1.x2)
        t = (
            self.phase
            + _popcount(self.x & self.z)
            + other.phase
            + _popcount(other.x & other.z)
            + 2 * _popcount(self.z & other.x)
        )
        x, z = self.x ^ other.x, self.z ^ other.z
        return PauliOperator(self.n, x, z, (t - _popcount(x & z)) % 4)

    __matmul__ = multiply

    def __mul__(self, other):
        if isinstance(other, PauliOperator):
            return self.multiply(other)
        if other in (1, -1, 1j, -1j):
            return self.with_phase(self.phase + {1: 0, 1j: 1, -1: 2, -1j: 3}[other])
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self) -> PauliOperator:
        return self.with_phase(self.phase + 2)

    def with_phase(self, phase: int) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, phase % 4)

    def stripped(self) -> PauliOperator:
        return self.with_phase(0)

    def commutes(self, other: PauliOperator) -> bool:
        self._check(other)
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def restrict(self, block) -> PauliOperator:
        """Keep the tensor factors on ``block``, identity elsewhere; phase reset to 0."""
        mask = qubit_mask(block, self.n)
        return PauliOperator(self.n, self.x & mask, self.z & mask, 0)

    def tensor(self, other: PauliOperator) -> PauliOperator:
        """``self (x) other``, with ``other``'s qubits appended after ours."""
        return PauliOperator(
            self.n + other.n,
            self.x | other.x << self.n,
            self.z | other.z << self.n,
            self.phase + other.phase,
        )

    def to_matrix(self) -> np.ndarray:
        mat = np.array([[1.0 + 0j]])
        for j in range(self.n):
            mat = np.kron(mat, _MATS[self.letter(j)])
        return (1j**self.phase) * mat

    def to_label(self) -> str:
        return _SIGNS[self.phase] + "".join(self.letter(j) for j in range(self.n))

    def __str__(self) -> str:
        return self.to_label()

    def __repr__(self) -> str:
        return f"PauliOperator({self.to_label()!r})"


def parse(text: str, n: int | None = None, allow_complex: bool = False) -> PauliOperator:
    """Parse ``[+|-]`` followed by letters from ``IXYZ``, e.g. ``"-XZI"``.

    ``n`` enforces the string length. Imaginary prefixes (``+i``, ``-i``) are
    accepted only with ``allow_complex``.
    """
    m = _PAULI_RE.match(text)
    if m is None:
        bad = sorted({ch for ch in text.strip().lstrip("+-") if ch not in "IXYZ"})
        raise PauliParseError(f"bad Pauli string {text!r}: unexpected characters {bad}")
    sign, imag, letters = m.groups()
    if imag and not allow_complex:
        raise PauliParseError(f"non-real phase requested in {text!r}")
    if n is not None and len(letters) != n:
        raise PauliParseError(
            f"Pauli string {text!r} has {len(letters)} qubits, expected {n}"
        )
    x = z = 0
    for j, ch in enumerate(letters):
        bx, bz = _BITS[ch]
        x |= bx << j
        z |= bz << j
    phase = (2 if sign == "-" else 0) + (1 if imag else 0)
    return PauliOperator(len(letters), x, z, phase)


def format_pauli(p: PauliOperator) -> str:
    return p.to_label()


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return p.commutes(q)


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    return p.multiply(q)


def restrict(p: PauliOperator, block) -> PauliOperator:
    return p.restrict(block)


def qubit_mask(block, n: int) -> int:
    mask = 0
    for q in block:
        if not 0 <= q < n:
            raise IndexError(f"qubit index {q} out of range for {n} qubits")
        mask |= 1 << q
    return mask


def bits_to_int(bits) -> int:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size == 0:
        return 0
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def int_to_bits(v: int, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros(0, dtype=np.uint8)
    raw = np.frombuffer(v.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, count=n, bitorder="little")
