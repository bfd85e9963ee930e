"""Bit-packed GF(2) vectors and matrices.

Vectors are stored as Python ints used as bitsets: position ``i`` of the
vector (the ``i``-th character of its textual form, counting from the left)
is bit ``i`` of the integer.  Bits at positions ``>= length`` are always zero,
so the Hamming weight is a plain population count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


def _mask(length: int) -> int:
    return (1 << length) - 1


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set outside the vector length")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def from_str(cls, text: str) -> BitVector:
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a binary string: {text!r}")
        # leftmost character is position 0, i.e. the least significant bit
        return cls(len(text), int(text[::-1], 2) if text else 0)

    @classmethod
    def from_positions(cls, length: int, positions: Iterable[int]) -> BitVector:
        bits = 0
        for p in positions:
            if not 0 <= p < length:
                raise ValueError(f"position {p} out of range")
            bits |= 1 << p
        return cls(length, bits)

    @classmethod
    def from_array(cls, arr: Sequence[int] | np.ndarray) -> BitVector:
        a = np.asarray(arr, dtype=np.uint8) & 1
        packed = np.packbits(a, bitorder="little")
        return cls(len(a), int.from_bytes(packed.tobytes(), "little"))

    def __str__(self) -> str:
        if self.length == 0:
            return ""
        return format(self.bits, f"0{self.length}b")[::-1]

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        return (self.bits >> (i % self.length)) & 1

    def __xor__(self, other: BitVector) -> BitVector:
        return xor(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def to_array(self) -> np.ndarray:
        nbytes = (self.length + 7) // 8
        raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.length].copy()

    def permuted(self, perm: Sequence[int]) -> BitVector:
        """Return ``w`` with ``w[j] = self[perm[j]]``."""
        bits = 0
        for j, p in enumerate(perm):
            if (self.bits >> p) & 1:
                bits |= 1 << j
        return BitVector(len(perm), bits)


def weight(v: BitVector) -> int:
    return v.bits.bit_count()


def xor(u: BitVector, v: BitVector) -> BitVector:
    if u.length != v.length:
        raise ValueError(f"length mismatch: {u.length} != {v.length}")
    return BitVector(u.length, u.bits ^ v.bits)


def rotate_right(v: BitVector, s: int) -> BitVector:
    """Cyclic shift: bit ``j`` of the result is bit ``(j - s) mod length`` of ``v``."""
    n = v.length
    if n == 0:
        return v
    s %= n
    if s == 0:
        return v
    bits = ((v.bits << s) | (v.bits >> (n - s))) & _mask(n)
    return BitVector(n, bits)


@dataclass(frozen=True)
class BinaryMatrix:
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector]) -> BinaryMatrix:
        if not rows:
            raise ValueError("need at least one row to infer the width")
        n = rows[0].length
        if any(r.length != n for r in rows):
            raise ValueError("rows have different lengths")
        return cls(n, tuple(r.bits for r in rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BinaryMatrix:
        return cls.from_rows([BitVector.from_str(r) for r in rows])

    @classmethod
    def from_array(cls, arr: np.ndarray) -> BinaryMatrix:
        a = np.asarray(arr, dtype=np.uint8)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(a.shape[1], tuple(BitVector.from_array(row).bits for row in a))

    @classmethod
    def identity(cls, k: int) -> BinaryMatrix:
        return cls(k, tuple(1 << i for i in range(k)))

    @classmethod
    def zeros(cls, k: int, n: int) -> BinaryMatrix:
        return cls(n, (0,) * k)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def to_strings(self) -> list[str]:
        return [str(self.row(i)) for i in range(self.nrows)]

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i in range(self.nrows):
            out[i] = self.row(i).to_array()
        return out

    def packed(self) -> np.ndarray:
        """Rows as little-endian uint64 words, shape ``(nrows, ceil(ncols/64))``."""
        nwords = max(1, (self.ncols + 63) // 64)
        out = np.zeros((self.nrows, nwords), dtype=np.uint64)
        for i, r in enumerate(self.rows):
            out[i] = np.frombuffer(r.to_bytes(nwords * 8, "little"), dtype="<u8")
        return out

    def permute_columns(self, perm: Sequence[int]) -> BinaryMatrix:
        """Column ``j`` of the result is column ``perm[j]`` of ``self``."""
        return BinaryMatrix(
            len(perm), tuple(BitVector(self.ncols, r).permuted(perm).bits for r in self.rows)
        )

    def columns(self, start: int, stop: int) -> BinaryMatrix:
        width = stop - start
        return BinaryMatrix(width, tuple((r >> start) & _mask(width) for r in self.rows))

    def transpose(self) -> BinaryMatrix:
        cols = []
        for j in range(self.ncols):
            c = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    c |= 1 << i
            cols.append(c)
        return BinaryMatrix(self.nrows, tuple(cols))

    def __matmul__(self, other: BinaryMatrix) -> BinaryMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            i = 0
            while r:
                if r & 1:
                    acc ^= other.rows[i]
                r >>= 1
                i += 1
            out.append(acc)
        return BinaryMatrix(other.ncols, tuple(out))

    def to_text(self) -> str:
        lines = [f"{self.ncols} {self.nrows}", *self.to_strings()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> BinaryMatrix:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix file")
        try:
            n, k = (int(t) for t in lines[0].split())
        except ValueError:
            raise ValueError(f"line 1: expected 'n k', got {lines[0]!r}") from None
        body = lines[1:]
        if len(body) != k:
            raise ValueError(f"expected {k} rows, found {len(body)}")
        for i, row in enumerate(body, start=2):
            if len(row) != n or any(ch not in "01" for ch in row):
                raise ValueError(f"line {i}: expected {n} characters from {{0,1}}")
        return cls.from_strings(body)


def hstack(*blocks: BinaryMatrix) -> BinaryMatrix:
    k = blocks[0].nrows
    if any(b.nrows != k for b in blocks):
        raise ValueError("blocks have different row counts")
    rows = []
    for i in range(k):
        acc, shift = 0, 0
        for b in blocks:
            acc |= b.rows[i] << shift
            shift += b.ncols
        rows.append(acc)
    return BinaryMatrix(sum(b.ncols for b in blocks), tuple(rows))


def encode(G: BinaryMatrix, u: BitVector) -> BitVector:
    """XOR of the rows of ``G`` selected by the set bits of ``u``."""
    if u.length != G.nrows:
        raise ValueError(f"message length {u.length} != {G.nrows} generator rows")
    acc = 0
    bits = u.bits
    i = 0
    while bits:
        if bits & 1:
            acc ^= G.rows[i]
        bits >>= 1
        i += 1
    return BitVector(G.ncols, acc)


@dataclass(frozen=True)
class SystematicForm:
    """Row-reduced generator ``[I | M]`` in permuted column order.

    Column ``j`` of ``matrix`` is column ``column_permutation[j]`` of the
    original.  Rows past ``rank`` are zero.
    """

    matrix: BinaryMatrix
    column_permutation: tuple[int, ...]
    rank: int

    def unpermute(self, v: BitVector) -> BitVector:
        """Map a vector in systematized coordinates back to original positions."""
        bits = 0
        for j, p in enumerate(self.column_permutation):
            if (v.bits >> j) & 1:
                bits |= 1 << p
        return BitVector(v.length, bits)


def _reduce(rows: list[int], ncols: int) -> list[int]:
    """Gauss-Jordan in place; returns pivot columns in row order."""
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        if rank == len(rows):
            break
        bit = 1 << col
        for i in range(rank, len(rows)):
            if rows[i] & bit:
                break
        else:
            continue
        rows[rank], rows[i] = rows[i], rows[rank]
        pr = rows[rank]
        for j in range(len(rows)):
            if j != rank and rows[j] & bit:
                rows[j] ^= pr
        pivots.append(col)
        rank += 1
    return pivots


def rank(M: BinaryMatrix) -> int:
    return len(_reduce(list(M.rows), M.ncols))


def systematize(M: BinaryMatrix) -> SystematicForm:
    rows = list(M.rows)
    pivots = _reduce(rows, M.ncols)
    pivot_set = set(pivots)
    perm = tuple(pivots) + tuple(c for c in range(M.ncols) if c not in pivot_set)
    reduced = BinaryMatrix(M.ncols, tuple(rows)).permute_columns(perm)
    return SystematicForm(reduced, perm, len(pivots))


def is_systematic(G: BinaryMatrix) -> bool:
    k = G.nrows
    if k > G.ncols:
        return False
    mask = _mask(k)
    return all((r & mask) == 1 << i for i, r in enumerate(G.rows))


def invert(M: BinaryMatrix) -> BinaryMatrix | None:
    """Inverse over GF(2), or ``None`` when ``M`` is singular."""
    k, n = M.shape
    if k != n:
        raise ValueError(f"cannot invert a non-square {k}x{n} matrix")
    aug = [r | (1 << (n + i)) for i, r in enumerate(M.rows)]
    pivots = _reduce(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return BinaryMatrix(n, tuple(r >> n for r in aug))


def parity_check_from_systematic(G: BinaryMatrix) -> BinaryMatrix:
    """``H = [A^T | I]`` for ``G = [I | A]``."""
    if not is_systematic(G):
        raise ValueError("generator is not in [I | A] form")
    k, n = G.shape
    A = G.columns(k, n)
    At = A.transpose()
    return hstack(At, BinaryMatrix.identity(n - k))


def parity_check(G: BinaryMatrix) -> BinaryMatrix:
    """Parity-check matrix of the row space of an arbitrary generator."""
    form = systematize(G)
    k = form.rank
    n = G.ncols
    top = BinaryMatrix(n, form.matrix.rows[:k])
    if k == n:
        return BinaryMatrix(n, ())
    H_perm = parity_check_from_systematic(top) if k else BinaryMatrix.identity(n)
    # H_perm acts on permuted coordinates; move its columns back
    inverse = [0] * n
    for j, p in enumerate(form.column_permutation):
        inverse[p] = j
    return H_perm.permute_columns(inverse)


def syndrome(H: BinaryMatrix, c: BitVector) -> int:
    """Syndrome bits of ``c`` packed into an int (0 means ``c`` is in the code)."""
    if c.length != H.ncols:
        raise ValueError("length mismatch")
    s = 0
    for i, h in enumerate(H.rows):
        if (h & c.bits).bit_count() & 1:
            s |= 1 << i
    return s


def in_code(H: BinaryMatrix, c: BitVector) -> bool:
    return syndrome(H, c) == 0
