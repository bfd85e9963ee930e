"""Double, bordered double, and triple circulant code constructions."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .gf2 import BinaryMatrix, BitVector, encode, hstack, rotate_right


class Family(str, Enum):
    DCC = "dcc"
    BDCC = "bdcc"
    TCC = "tcc"

    @classmethod
    def parse(cls, text: str) -> Family:
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown family {text!r} (expected dcc, bdcc or tcc)") from None


@dataclass(frozen=True)
class CodeSpec:
    family: Family
    r: int
    headers: tuple[BitVector, ...]
    # corner bit of the bordered block; the figure this comes from is ambiguous
    border_corner: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "headers", tuple(self.headers))
        if self.r < 1:
            raise ValueError("block size r must be >= 1")
        want = 2 if self.family is Family.TCC else 1
        if len(self.headers) != want:
            raise ValueError(f"{self.family.value} needs {want} header(s), got {len(self.headers)}")
        for h in self.headers:
            if h.length != self.r:
                raise ValueError(f"header length {h.length} does not match r={self.r}")
        if self.border_corner not in (0, 1):
            raise ValueError("border_corner must be 0 or 1")

    @classmethod
    def dcc(cls, header: str | BitVector) -> CodeSpec:
        h = BitVector.from_str(header) if isinstance(header, str) else header
        return cls(Family.DCC, h.length, (h,))

    @classmethod
    def bdcc(cls, header: str | BitVector, border_corner: int = 0) -> CodeSpec:
        h = BitVector.from_str(header) if isinstance(header, str) else header
        return cls(Family.BDCC, h.length, (h,), border_corner)

    @classmethod
    def tcc(cls, a: str | BitVector, b: str | BitVector) -> CodeSpec:
        ha = BitVector.from_str(a) if isinstance(a, str) else a
        hb = BitVector.from_str(b) if isinstance(b, str) else b
        return cls(Family.TCC, ha.length, (ha, hb))

    @property
    def n(self) -> int:
        if self.family is Family.DCC:
            return 2 * self.r
        if self.family is Family.TCC:
            return 3 * self.r
        return 2 * (self.r + 1)

    @property
    def k(self) -> int:
        return self.r + 1 if self.family is Family.BDCC else self.r

    def header_bits(self) -> str:
        return "".join(str(h) for h in self.headers)

    def to_dict(self) -> dict:
        d = {"family": self.family.value, "r": self.r, "n": self.n, "k": self.k}
        if self.family is Family.TCC:
            d["header_a"], d["header_b"] = (str(h) for h in self.headers)
        else:
            d["header"] = str(self.headers[0])
        if self.family is Family.BDCC:
            d["border_corner"] = self.border_corner
        return d

    @classmethod
    def from_dict(cls, d: dict) -> CodeSpec:
        fam = Family.parse(d["family"])
        if fam is Family.TCC:
            return cls.tcc(d["header_a"], d["header_b"])
        if fam is Family.BDCC:
            return cls.bdcc(d["header"], int(d.get("border_corner", 0)))
        return cls.dcc(d["header"])

    def label(self) -> str:
        return f"{self.family.value.upper()} C({self.n},{self.k}) {' '.join(str(h) for h in self.headers)}"


def build_circulant(h: BitVector) -> BinaryMatrix:
    """Circulant block whose row ``i`` is ``h`` rotated right by ``i``."""
    return BinaryMatrix(h.length, tuple(rotate_right(h, i).bits for i in range(h.length)))


def _bordered_block(h: BitVector, corner: int) -> BinaryMatrix:
    r = h.length
    B = build_circulant(h)
    ones = (1 << r) - 1
    top = corner | (ones << 1)
    rest = [1 | (row << 1) for row in B.rows]
    return BinaryMatrix(r + 1, (top, *rest))


def build_generator(spec: CodeSpec) -> BinaryMatrix:
    if spec.family is Family.DCC:
        return hstack(BinaryMatrix.identity(spec.r), build_circulant(spec.headers[0]))
    if spec.family is Family.TCC:
        a, b = spec.headers
        return hstack(BinaryMatrix.identity(spec.r), build_circulant(a), build_circulant(b))
    return hstack(BinaryMatrix.identity(spec.r + 1), _bordered_block(spec.headers[0], spec.border_corner))


def encode_spec(spec: CodeSpec, u: BitVector) -> BitVector:
    return encode(build_generator(spec), u)


def canonical_rotation(h: BitVector) -> BitVector:
    """Lexicographically smallest (as text) cyclic rotation of a header."""
    best = h
    best_s = str(h)
    for s in range(1, h.length):
        cand = rotate_right(h, s)
        cs = str(cand)
        if cs < best_s:
            best, best_s = cand, cs
    return best


def canonicalize(spec: CodeSpec) -> CodeSpec:
    """Equivalent code with every header replaced by its smallest rotation.

    Rotating a header cyclically permutes the columns of its block (the
    all-ones border of a bordered code is fixed by that permutation), so
    the resulting code has the same weight distribution.
    """
    return CodeSpec(
        spec.family,
        spec.r,
        tuple(canonical_rotation(h) for h in spec.headers),
        spec.border_corner,
    )


@dataclass(frozen=True)
class HeaderLine:
    spec: CodeSpec
    claimed_d: int | None
    lineno: int


def parse_header_line(line: str, lineno: int = 0) -> HeaderLine | None:
    """Parse ``family r header_a [header_b] [claimed_d]``; ``None`` for blanks/comments."""
    text = line.strip()
    if not text or text.startswith("#"):
        return None
    fields = text.split()
    where = f"line {lineno}: " if lineno else ""
    try:
        fam = Family.parse(fields[0])
        r = int(fields[1])
        nhead = 2 if fam is Family.TCC else 1
        heads = fields[2 : 2 + nhead]
        if len(heads) != nhead:
            raise ValueError(f"{fam.value} needs {nhead} header(s)")
        tail = fields[2 + nhead :]
        if len(tail) > 1:
            raise ValueError("too many fields")
        claimed = int(tail[0]) if tail else None
        spec = CodeSpec(fam, r, tuple(BitVector.from_str(h) for h in heads))
    except (IndexError, ValueError) as exc:
        raise ValueError(f"{where}{exc}") from None
    return HeaderLine(spec, claimed, lineno)


def load_header_file(path: str | Path) -> list[HeaderLine]:
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            parsed = parse_header_line(line, lineno)
            if parsed is not None:
                out.append(parsed)
    return out


def format_header_line(spec: CodeSpec, claimed_d: int | None = None) -> str:
    parts = [spec.family.value, str(spec.r), *(str(h) for h in spec.headers)]
    if claimed_d is not None:
        parts.append(str(claimed_d))
    return " ".join(parts)
