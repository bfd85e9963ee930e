"""Soft-input ordered statistics decoding (OSD) over BPSK observations."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import _kernels
from .gf2 import BinaryMatrix, BitVector


class DegenerateCode(ValueError):
    """Generator rows are linearly dependent."""


def modulate(c: BitVector) -> np.ndarray:
    """BPSK map: bit 0 -> +1.0, bit 1 -> -1.0."""
    return 1.0 - 2.0 * c.to_array().astype(np.float64)


def squared_distance(y: np.ndarray, c: BitVector) -> float:
    return float(np.sum((np.asarray(y, dtype=np.float64) - modulate(c)) ** 2))


def candidate_count(k: int, order: int) -> int:
    return sum(comb(k, j) for j in range(min(order, k) + 1))


@dataclass(frozen=True)
class OsdResult:
    codeword: BitVector
    score: float
    info_pattern_weight: int
    candidates: int
    reliability_order: tuple[int, ...] = ()
    mrb: tuple[int, ...] = ()

    def debug_dict(self) -> dict:
        return {
            "reliability_order": list(self.reliability_order),
            "mrb": list(self.mrb),
            "info_pattern_weight": self.info_pattern_weight,
            "candidates": self.candidates,
            "score": self.score,
            "codeword": str(self.codeword),
        }


class OsdDecoder:
    """Order-``order`` OSD for a fixed generator.

    Only the uint8 view of ``G`` is kept between calls; the reliability
    sort and the most-reliable-basis elimination are redone per decode.
    """

    def __init__(self, G: BinaryMatrix, order: int = 2) -> None:
        k = G.nrows
        if not 0 <= order <= k:
            raise ValueError(f"order must be in 0..{k}")
        self.G = G
        self.order = order
        self._g = np.ascontiguousarray(G.to_array())

    @property
    def n(self) -> int:
        return self.G.ncols

    @property
    def k(self) -> int:
        return self.G.nrows

    def decode_bits(self, y: np.ndarray) -> tuple[np.ndarray, int, int]:
        """Fast path: ``(codeword as uint8 array, pattern weight, candidates)``."""
        ok, cw, _, pw, cand, _, _ = _kernels.osd_decode_kernel(self._g, y, self.order)
        if not ok:
            raise DegenerateCode("generator has rank < k")
        return cw, int(pw), int(cand)

    def decode(self, y: np.ndarray) -> OsdResult:
        y = np.ascontiguousarray(y, dtype=np.float64)
        if y.shape != (self.n,):
            raise ValueError(f"soft vector has length {y.shape}, expected {self.n}")
        ok, cw, _, pw, cand, perm, mrb = _kernels.osd_decode_kernel(self._g, y, self.order)
        if not ok:
            raise DegenerateCode("generator has rank < k")
        c = BitVector.from_array(cw)
        return OsdResult(
            c,
            squared_distance(y, c),
            int(pw),
            int(cand),
            tuple(int(p) for p in perm),
            tuple(int(m) for m in mrb),
        )


def osd_decode(G: BinaryMatrix, y: np.ndarray, order: int) -> OsdResult:
    return OsdDecoder(G, order).decode(y)
