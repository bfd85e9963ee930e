"""Exact minimum distance: Gray-code exhaustive search and r-row slice sweeps."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import _kernels
from .codes import CodeSpec, Family, build_circulant, build_generator
from .gf2 import BinaryMatrix, BitVector, encode, hstack, invert, is_systematic
from .parallel import pmap, split_range

BRUTE_FORCE_CAP = 28
# fixed chunking so results never depend on the worker count
_GRAY_CHUNKS = 64


@dataclass(frozen=True)
class DistanceEstimate:
    d: int | None
    witness: BitVector | None
    method: str
    exact: bool = False
    work_units: int = 0
    seed: int | None = None
    info: dict = field(default_factory=dict, compare=False)

    @property
    def found(self) -> bool:
        return self.d is not None

    def to_dict(self) -> dict:
        out = {
            "d": self.d,
            "exact": self.exact,
            "method": self.method,
            "witness": None if self.witness is None else str(self.witness),
            "work_units": self.work_units,
            "seed": self.seed,
        }
        if self.d is None:
            out["status"] = "no-estimate"
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class DimensionCapExceeded(ValueError):
    pass


def brute_force_distance(G: BinaryMatrix, cap: int = BRUTE_FORCE_CAP, threads: int = 1) -> DistanceEstimate:
    k = G.nrows
    if k > cap:
        raise DimensionCapExceeded(
            f"k={k} exceeds the brute-force cap {cap}; use chen, circulant-exact or an estimator"
        )
    if k == 0:
        raise ValueError("empty generator")
    rows = G.packed()
    total = 1 << k
    chunks = split_range(0, total, _GRAY_CHUNKS if k >= 12 else 1)

    def scan(bounds: tuple[int, int]) -> tuple[int, int]:
        lo, hi = bounds
        start = encode(G, BitVector(k, lo ^ (lo >> 1)))
        start_words = BinaryMatrix(G.ncols, (start.bits,)).packed()[0]
        w, t = _kernels.gray_min_weight(rows, start_words, lo, hi)
        return int(w), int(t)

    results = pmap(scan, chunks, threads)
    best_w, best_t = min((r for r in results if r[1] >= 0), key=lambda r: (r[0], r[1]))
    witness = encode(G, BitVector(k, best_t ^ (best_t >> 1)))
    return DistanceEstimate(best_w, witness, "brute", exact=True, work_units=total - 1)


@dataclass(frozen=True)
class SliceResult:
    r: int
    min_weight: int
    witness: BitVector
    indices: tuple[int, ...] = ()
    work_units: int = 0


def _slice(G: BinaryMatrix, P: np.ndarray, r: int, first: tuple[int, int], threads: int) -> SliceResult:
    chunks = split_range(first[0], first[1], 4 * max(threads, 1) if first[1] - first[0] > 8 else 1)

    def scan(bounds: tuple[int, int]):
        w, idx, count = _kernels.combo_min_weight(P, r, bounds[0], bounds[1])
        return int(w), tuple(int(i) for i in idx), int(count)

    results = pmap(scan, chunks, threads)
    count = sum(c for _, _, c in results)
    # chunks are in lexicographic order, so the first minimum wins ties
    best = min((res for res in results if res[1][0] >= 0), key=lambda res: res[0])
    mu, indices = best[0], best[1]
    bits = 0
    for i in indices:
        bits ^= G.rows[i]
    return SliceResult(r, r + mu, BitVector(G.ncols, bits), indices, count)


def chen_slice(G_sys: BinaryMatrix, r: int, threads: int = 1) -> SliceResult:
    """Minimum weight over codewords whose message has weight exactly ``r``."""
    k, n = G_sys.shape
    if not is_systematic(G_sys):
        raise ValueError("chen_slice needs a systematic [I | M] generator")
    if not 1 <= r <= k:
        raise ValueError(f"r={r} out of range 1..{k}")
    P = G_sys.columns(k, n).packed()
    return _slice(G_sys, P, r, (0, k), threads)


def chen_distance(
    G_sys: BinaryMatrix, r_cap: int | None = None, cyclic: bool = False, threads: int = 1
) -> DistanceEstimate:
    """Sweep ``chen_slice`` for r = 1, 2, ...

    With ``cyclic=True`` the sweep may stop early once every weight below
    the current best must already have appeared in some slice (for a cyclic
    code a weight-w word has a shift with floor(k*w/n) ones among the first
    k positions).  Otherwise the result is exact only after a full sweep.
    """
    k, n = G_sys.shape
    r_cap = k if r_cap is None else min(r_cap, k)
    best: SliceResult | None = None
    work = 0
    r_done = 0
    for r in range(1, r_cap + 1):
        if cyclic and best is not None and (k * best.min_weight) // n < r:
            break
        s = chen_slice(G_sys, r, threads)
        work += s.work_units
        r_done = r
        if best is None or s.min_weight < best.min_weight:
            best = s
    if best is None:
        raise ValueError("r_cap must be >= 1")
    exact = r_done == k or (cyclic and (k * best.min_weight) // n < r_done + 1)
    return DistanceEstimate(
        best.min_weight, best.witness, "chen", exact=exact, work_units=work, info={"r_swept": r_done}
    )


@dataclass(frozen=True)
class _Form:
    """Generator systematic on one block: rows are codewords, ``P`` is the
    part outside the identity block (packed)."""

    block: int
    G: BinaryMatrix
    P: np.ndarray


def circulant_forms(spec: CodeSpec) -> list[_Form]:
    """Generators systematic on block 0 and on every invertible circulant block."""
    r = spec.r
    blocks = [build_circulant(h) for h in spec.headers]
    G = build_generator(spec)
    forms = [_Form(0, G, G.columns(r, G.ncols).packed())]
    for j, B in enumerate(blocks, start=1):
        Binv = invert(B)
        if Binv is None:
            continue
        Gj = Binv @ G
        rest = [Gj.columns(b * r, (b + 1) * r) for b in range(len(blocks) + 1) if b != j]
        forms.append(_Form(j, Gj, hstack(*rest).packed()))
    return forms


def circulant_exact_distance(
    spec: CodeSpec,
    w_probe: int | None = None,
    threads: int = 1,
    brute_cap: int = BRUTE_FORCE_CAP,
    max_work: int | None = None,
) -> DistanceEstimate:
    """Exact distance of a DCC/TCC by sweeping slices on block-systematic forms.

    With f forms available (block 0 plus each invertible circulant block), a
    codeword of weight w has at most floor(w/f) ones in one of the covered
    blocks, so once each form has been swept up to r = floor((d*-1)/f) no
    lighter codeword can remain.  Simultaneous rotation of all blocks maps
    row i of each form to row i+1, so only index tuples containing row 0
    are enumerated.  ``w_probe`` caps the sweep at r <= floor(w_probe/f);
    if that cap stops the sweep first the result is an upper bound only.
    ``max_work`` likewise stops before a slice that would push the number
    of enumerated combinations past it.
    """
    if spec.family is Family.BDCC:
        G = build_generator(spec)
        if G.nrows <= brute_cap:
            return brute_force_distance(G, brute_cap, threads)
        r_cap = None if w_probe is None else max(1, w_probe // 2)
        return chen_distance(G, r_cap, threads=threads)

    forms = circulant_forms(spec)
    f = len(forms)
    k = spec.k
    r_limit = k if w_probe is None else max(1, min(k, w_probe // f))
    best: SliceResult | None = None
    work = 0
    r = 0
    while True:
        needed = k if best is None else (best.min_weight - 1) // f
        if r >= needed or r >= r_limit:
            break
        if max_work is not None and work + estimated_slice_work(k, r + 1, f) > max_work:
            break
        r += 1
        for form in forms:
            s = _slice(form.G, form.P, r, (0, 1), threads)
            work += s.work_units
            if best is None or s.min_weight < best.min_weight:
                best = s
    if best is None:
        raise ValueError("max_work too small to sweep a single slice")
    needed = (best.min_weight - 1) // f
    return DistanceEstimate(
        best.min_weight,
        best.witness,
        "circulant-exact",
        exact=r >= min(needed, k),
        work_units=work,
        info={"r_swept": r, "forms": [form.block for form in forms]},
    )


def estimated_slice_work(k: int, r: int, forms: int = 1, anchored: bool = True) -> int:
    return forms * (comb(k - 1, r - 1) if anchored else comb(k, r))
