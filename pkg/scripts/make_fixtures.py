#!/usr/bin/env python3
"""Write the external-code fixture matrices used by the bench and tests.

BCH and QR construction is not part of the package; these generators are
computed here once (textbook constructions) and stored as plain matrix files.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from circcodes.gf2 import BinaryMatrix, _reduce

PRIM_POLY = {7: 0b10001001}  # x^7 + x^3 + 1


def gf_tables(m: int) -> tuple[list[int], list[int]]:
    size = 1 << m
    exp = [0] * (2 * size)
    log = [0] * size
    x = 1
    for i in range(size - 1):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & size:
            x ^= PRIM_POLY[m]
    for i in range(size - 1, 2 * size):
        exp[i] = exp[i - (size - 1)]
    return exp, log


def minimal_poly(i: int, m: int, exp: list[int], log: list[int]) -> int:
    n = (1 << m) - 1
    coset = []
    j = i % n
    while j not in coset:
        coset.append(j)
        j = (2 * j) % n
    poly = [1]  # coefficients in GF(2^m), lowest degree first
    for c in coset:
        root = exp[c]
        nxt = [0] * (len(poly) + 1)
        for d, a in enumerate(poly):
            nxt[d + 1] ^= a
            if a:
                nxt[d] ^= exp[log[a] + log[root]]
        poly = nxt
    assert all(a in (0, 1) for a in poly)
    return sum(a << d for d, a in enumerate(poly))


def poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def bch_generator_matrix(m: int, designed: int) -> BinaryMatrix:
    exp, log = gf_tables(m)
    n = (1 << m) - 1
    g, seen = 1, set()
    for i in range(1, designed):
        mp = minimal_poly(i, m, exp, log)
        if mp not in seen:
            seen.add(mp)
            g = poly_mul(g, mp)
    deg = g.bit_length() - 1
    k = n - deg
    return BinaryMatrix(n, tuple(g << s for s in range(k)))


def qr_generator_matrix(p: int) -> BinaryMatrix:
    residues = {(x * x) % p for x in range(1, p)}
    mask = (1 << p) - 1
    target = (p + 1) // 2
    for with_one in (False, True):
        e = sum(1 << q for q in residues) | (1 if with_one else 0)
        rows = [((e << s) | (e >> (p - s))) & mask for s in range(p)]
        work = list(rows)
        pivots = _reduce(work, p)
        if len(pivots) == target:
            return BinaryMatrix(p, tuple(work[:target]))
    raise RuntimeError("no idempotent of the right dimension")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "tests" / "data")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for designed in (21, 23, 27):
        G = bch_generator_matrix(7, designed)
        path = args.out / f"bch_127_{G.nrows}.txt"
        path.write_text(G.to_text())
        print(path, G.shape)
    G = qr_generator_matrix(233)
    path = args.out / "qr_233_117.txt"
    path.write_text(G.to_text())
    print(path, G.shape)
    ex1 = BinaryMatrix.from_strings(["10001110", "01000111", "00101011", "00011101"])
    (args.out / "example1.txt").write_text(ex1.to_text())


if __name__ == "__main__":
    main()
