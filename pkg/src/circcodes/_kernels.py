"""Compiled inner loops.  Inputs are plain numpy arrays; callers own validation."""

from __future__ import annotations

import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, nogil=True, inline="always")
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, nogil=True)
def _weight(words):
    w = 0
    for i in range(words.shape[0]):
        w += popcount64(words[i])
    return w


@njit(cache=True, nogil=True)
def gray_min_weight(rows, start, t_lo, t_hi):
    """Scan Gray-code steps ``t_lo <= t < t_hi``.

    ``start`` is the codeword of message ``gray(t_lo)``.  Step ``t`` flips
    message bit ``ctz(t)``.  Step 0 (the zero message) is skipped.
    Returns ``(best_weight, best_t)``; ``best_t = -1`` if nothing scanned.
    """
    acc = start.copy()
    nw = acc.shape[0]
    best_w = 1 << 62
    best_t = -1
    t = t_lo
    while t < t_hi:
        if t > t_lo:
            tz = 0
            v = t
            while (v & 1) == 0:
                v >>= 1
                tz += 1
            for j in range(nw):
                acc[j] ^= rows[tz, j]
        if t > 0:
            w = _weight(acc)
            if w < best_w:
                best_w = w
                best_t = t
        t += 1
    return best_w, best_t


@njit(cache=True, nogil=True)
def combo_min_weight(P, r, first_lo, first_hi):
    """Minimum weight of XORs of ``r`` rows of ``P`` over index tuples in
    lexicographic order whose first index lies in ``[first_lo, first_hi)``.

    Returns ``(best_weight, best_indices, count)``.
    """
    k = P.shape[0]
    nw = P.shape[1]
    best_w = 1 << 62
    best_idx = np.full(r, -1, dtype=np.int64)
    count = 0
    idx = np.zeros(r, dtype=np.int64)
    acc = np.zeros((r + 1, nw), dtype=np.uint64)
    hi = min(first_hi, k - r + 1)
    for first in range(first_lo, hi):
        idx[0] = first
        for j in range(nw):
            acc[1, j] = P[first, j]
        for d in range(1, r):
            idx[d] = idx[d - 1] + 1
            for j in range(nw):
                acc[d + 1, j] = acc[d, j] ^ P[idx[d], j]
        while True:
            w = _weight(acc[r])
            count += 1
            if w < best_w:
                best_w = w
                for d in range(r):
                    best_idx[d] = idx[d]
            # advance the rightmost index that can still move (never idx[0])
            d = r - 1
            while d >= 1 and idx[d] == k - r + d:
                d -= 1
            if d == 0:
                break
            idx[d] += 1
            for j in range(nw):
                acc[d + 1, j] = acc[d, j] ^ P[idx[d], j]
            for e in range(d + 1, r):
                idx[e] = idx[e - 1] + 1
                for j in range(nw):
                    acc[e + 1, j] = acc[e, j] ^ P[idx[e], j]
    return best_w, best_idx, count


@njit(cache=True, nogil=True)
def osd_decode_kernel(G, y, order):
    """Ordered statistics decoding of soft vector ``y`` (BPSK, 0 -> +1).

    Returns ``(ok, codeword, corr, pattern_weight, candidates, perm, mrb)``
    where ``corr`` is the sum of ``y`` over the codeword support (the score
    is an affine function of it), ``perm`` is the reliability order and
    ``mrb`` holds original column indices of the most reliable basis.
    """
    k = G.shape[0]
    n = G.shape[1]
    rel = np.empty(n, dtype=np.float64)
    for i in range(n):
        rel[i] = -abs(y[i])
    perm = np.argsort(rel, kind="mergesort")

    nw = (n + 63) // 64
    M = np.zeros((k, nw), dtype=np.uint64)
    for i in range(k):
        for j in range(n):
            if G[i, perm[j]]:
                M[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)

    mrb = np.empty(k, dtype=np.int64)
    rank = 0
    for col in range(n):
        if rank == k:
            break
        wi = col >> 6
        bit = np.uint64(1) << np.uint64(col & 63)
        piv = -1
        for i in range(rank, k):
            if M[i, wi] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(nw):
                tmp = M[rank, j]
                M[rank, j] = M[piv, j]
                M[piv, j] = tmp
        for i in range(k):
            if i != rank and (M[i, wi] & bit):
                for j in range(nw):
                    M[i, j] ^= M[rank, j]
        mrb[rank] = col
        rank += 1

    cw_out = np.zeros(n, dtype=np.uint8)
    if rank < k:
        return False, cw_out, 0.0, 0, 0, perm, mrb

    # unpacked reduced rows in permuted coordinates
    R = np.zeros((k, n), dtype=np.uint8)
    for i in range(k):
        for j in range(n):
            if (M[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1):
                R[i, j] = 1
    ys = np.empty(n, dtype=np.float64)
    for j in range(n):
        ys[j] = y[perm[j]]

    base = np.zeros(n, dtype=np.uint8)
    for t in range(k):
        if ys[mrb[t]] < 0.0:
            for j in range(n):
                base[j] ^= R[t, j]
    base_corr = 0.0
    s = np.empty(n, dtype=np.float64)
    for j in range(n):
        if base[j]:
            base_corr += ys[j]
            s[j] = -ys[j]
        else:
            s[j] = ys[j]

    best_corr = base_corr
    best_pw = 0
    best_idx = np.full(max(order, 1), -1, dtype=np.int64)
    candidates = 1

    L = min(order, k)
    idx = np.zeros(max(L, 1), dtype=np.int64)
    acc = np.zeros((max(L, 1) + 1, n), dtype=np.uint8)
    for pw in range(1, L + 1):
        for d in range(pw):
            idx[d] = d
            for j in range(n):
                acc[d + 1, j] = acc[d, j] ^ R[idx[d], j]
        while True:
            c = base_corr
            for j in range(n):
                if acc[pw, j]:
                    c += s[j]
            candidates += 1
            if c < best_corr:
                best_corr = c
                best_pw = pw
                for d in range(pw):
                    best_idx[d] = idx[d]
            d = pw - 1
            while d >= 0 and idx[d] == k - pw + d:
                d -= 1
            if d < 0:
                break
            idx[d] += 1
            for j in range(n):
                acc[d + 1, j] = acc[d, j] ^ R[idx[d], j]
            for e in range(d + 1, pw):
                idx[e] = idx[e - 1] + 1
                for j in range(n):
                    acc[e + 1, j] = acc[e, j] ^ R[idx[e], j]

    cw = base.copy()
    for d in range(best_pw):
        t = best_idx[d]
        for j in range(n):
            cw[j] ^= R[t, j]
    for j in range(n):
        cw_out[perm[j]] = cw[j]
    mrb_orig = np.empty(k, dtype=np.int64)
    for t in range(k):
        mrb_orig[t] = perm[mrb[t]]
    return True, cw_out, best_corr, best_pw, candidates, perm, mrb_orig
