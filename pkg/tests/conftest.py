from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np
import pytest

from circcodes.gf2 import BinaryMatrix

DATA = Path(__file__).parent / "data"
REPO = Path(__file__).resolve().parents[1]


def all_codewords(G: BinaryMatrix) -> np.ndarray:
    """Every codeword, by plain integer matrix products (independent of the package kernels)."""
    k, _ = G.shape
    msgs = np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.int64)
    return (msgs @ G.to_array().astype(np.int64)) % 2


def oracle_distance(G: BinaryMatrix) -> int:
    w = all_codewords(G).sum(axis=1)
    return int(w[w > 0].min())


def gf2_rank(a: np.ndarray) -> int:
    m = a.copy() % 2
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        hit = np.nonzero(m[r:, c])[0]
        if not len(hit):
            continue
        p = r + hit[0]
        m[[r, p]] = m[[p, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
        if r == rows:
            break
    return r


def random_full_rank(rng: np.random.Generator, k: int, n: int) -> BinaryMatrix:
    while True:
        a = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
        if gf2_rank(a) == k:
            return BinaryMatrix.from_array(a)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def example1() -> BinaryMatrix:
    return BinaryMatrix.from_text((DATA / "example1.txt").read_text())
