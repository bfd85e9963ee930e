from __future__ import annotations


import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circcodes.gf2 import BinaryMatrix, BitVector, encode, in_code, parity_check
from circcodes.osd import DegenerateCode, OsdDecoder, candidate_count, modulate, osd_decode, squared_distance

from .conftest import all_codewords, random_full_rank


def test_modulation_map():
    np.testing.assert_array_equal(modulate(BitVector.from_str("0110")), [1.0, -1.0, -1.0, 1.0])
    assert squared_distance(np.ones(4), BitVector.from_str("0100")) == 4.0


def test_candidate_count():
    assert candidate_count(4, 2) == 1 + 4 + 6
    assert candidate_count(64, 2) == 1 + 64 + 2016
    assert candidate_count(3, 9) == 8


def test_noiseless_example(example1):
    c = encode(example1, BitVector.from_str("1101"))
    assert str(c) == "11010100"
    res = osd_decode(example1, modulate(c), 0)
    assert res.codeword == c and res.info_pattern_weight == 0 and res.candidates == 1


def test_degenerate_generator():
    G = BinaryMatrix.from_strings(["1100", "1100"])
    with pytest.raises(DegenerateCode):
        OsdDecoder(G, 1).decode(np.ones(4))


def test_bad_inputs(example1):
    with pytest.raises(ValueError):
        OsdDecoder(example1, 5)
    with pytest.raises(ValueError):
        OsdDecoder(example1, 1).decode(np.ones(7))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 10), st.integers(1, 10), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_output_is_codeword_and_not_worse_than_order_zero(k, extra, order, seed):
    rng = np.random.default_rng(seed)
    G = random_full_rank(rng, k, k + extra)
    order = min(order, k)
    y = rng.normal(0.0, 1.0, size=G.ncols)
    res = osd_decode(G, y, order)
    assert in_code(parity_check(G), res.codeword)
    assert res.candidates == candidate_count(k, order)
    assert res.score <= osd_decode(G, y, 0).score + 1e-12
    assert abs(res.score - squared_distance(y, res.codeword)) < 1e-9
    # the most reliable basis is k distinct positions
    assert len(set(res.mrb)) == k
    assert sorted(res.reliability_order) == list(range(G.ncols))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 8), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_full_order_is_maximum_likelihood(k, extra, seed):
    rng = np.random.default_rng(seed)
    G = random_full_rank(rng, k, k + extra)
    y = rng.normal(0.0, 1.2, size=G.ncols)
    res = osd_decode(G, y, k)
    cws = all_codewords(G)
    best = ((y[None, :] - (1.0 - 2.0 * cws)) ** 2).sum(axis=1).min()
    assert abs(res.score - best) < 1e-9


def test_reliability_order_is_stable(example1):
    y = np.array([0.5, -0.5, 0.5, 0.1, -0.9, 0.9, 0.2, 0.5])
    res = osd_decode(example1, y, 1)
    assert res.reliability_order[:2] == (4, 5)
    # equal magnitudes keep their original order
    assert [p for p in res.reliability_order if abs(y[p]) == 0.5] == [0, 1, 2, 7]


def test_debug_dict(example1):
    d = osd_decode(example1, np.linspace(-1, 1, 8), 2).debug_dict()
    assert set(d) == {"reliability_order", "mrb", "info_pattern_weight", "candidates", "score", "codeword"}
