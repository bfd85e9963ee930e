from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circcodes.gf2 import (
    BinaryMatrix,
    BitVector,
    encode,
    in_code,
    invert,
    is_systematic,
    parity_check,
    parity_check_from_systematic,
    rank,
    rotate_right,
    syndrome,
    systematize,
    weight,
    xor,
)

from .conftest import gf2_rank

bitstrings = st.text(alphabet="01", min_size=1, max_size=80)


@st.composite
def matrices(draw, max_k=8, max_n=20):
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(1, max_n))
    bits = draw(st.lists(st.integers(0, 1), min_size=k * n, max_size=k * n))
    return BinaryMatrix.from_array(np.array(bits, dtype=np.uint8).reshape(k, n))


def test_text_positions_are_left_to_right():
    v = BitVector.from_str("1100")
    assert v[0] == 1 and v[1] == 1 and v[3] == 0
    assert v.support() == [0, 1]
    assert str(v) == "1100"


def test_weight_and_xor_examples():
    assert weight(BitVector.from_str("1011")) == 3
    assert str(xor(BitVector.from_str("1100"), BitVector.from_str("1010"))) == "0110"
    assert weight(BitVector.zeros(0)) == 0


def test_xor_length_mismatch():
    with pytest.raises(ValueError):
        xor(BitVector.from_str("101"), BitVector.from_str("10"))


def test_rotate_right():
    assert str(rotate_right(BitVector.from_str("011101001"), 1)) == "101110100"
    assert str(rotate_right(BitVector.from_str("10"), 1)) == "01"


def test_bad_strings_rejected():
    with pytest.raises(ValueError):
        BitVector.from_str("10a1")
    with pytest.raises(ValueError):
        BitVector(3, 0b1000)


@given(bitstrings)
def test_string_round_trip(s):
    v = BitVector.from_str(s)
    assert str(v) == s
    assert v.weight == s.count("1")
    assert str(BitVector.from_array(v.to_array())) == s


@given(st.data())
def test_xor_group_laws(data):
    n = data.draw(st.integers(1, 70))
    draw = lambda: BitVector.from_str(data.draw(st.text("01", min_size=n, max_size=n)))  # noqa: E731
    u, v, w = draw(), draw(), draw()
    assert (u ^ v) ^ w == u ^ (v ^ w)
    assert u ^ u == BitVector.zeros(n)
    assert weight(u ^ v) <= weight(u) + weight(v)
    assert weight(u ^ v) % 2 == (weight(u) + weight(v)) % 2


@given(bitstrings, st.integers(0, 200))
def test_rotation_preserves_weight_and_composes(s, k):
    v = BitVector.from_str(s)
    n = len(s)
    assert rotate_right(v, k).weight == v.weight
    assert rotate_right(rotate_right(v, k), n - (k % n)) == v


@given(matrices())
def test_text_round_trip(M):
    assert BinaryMatrix.from_text(M.to_text()) == M
    assert BinaryMatrix.from_array(M.to_array()) == M


def test_from_text_reports_line_numbers():
    with pytest.raises(ValueError, match="line 3"):
        BinaryMatrix.from_text("4 2\n1010\n01x1\n")
    with pytest.raises(ValueError, match="line 1"):
        BinaryMatrix.from_text("four two\n1010\n")
    with pytest.raises(ValueError, match="expected 2 rows"):
        BinaryMatrix.from_text("4 2\n1010\n")


@given(matrices(), st.data())
def test_matmul_matches_numpy(A, data):
    m = data.draw(st.integers(1, 12))
    bits = data.draw(st.lists(st.integers(0, 1), min_size=A.ncols * m, max_size=A.ncols * m))
    B = BinaryMatrix.from_array(np.array(bits, dtype=np.uint8).reshape(A.ncols, m))
    want = (A.to_array().astype(int) @ B.to_array().astype(int)) % 2
    np.testing.assert_array_equal((A @ B).to_array(), want)


@given(matrices())
def test_transpose_involution(M):
    assert M.transpose().transpose() == M
    np.testing.assert_array_equal(M.transpose().to_array(), M.to_array().T)


@given(matrices(max_k=10, max_n=24))
def test_rank_matches_reference(M):
    assert rank(M) == gf2_rank(M.to_array())


@given(matrices(max_k=10, max_n=24))
def test_systematize_spans_same_space(M):
    form = systematize(M)
    k = form.rank
    top = BinaryMatrix(M.ncols, form.matrix.rows[:k])
    if k:
        assert is_systematic(top)
    assert all(r == 0 for r in form.matrix.rows[k:])
    # unpermuted rows stay in the row space of M
    H = parity_check(M)
    for i in range(k):
        assert in_code(H, form.unpermute(top.row(i)))


@given(matrices(max_k=8, max_n=8))
def test_invert(M):
    if M.nrows != M.ncols:
        with pytest.raises(ValueError):
            invert(M)
        return
    inv = invert(M)
    if gf2_rank(M.to_array()) < M.nrows:
        assert inv is None
    else:
        assert M @ inv == BinaryMatrix.identity(M.nrows)
        assert inv @ M == BinaryMatrix.identity(M.nrows)


@given(matrices(max_k=8, max_n=20))
def test_parity_check_annihilates_rows(G):
    H = parity_check(G)
    r = gf2_rank(G.to_array())
    assert H.nrows == G.ncols - r
    if H.nrows:
        assert gf2_rank(H.to_array()) == H.nrows
    for i in range(G.nrows):
        assert syndrome(H, G.row(i)) == 0


def test_parity_check_from_systematic_shape():
    G = BinaryMatrix.from_strings(["10001110", "01000111", "00101011", "00011101"])
    H = parity_check_from_systematic(G)
    assert H.shape == (4, 8)
    assert H.to_strings()[0] == "10111000"
    with pytest.raises(ValueError):
        parity_check_from_systematic(BinaryMatrix.from_strings(["0110"]))


@given(matrices(max_k=8, max_n=20), st.data())
def test_encode_is_linear(G, data):
    k = G.nrows
    u = BitVector.from_str(data.draw(st.text("01", min_size=k, max_size=k)))
    v = BitVector.from_str(data.draw(st.text("01", min_size=k, max_size=k)))
    assert encode(G, u ^ v) == encode(G, u) ^ encode(G, v)
    want = (u.to_array().astype(int) @ G.to_array().astype(int)) % 2
    np.testing.assert_array_equal(encode(G, u).to_array(), want)


@settings(max_examples=30)
@given(matrices(max_k=6, max_n=140))
def test_packed_words_little_endian(M):
    P = M.packed()
    for i, r in enumerate(M.rows):
        total = sum(int(w) << (64 * j) for j, w in enumerate(P[i]))
        assert total == r
