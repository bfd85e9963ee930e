from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circcodes.codes import CodeSpec, Family, build_generator
from circcodes.exact import (
    DimensionCapExceeded,
    brute_force_distance,
    chen_distance,
    chen_slice,
    circulant_exact_distance,
    circulant_forms,
)
from circcodes.gf2 import BinaryMatrix, BitVector, in_code, parity_check, systematize

from .conftest import all_codewords, oracle_distance, random_full_rank


def _check_witness(G, est):
    assert est.witness is not None
    assert est.witness.weight == est.d
    assert in_code(parity_check(G), est.witness)


def test_brute_force_small_examples(example1):
    est = brute_force_distance(example1)
    assert (est.d, est.exact, est.work_units) == (4, True, 15)
    _check_witness(example1, est)
    est = brute_force_distance(build_generator(CodeSpec.dcc("011101001")))
    assert est.d == 6 and est.exact


def test_zero_header_has_distance_one():
    est = brute_force_distance(build_generator(CodeSpec.dcc("0000")))
    assert est.d == 1


def test_brute_force_cap():
    G = build_generator(CodeSpec.dcc("1" + "0" * 29))
    with pytest.raises(DimensionCapExceeded):
        brute_force_distance(G)


def test_brute_force_thread_independent():
    G = build_generator(CodeSpec.tcc("001010011011", "100100000111"))
    runs = [brute_force_distance(G, threads=t) for t in (1, 2, 8)]
    assert len({(e.d, str(e.witness)) for e in runs}) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(0, 8), st.integers(0, 2**32 - 1))
def test_brute_force_matches_oracle(k, extra, seed):
    G = random_full_rank(np.random.default_rng(seed), k, k + extra)
    est = brute_force_distance(G)
    assert est.d == oracle_distance(G)
    _check_witness(G, est)


def _slice_oracle(G, r):
    k, n = G.shape
    cws = all_codewords(G)
    msgs = cws[:, :k]
    w = cws.sum(axis=1)
    return int(w[msgs.sum(axis=1) == r].min())


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_chen_slice_matches_oracle(k, extra, seed):
    G = systematize(random_full_rank(np.random.default_rng(seed), k, k + extra)).matrix
    for r in range(1, k + 1):
        s = chen_slice(G, r)
        assert s.min_weight == _slice_oracle(G, r)
        assert s.witness.weight == s.min_weight
        assert bin(s.witness.bits & ((1 << k) - 1)).count("1") == r
    assert chen_distance(G).d == oracle_distance(G)
    assert chen_distance(G).exact


def test_chen_slice_rejects_non_systematic():
    with pytest.raises(ValueError):
        chen_slice(BinaryMatrix.from_strings(["0110", "1001"]), 1)
    with pytest.raises(ValueError):
        chen_slice(build_generator(CodeSpec.dcc("0110")), 5)


def test_chen_partial_sweep_is_upper_bound():
    G = build_generator(CodeSpec.dcc("011101001"))
    est = chen_distance(G, r_cap=1)
    assert est.d >= 6 and not est.exact


@st.composite
def circulant_specs(draw, max_r=9):
    fam = draw(st.sampled_from([Family.DCC, Family.TCC]))
    r = draw(st.integers(1, max_r if fam is Family.DCC else 7))
    hs = [draw(st.text("01", min_size=r, max_size=r)) for _ in range(2 if fam is Family.TCC else 1)]
    return CodeSpec(fam, r, tuple(BitVector.from_str(h) for h in hs))


@settings(max_examples=60, deadline=None)
@given(circulant_specs())
def test_circulant_exact_matches_oracle(spec):
    G = build_generator(spec)
    est = circulant_exact_distance(spec)
    assert est.exact
    assert est.d == oracle_distance(G)
    _check_witness(G, est)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 8), st.data())
def test_circulant_exact_bordered(r, data):
    h = data.draw(st.text("01", min_size=r, max_size=r))
    spec = CodeSpec.bdcc(h, data.draw(st.integers(0, 1)))
    assert circulant_exact_distance(spec).d == oracle_distance(build_generator(spec))


def test_forms_skip_singular_blocks():
    # x^9 - 1 shares factors with every even-weight header, so A is singular
    assert [f.block for f in circulant_forms(CodeSpec.dcc("011101001"))] == [0]
    assert [f.block for f in circulant_forms(CodeSpec.dcc("100000000"))] == [0, 1]


def test_table_rows_exact():
    for a, b, d in [
        ("001010011011", "100100000111", 12),
        ("10010011110000", "00100001010111", 13),
        ("110010111000110", "101000100110110", 14),
    ]:
        est = circulant_exact_distance(CodeSpec.tcc(a, b))
        assert (est.d, est.exact) == (d, True)


def test_probe_and_budget_limits():
    spec = CodeSpec.tcc("110010111000110", "101000100110110")
    capped = circulant_exact_distance(spec, w_probe=3)
    assert capped.d >= 14 and not capped.exact
    budget = circulant_exact_distance(spec, max_work=200)
    assert budget.d >= 14 and not budget.exact and budget.work_units <= 200
    with pytest.raises(ValueError):
        circulant_exact_distance(spec, max_work=0)


def test_circulant_exact_thread_independent():
    spec = CodeSpec.tcc("10010011110000", "00100001010111")
    runs = [circulant_exact_distance(spec, threads=t) for t in (1, 2, 8)]
    assert len({(e.d, str(e.witness), e.work_units) for e in runs}) == 1


def test_estimate_dict_schema():
    est = brute_force_distance(build_generator(CodeSpec.dcc("0110")))
    d = est.to_dict()
    assert set(d) == {"d", "exact", "method", "witness", "work_units", "seed"}
    assert d["witness"] == str(est.witness)
