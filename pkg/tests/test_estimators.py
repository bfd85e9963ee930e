from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circcodes.codes import CodeSpec, build_generator
from circcodes.estimators import (
    GaMsgParams,
    MimGaParams,
    MimParams,
    crossover,
    ga_message_distance,
    mim_estimate,
    mim_ga_estimate,
)
from circcodes.gf2 import in_code, parity_check

from .conftest import oracle_distance, random_full_rank

SMALL_GA = MimGaParams(n_gm=300)


def _valid(G, est):
    assert est.witness is not None and est.witness.weight == est.d
    assert in_code(parity_check(G), est.witness)


def test_defaults():
    p = MimParams()
    assert (p.nb_test, p.osd_order, p.d0) == (20, 2, 1)
    q = MimGaParams()
    assert (q.n_ind, q.n_gm, q.p_cr, q.p_mu, q.r_amp) == (10, 10000, 0.95, 0.05, 0.1)
    r = MimParams().resolve(18, 9)
    assert (r.d1, r.error_max) == (10, 10)


def test_param_validation():
    with pytest.raises(ValueError):
        MimParams(d0=5, d1=3).resolve(18, 9)
    with pytest.raises(ValueError):
        MimParams(d1=11).resolve(18, 9)
    with pytest.raises(ValueError):
        MimGaParams(p_cr=1.5).resolve(18, 9)
    with pytest.raises(ValueError):
        MimGaParams(n_ind=1).resolve(18, 9)
    with pytest.raises(ValueError):
        GaMsgParams(n_e=100, n_i=100).validate()


@pytest.mark.parametrize("method", ["mim", "mim-ga", "ga-msg"])
def test_small_codes(method, example1):
    G2 = build_generator(CodeSpec.dcc("011101001"))
    for G, d in [(example1, 4), (G2, 6)]:
        if method == "mim":
            est = mim_estimate(G, MimParams(seed=7))
        elif method == "mim-ga":
            est = mim_ga_estimate(G, SMALL_GA)
        else:
            est = ga_message_distance(G, GaMsgParams(seed=1))
        assert est.d == d and not est.exact
        _valid(G, est)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 8), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_estimates_never_undercut(k, extra, seed):
    G = random_full_rank(np.random.default_rng(seed), k, k + extra)
    d = oracle_distance(G)
    for est in (
        mim_estimate(G, MimParams(nb_test=3, seed=seed)),
        mim_ga_estimate(G, MimGaParams(n_gm=20, seed=seed)),
        ga_message_distance(G, GaMsgParams(n_i=20, n_gmax=10, n_e=2, seed=seed)),
    ):
        if est.d is not None:
            assert est.d >= d
            _valid(G, est)


def test_seeded_runs_repeat_and_ignore_thread_count():
    G = build_generator(CodeSpec.dcc("0110100111001"))
    a = [mim_estimate(G, MimParams(seed=5), threads=t).to_dict() for t in (1, 2, 8)]
    b = [mim_ga_estimate(G, MimGaParams(n_gm=50, seed=5), threads=t).to_dict() for t in (1, 2, 8)]
    assert a[0] == a[1] == a[2]
    assert b[0] == b[1] == b[2]
    assert ga_message_distance(G, GaMsgParams(seed=3)).to_dict() == ga_message_distance(G, GaMsgParams(seed=3)).to_dict()


def test_stop_at_ends_early(example1):
    est = mim_ga_estimate(example1, MimGaParams(stop_at=4, seed=0))
    assert est.d == 4 and est.info["generations"] < 10000


def test_mim_ga_elite_history_non_increasing():
    G = build_generator(CodeSpec.dcc("0110100111001"))
    hist = mim_ga_estimate(G, MimGaParams(n_gm=100, seed=2)).info["history"]
    assert all(a >= b for a, b in zip(hist, hist[1:]))


@given(st.sampled_from(["one_point", "two_point", "uniform"]), st.integers(2, 40), st.integers(0, 2**32 - 1))
def test_crossover_conserves_genes(kind, L, seed):
    rng = np.random.default_rng(seed)
    p1 = rng.integers(0, 2, L)
    p2 = rng.integers(0, 2, L)
    c1, c2 = crossover(p1, p2, kind, rng)
    np.testing.assert_array_equal(c1 + c2, p1 + p2)
    assert all(c1[i] in (p1[i], p2[i]) for i in range(L))


def test_crossover_cut_points():
    p1, p2 = np.zeros(6, dtype=int), np.ones(6, dtype=int)
    rng = np.random.default_rng(0)
    c1, c2 = crossover(p1, p2, "two_point", rng, cuts=(2, 4))
    assert c1.tolist() == [0, 0, 1, 1, 0, 0]
    assert c2.tolist() == [1, 1, 0, 0, 1, 1]
    with pytest.raises(ValueError):
        crossover(p1, p2, "three_point", rng)
