from __future__ import annotations

import pytest

from circcodes.codes import CodeSpec
from circcodes.estimators import MimGaParams
from circcodes.verify import EXIT_CODES, VerifyBudget, verify_claim

TABLE = [
    ("001010011011", "100100000111", 12),
    ("10010011110000", "00100001010111", 13),
    ("110010111000110", "101000100110110", 14),
]


@pytest.mark.parametrize("a, b, d", TABLE)
def test_exact_confirmation(a, b, d):
    res = verify_claim(CodeSpec.tcc(a, b), d)
    assert res.verdict == "confirmed_exact" and res.exit_code == 0
    assert res.to_dict()["exact"]


@pytest.mark.parametrize("a, b, d", TABLE)
def test_exact_confirmation_without_brute_force(a, b, d):
    res = verify_claim(CodeSpec.tcc(a, b), d, VerifyBudget(brute_cap=0))
    assert res.verdict == "confirmed_exact"
    assert res.estimate.method == "circulant-exact"


def test_zero_header_refuted():
    res = verify_claim(CodeSpec.dcc("0000"), 2)
    assert (res.verdict, res.d_found, res.exit_code) == ("refuted", 1, 2)


def test_exact_value_above_claim_is_refuted():
    res = verify_claim(CodeSpec.dcc("011101001"), 5)
    assert res.verdict == "refuted" and res.d_found == 6


def test_witness_mode():
    budget = VerifyBudget(mode="witness", mim_ga=MimGaParams(n_gm=200))
    res = verify_claim(CodeSpec.dcc("011101001"), 6, budget)
    assert res.verdict == "upper_bound_witnessed" and res.d_found == 6
    res = verify_claim(CodeSpec.dcc("011101001"), 7, budget)
    assert res.verdict == "refuted"
    # witnesses heavier than the claim prove nothing either way
    res = verify_claim(CodeSpec.dcc("011101001"), 5, budget)
    assert res.verdict == "inconclusive" and res.exit_code == 3


def test_exit_codes():
    assert EXIT_CODES == {"confirmed_exact": 0, "upper_bound_witnessed": 0, "refuted": 2, "inconclusive": 3}
