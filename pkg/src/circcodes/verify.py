"""Adjudicate a claimed minimum distance for a circulant code."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal

from .codes import CodeSpec, Family, build_generator
from .estimators import MimGaParams, MimParams, mim_estimate, mim_ga_estimate
from .exact import (
    DistanceEstimate,
    brute_force_distance,
    circulant_exact_distance,
)
from .gf2 import in_code, parity_check_from_systematic

Verdict = Literal["confirmed_exact", "upper_bound_witnessed", "refuted", "inconclusive"]

EXIT_CODES = {"confirmed_exact": 0, "upper_bound_witnessed": 0, "refuted": 2, "inconclusive": 3}


@dataclass(frozen=True)
class VerifyBudget:
    """``mode='exact'`` tries to prove the distance; ``'witness'`` only hunts for codewords."""

    mode: Literal["exact", "witness"] = "exact"
    brute_cap: int = 24
    max_work: int = 200_000_000
    w_probe: int | None = None
    mim: MimParams = field(default_factory=MimParams)
    mim_ga: MimGaParams | None = field(default_factory=lambda: MimGaParams(n_gm=1000))
    seeds: tuple[int, ...] = (0,)
    threads: int = 1


@dataclass(frozen=True)
class VerifyResult:
    verdict: Verdict
    claimed_d: int
    d_found: int | None
    estimate: DistanceEstimate | None
    evidence: tuple[DistanceEstimate, ...] = ()

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "claimed_d": self.claimed_d,
            "d_found": self.d_found,
            "exact": bool(self.estimate and self.estimate.exact),
            "estimate": None if self.estimate is None else self.estimate.to_dict(),
            "evidence": [e.to_dict() for e in self.evidence],
        }


def _witness_ok(spec: CodeSpec, est: DistanceEstimate) -> bool:
    if est.witness is None or est.d is None:
        return False
    H = parity_check_from_systematic(build_generator(spec))
    return est.witness.weight == est.d and est.witness.bits != 0 and in_code(H, est.witness)


def _exact_attempt(spec: CodeSpec, budget: VerifyBudget) -> DistanceEstimate:
    G = build_generator(spec)
    if G.nrows <= budget.brute_cap:
        return brute_force_distance(G, budget.brute_cap, budget.threads)
    return circulant_exact_distance(
        spec,
        w_probe=budget.w_probe,
        threads=budget.threads,
        brute_cap=budget.brute_cap,
        max_work=budget.max_work,
    )


def _witness_hunt(spec: CodeSpec, claimed_d: int, budget: VerifyBudget) -> list[DistanceEstimate]:
    G = build_generator(spec)
    n, k = spec.n, spec.k
    singleton = n - k + 1
    out = []
    if spec.family is not Family.BDCC and k > budget.brute_cap:
        # a cheap partial sweep often finds light words on its own
        out.append(
            circulant_exact_distance(
                spec, threads=budget.threads, max_work=min(budget.max_work, 2_000_000)
            )
        )
    # start the impulse sweep at the claimed weight
    d0 = max(1, min(claimed_d, singleton))
    for seed in budget.seeds:
        out.append(mim_estimate(G, replace(budget.mim, d0=d0, seed=seed), budget.threads))
        if budget.mim_ga is not None:
            out.append(mim_ga_estimate(G, replace(budget.mim_ga, seed=seed), budget.threads))
    return [e for e in out if e.found]


def verify_claim(spec: CodeSpec, claimed_d: int, budget: VerifyBudget | None = None) -> VerifyResult:
    budget = budget or VerifyBudget()
    evidence: list[DistanceEstimate] = []
    if budget.mode == "exact":
        est = _exact_attempt(spec, budget)
        if not _witness_ok(spec, est):
            raise AssertionError(f"exact method returned an invalid witness for {spec.label()}")
        evidence.append(est)
        if est.exact:
            verdict: Verdict = "confirmed_exact" if est.d == claimed_d else "refuted"
            return VerifyResult(verdict, claimed_d, est.d, est, tuple(evidence))
    for est in _witness_hunt(spec, claimed_d, budget):
        if not _witness_ok(spec, est):
            raise AssertionError(f"{est.method} returned an invalid witness for {spec.label()}")
        evidence.append(est)
    best = min(evidence, key=lambda e: e.d, default=None)  # first minimum wins
    if best is None:
        return VerifyResult("inconclusive", claimed_d, None, None, tuple(evidence))
    if best.d < claimed_d:
        return VerifyResult("refuted", claimed_d, best.d, best, tuple(evidence))
    if best.d == claimed_d:
        return VerifyResult("upper_bound_witnessed", claimed_d, best.d, best, tuple(evidence))
    return VerifyResult("inconclusive", claimed_d, best.d, best, tuple(evidence))
