"""Stochastic minimum-distance estimators.

All three return a :class:`DistanceEstimate` whose witness is an explicit
codeword, so every reported ``d`` is an upper bound on the true distance.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Literal

import numpy as np

from .exact import DistanceEstimate
from .gf2 import BinaryMatrix, BitVector
from .osd import OsdDecoder
from .parallel import pmap

CrossoverKind = Literal["one_point", "two_point", "uniform"]


def _singleton(n: int, k: int) -> int:
    return n - k + 1


@dataclass(frozen=True)
class MimParams:
    nb_test: int = 20
    osd_order: int = 2
    d0: int = 1
    d1: int | None = None  # None: Singleton bound n - k + 1
    error_max: int | None = None  # None: ceil(d1) capped at n
    seed: int = 0

    def resolve(self, n: int, k: int) -> MimParams:
        d1 = _singleton(n, k) if self.d1 is None else self.d1
        error_max = min(math.ceil(d1), n) if self.error_max is None else self.error_max
        p = MimParams(self.nb_test, self.osd_order, self.d0, d1, error_max, self.seed)
        p.validate(n, k)
        return p

    def validate(self, n: int, k: int) -> None:
        assert self.d1 is not None and self.error_max is not None
        if not 1 <= self.d0 <= self.d1 <= _singleton(n, k):
            raise ValueError(f"need 1 <= d0 <= d1 <= n-k+1, got d0={self.d0}, d1={self.d1}")
        if not 1 <= self.error_max <= n:
            raise ValueError("error_max must be in 1..n")
        if self.nb_test < 1:
            raise ValueError("nb_test must be >= 1")
        if not 0 <= self.osd_order <= k:
            raise ValueError("osd_order must be in 0..k")


@dataclass(frozen=True)
class MimGaParams:
    n_ind: int = 10
    n_gm: int = 10000
    p_cr: float = 0.95
    p_mu: float = 0.05
    r_amp: float = 0.1
    d0: int = 1
    d1: int | None = None
    # two-position impulses; wide impulses often never leave the zero word
    nb_error: int = 2
    osd_order: int = 2
    seed: int = 0
    mutation_per_gene: bool = True
    # stop once d_t <= stop_at (pass a proven lower bound only)
    stop_at: int | None = None

    def resolve(self, n: int, k: int) -> MimGaParams:
        d1 = _singleton(n, k) if self.d1 is None else self.d1
        p = MimGaParams(**{**asdict(self), "d1": d1})
        p.validate(n, k)
        return p

    def validate(self, n: int, k: int) -> None:
        assert self.d1 is not None
        if not (0 <= self.p_cr <= 1 and 0 <= self.p_mu <= 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if self.n_ind < 2:
            raise ValueError("n_ind must be >= 2")
        if self.r_amp <= 0:
            raise ValueError("r_amp must be > 0")
        if not 1 <= self.d0 <= self.d1 <= _singleton(n, k):
            raise ValueError(f"need 1 <= d0 <= d1 <= n-k+1, got d0={self.d0}, d1={self.d1}")
        if not 1 <= self.nb_error <= n:
            raise ValueError("nb_error must be in 1..n")


@dataclass(frozen=True)
class GaMsgParams:
    n_i: int = 100
    n_gmax: int = 100
    n_e: int = 10
    p_c: float = 0.8
    p_m: float = 0.05
    crossover_kind: CrossoverKind = "two_point"
    seed: int = 0

    def validate(self) -> None:
        if not 0 <= self.n_e < self.n_i:
            raise ValueError("need 0 <= n_e < n_i")
        if not (0 <= self.p_c <= 1 and 0 <= self.p_m <= 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if self.crossover_kind not in ("one_point", "two_point", "uniform"):
            raise ValueError(f"unknown crossover kind {self.crossover_kind!r}")


def crossover(
    parent1: np.ndarray,
    parent2: np.ndarray,
    kind: CrossoverKind,
    rng: np.random.Generator,
    cuts: tuple[int, ...] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Two children from two equal-length parents.

    ``cuts`` fixes the cut point(s) instead of drawing them.
    """
    if parent1.shape != parent2.shape:
        raise ValueError("parents have different lengths")
    L = parent1.shape[0]
    if kind == "one_point":
        (c,) = cuts if cuts is not None else (int(rng.integers(1, L)) if L > 1 else 0,)
        return (
            np.concatenate((parent1[:c], parent2[c:])),
            np.concatenate((parent2[:c], parent1[c:])),
        )
    if kind == "two_point":
        if cuts is None:
            a, b = sorted(int(x) for x in rng.choice(L + 1, size=2, replace=False))
        else:
            a, b = cuts
        c1, c2 = parent1.copy(), parent2.copy()
        c1[a:b], c2[a:b] = parent2[a:b], parent1[a:b]
        return c1, c2
    if kind == "uniform":
        mask = rng.random(L) < 0.5
        return np.where(mask, parent2, parent1), np.where(mask, parent1, parent2)
    raise ValueError(f"unknown crossover kind {kind!r}")


def _random_impulse(n: int, nb_error: int, amplitude: float, rng: np.random.Generator):
    positions = rng.choice(n, size=nb_error, replace=False)
    cuts = np.sort(rng.uniform(0.0, amplitude, size=nb_error - 1))
    shares = np.diff(np.concatenate(([0.0], cuts, [amplitude])))
    return positions, shares


class _Tracker:
    """Running minimum-weight nonzero codeword (first found wins ties)."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.d: int | None = None
        self.witness: np.ndarray | None = None

    def offer(self, cw: np.ndarray) -> int:
        w = int(cw.sum())
        if w and (self.d is None or w < self.d):
            self.d = w
            self.witness = cw.copy()
        return w

    def estimate(self, method: str, work: int, seed: int, **info) -> DistanceEstimate:
        wit = None if self.witness is None else BitVector.from_array(self.witness)
        return DistanceEstimate(self.d, wit, method, exact=False, work_units=work, seed=seed, info=info)


def mim_estimate(G: BinaryMatrix, params: MimParams | None = None, threads: int = 1) -> DistanceEstimate:
    """Multiple impulse method.

    Impulses of growing total amplitude, split over ``error_max`` down to 1
    random positions, are subtracted from the modulated all-zero word; the
    lightest nonzero OSD output is the estimate.  Each trial stops at its
    first departure from the zero word and later trials only probe
    amplitudes below that onset.
    """
    k, n = G.shape
    p = (params or MimParams()).resolve(n, k)
    dec = OsdDecoder(G, p.osd_order)
    track = _Tracker(n)
    a_min = p.d1 + 0.5
    decodes = 0
    onsets = []
    for trial in range(p.nb_test):
        rng = np.random.default_rng([p.seed, trial])
        amp = p.d0 - 0.5
        departed = False
        while not departed and amp <= a_min - 1.0:
            amp += 1.0
            batch = []
            for nb_error in range(p.error_max, 0, -1):
                pos, shares = _random_impulse(n, nb_error, amp, rng)
                # every symbol stays positive: the zero word is the unique best candidate
                if shares.max() < 1.0:
                    continue
                y = np.ones(n)
                y[pos] -= shares
                batch.append(y)
            outputs = pmap(lambda y: dec.decode_bits(y)[0], batch, threads)
            decodes += len(batch)
            for cw in outputs:
                if track.offer(cw):
                    departed = True
        if departed:
            onsets.append(amp)
        a_min = amp
    return track.estimate("mim", decodes, p.seed, params=asdict(p), onsets=onsets)


def _impulse_individual(n: int, p: MimGaParams, rng: np.random.Generator) -> np.ndarray:
    amplitude = rng.uniform(p.d0, p.d1)
    pos, shares = _random_impulse(n, p.nb_error, amplitude, rng)
    y = np.ones(n)
    y[pos] -= shares
    return y


def mim_ga_estimate(G: BinaryMatrix, params: MimGaParams | None = None, threads: int = 1) -> DistanceEstimate:
    """Genetic search over impulse vectors; fitness is the OSD output weight."""
    k, n = G.shape
    p = (params or MimGaParams()).resolve(n, k)
    dec = OsdDecoder(G, p.osd_order)
    rng = np.random.default_rng(p.seed)
    track = _Tracker(n)
    decodes = 0

    def fitness_of(ys: list[np.ndarray]) -> list[int]:
        nonlocal decodes
        outs = pmap(lambda y: dec.decode_bits(y)[0], ys, threads)
        decodes += len(ys)
        fits = []
        for cw in outs:
            w = track.offer(cw)
            fits.append(w if w else n)
        return fits

    pop = [_impulse_individual(n, p, rng) for _ in range(p.n_ind)]
    fit = fitness_of(pop)
    history = []
    generations = 0
    for _ in range(p.n_gm):
        if p.stop_at is not None and track.d is not None and track.d <= p.stop_at:
            break
        order = sorted(range(p.n_ind), key=lambda i: fit[i])
        pop = [pop[i] for i in order]
        fit = [fit[i] for i in order]
        history.append(fit[0])
        new_pop = [pop[0]]
        new_fit: list[int | None] = [fit[0]]
        for _ in range(1, p.n_ind):
            i1, i2 = (int(x) for x in rng.integers(p.n_ind, size=2))
            if rng.random() < p.p_cr:
                child, _ = crossover(pop[i1], pop[i2], "one_point", rng)
                if p.mutation_per_gene:
                    mask = rng.random(n) < p.p_mu
                    signs = np.where(rng.random(n) < 0.5, -1.0, 1.0)
                    child = child + np.where(mask, signs * p.r_amp, 0.0)
                elif rng.random() < p.p_mu:
                    g = int(rng.integers(n))
                    child = child.copy()
                    child[g] += p.r_amp if rng.random() < 0.5 else -p.r_amp
                new_pop.append(child)
                new_fit.append(None)
            else:
                pick = i1 if rng.random() < 0.5 else i2
                new_pop.append(pop[pick])
                new_fit.append(fit[pick])
        todo = [i for i, f in enumerate(new_fit) if f is None]
        for i, f in zip(todo, fitness_of([new_pop[i] for i in todo])):
            new_fit[i] = f
        pop, fit = new_pop, [int(f) for f in new_fit]  # type: ignore[arg-type]
        generations += 1
    return track.estimate(
        "mim-ga", decodes, p.seed, params=asdict(p), generations=generations, history=history
    )


def _random_weight_words(count: int, length: int, rng: np.random.Generator) -> np.ndarray:
    """Rows with weight uniform in [1, length] and uniformly placed ones."""
    out = np.zeros((count, length), dtype=np.uint8)
    for row in out:
        w = int(rng.integers(1, length + 1))
        row[rng.choice(length, size=w, replace=False)] = 1
    return out


def ga_message_distance(G: BinaryMatrix, params: GaMsgParams | None = None) -> DistanceEstimate:
    """Genetic search over messages; fitness is the encoded weight (0 counts as n)."""
    p = params or GaMsgParams()
    p.validate()
    k, n = G.shape
    Ga = G.to_array().astype(np.int64)
    rng = np.random.default_rng(p.seed)
    track = _Tracker(n)
    evaluations = 0

    def fitness(pop: np.ndarray) -> np.ndarray:
        nonlocal evaluations
        cws = (pop.astype(np.int64) @ Ga) & 1
        evaluations += len(pop)
        w = cws.sum(axis=1)
        for i in np.argsort(w, kind="stable"):
            if w[i]:
                track.offer(cws[i].astype(np.uint8))
                break
        return np.where(w == 0, n, w)

    def tournament(fit: np.ndarray) -> int:
        a, b = (int(x) for x in rng.integers(p.n_i, size=2))
        return a if (fit[a], a) <= (fit[b], b) else b

    pop = _random_weight_words(p.n_i, k, rng)
    history = []
    for _ in range(p.n_gmax):
        fit = fitness(pop)
        order = np.argsort(fit, kind="stable")
        pop, fit = pop[order], fit[order]
        history.append(int(fit[0]))
        nxt = [pop[i].copy() for i in range(p.n_e)]
        while len(nxt) < p.n_i:
            a, b = pop[tournament(fit)], pop[tournament(fit)]
            if rng.random() < p.p_c:
                for ch in crossover(a, b, p.crossover_kind, rng):
                    flips = (rng.random(k) < p.p_m).astype(np.uint8)
                    if len(nxt) < p.n_i:
                        nxt.append(ch ^ flips)
            else:
                nxt.append((a if rng.random() < 0.5 else b).copy())
        pop = np.array(nxt, dtype=np.uint8)
    fitness(pop)
    return track.estimate("ga-msg", evaluations, p.seed, params=asdict(p), history=history)
