"""Header-space search for good double/triple circulant codes."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Literal

import numpy as np

from .codes import CodeSpec, Family, build_generator, canonicalize
from .estimators import MimGaParams, MimParams, crossover, mim_estimate, mim_ga_estimate
from .exact import DistanceEstimate, brute_force_distance
from .gf2 import BitVector, in_code, parity_check_from_systematic
from .parallel import pmap


class BoundsTable(dict):
    """``(n, k) -> (lower_bound, upper_bound)``."""

    def lookup(self, n: int, k: int) -> tuple[int, int] | None:
        return self.get((n, k))


def load_bounds(path: str | Path) -> BoundsTable:
    table = BoundsTable()
    try:
        fh = open(path)
    except OSError as exc:
        raise ValueError(f"cannot read bounds file {path}: {exc}") from None
    with fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = [f.strip() for f in text.split(",")]
            if len(fields) != 4:
                raise ValueError(f"{path}:{lineno}: expected 'n,k,lb,ub', got {text!r}")
            try:
                n, k, lb, ub = (int(f) for f in fields)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-integer field in {text!r}") from None
            if lb > ub:
                raise ValueError(f"{path}:{lineno}: lb={lb} > ub={ub}")
            if not (1 <= k <= n and 1 <= lb and ub <= n - k + 1):
                raise ValueError(f"{path}:{lineno}: need 1 <= lb <= ub <= n-k+1")
            table[(n, k)] = (lb, ub)
    return table


@dataclass(frozen=True)
class HeaderSearchParams:
    family: Family
    r: int
    algo: Literal["ga", "random"] = "random"
    # GA variant
    n_i: int = 1000
    n_e: int = 100
    generations: int = 75
    p_c: float = 0.80
    p_m: float = 0.02
    tournament_size: int = 2
    # random variant
    max_draws: int = 1000
    inject: tuple[str, ...] = ()
    # fitness estimator: a cheap pass for search, a full pass before emitting
    estimator: Literal["mim", "mim-ga"] = "mim"
    search_mim: MimParams = field(default_factory=lambda: MimParams(nb_test=3))
    confirm_mim: MimParams = field(default_factory=MimParams)
    search_mim_ga: MimGaParams = field(default_factory=lambda: MimGaParams(n_gm=200))
    confirm_mim_ga: MimGaParams = field(default_factory=lambda: MimGaParams(n_gm=2000))
    # impulse sweeps start at the table's lower bound when one is known
    d0_from_lb: bool = True
    exact_cap: int = 20
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if not 0 <= self.n_e < self.n_i:
            raise ValueError("need 0 <= n_e < n_i")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")

    @property
    def n(self) -> int:
        return {Family.DCC: 2 * self.r, Family.TCC: 3 * self.r, Family.BDCC: 2 * (self.r + 1)}[self.family]

    @property
    def k(self) -> int:
        return self.r + 1 if self.family is Family.BDCC else self.r

    @property
    def header_length(self) -> int:
        return 2 * self.r if self.family is Family.TCC else self.r


@dataclass(frozen=True)
class DiscoveredCode:
    spec: CodeSpec
    estimate: DistanceEstimate
    lb: int
    ub: int
    verification: Literal["none", "witness", "exact"]
    timestamp: str
    master_seed: int
    search_d: int | None = None
    exact_d: int | None = None
    origin: tuple[int, int] = (0, 0)  # (generation or 0, individual or draw index)

    def to_dict(self) -> dict:
        d = {**self.spec.to_dict(), **self.estimate.to_dict()}
        d["params"] = self.estimate.info.get("params")
        d.update(
            lb=self.lb,
            ub=self.ub,
            verification=self.verification,
            timestamp=self.timestamp,
            master_seed=self.master_seed,
            search_d=self.search_d,
            exact_d=self.exact_d,
            origin=list(self.origin),
        )
        return d


def derive_seed(master: int, key: str) -> int:
    h = hashlib.blake2b(f"{master}:{key}".encode(), digest_size=8).digest()
    return int.from_bytes(h, "little") >> 1


def spec_from_bits(family: Family, r: int, bits: np.ndarray) -> CodeSpec:
    if family is Family.TCC:
        return CodeSpec(family, r, (BitVector.from_array(bits[:r]), BitVector.from_array(bits[r:])))
    return CodeSpec(family, r, (BitVector.from_array(bits),))


def random_headers(length: int, count: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Independent uniform draws from {0,1}^length."""
    return [rng.integers(0, 2, size=length, dtype=np.uint8) for _ in range(count)]


def random_weight_header(length: int, rng: np.random.Generator) -> np.ndarray:
    h = np.zeros(length, dtype=np.uint8)
    w = int(rng.integers(1, length + 1))
    h[rng.choice(length, size=w, replace=False)] = 1
    return h


class _Evaluator:
    """Fitness and confirmation keyed by the canonical header, memoized per run."""

    def __init__(self, p: HeaderSearchParams, lb: int, ub: int) -> None:
        self.p = p
        self.lb, self.ub = lb, ub
        self.fitness_cache: dict[str, DistanceEstimate] = {}
        self.confirm_cache: dict[str, tuple[DistanceEstimate, int | None]] = {}
        self.evaluations = 0

    def _bounds_kw(self) -> dict:
        if not self.p.d0_from_lb:
            return {}
        singleton = self.p.n - self.p.k + 1
        d1 = min(self.ub, singleton)
        return {"d0": min(self.lb, d1), "d1": d1}

    def _run(self, spec: CodeSpec, confirm: bool) -> DistanceEstimate:
        key = spec.header_bits()
        G = build_generator(spec)
        seed = derive_seed(self.p.seed, ("confirm:" if confirm else "search:") + key)
        if self.p.estimator == "mim":
            base = self.p.confirm_mim if confirm else self.p.search_mim
            return mim_estimate(G, replace(base, seed=seed, **self._bounds_kw()))
        base_ga = self.p.confirm_mim_ga if confirm else self.p.search_mim_ga
        return mim_ga_estimate(G, replace(base_ga, seed=seed, **self._bounds_kw()))

    def fitness(self, specs: list[CodeSpec]) -> list[DistanceEstimate]:
        canon = [canonicalize(s) for s in specs]
        todo: dict[str, CodeSpec] = {}
        for c in canon:
            key = c.header_bits()
            if key not in self.fitness_cache and key not in todo:
                todo[key] = c
        results = pmap(lambda c: self._run(c, confirm=False), list(todo.values()), self.p.threads)
        for key, est in zip(todo, results):
            self.fitness_cache[key] = est
        self.evaluations += len(specs)
        return [self.fitness_cache[c.header_bits()] for c in canon]

    def confirm(self, spec: CodeSpec) -> tuple[DistanceEstimate, int | None]:
        key = spec.header_bits()
        if key not in self.confirm_cache:
            est = self._run(spec, confirm=True)
            exact_d = None
            if spec.k <= self.p.exact_cap:
                exact_d = brute_force_distance(build_generator(spec)).d
            self.confirm_cache[key] = (est, exact_d)
        return self.confirm_cache[key]


def _score(est: DistanceEstimate) -> int:
    return -1 if est.d is None else est.d


class _Emitter:
    def __init__(self, p: HeaderSearchParams, ev: _Evaluator, timestamp: str) -> None:
        self.p, self.ev = p, ev
        self.timestamp = timestamp
        self.seen: set[str] = set()

    def consider(self, spec: CodeSpec, est: DistanceEstimate, origin: tuple[int, int]) -> DiscoveredCode | None:
        if _score(est) < self.ev.lb:
            return None
        canon = canonicalize(spec)
        key = canon.header_bits()
        if key in self.seen:
            return None
        self.seen.add(key)
        confirmed, exact_d = self.ev.confirm(canon)
        if confirmed.d is None or confirmed.d < self.ev.lb:
            return None
        if exact_d is not None and exact_d < self.ev.lb:
            return None
        H = parity_check_from_systematic(build_generator(canon))
        w = confirmed.witness
        if w is None or w.weight != confirmed.d or not in_code(H, w):
            raise AssertionError(f"confirmation witness failed the parity check for {canon.label()}")
        return DiscoveredCode(
            canon,
            confirmed,
            self.ev.lb,
            self.ev.ub,
            "exact" if exact_d is not None else "witness",
            self.timestamp,
            self.p.seed,
            search_d=est.d,
            exact_d=exact_d,
            origin=origin,
        )


def resolve_bounds(p: HeaderSearchParams, bounds: BoundsTable | None, lb: int | None, ub: int | None) -> tuple[int, int]:
    singleton = p.n - p.k + 1
    entry = bounds.lookup(p.n, p.k) if bounds is not None else None
    if entry is None and lb is None:
        raise KeyError(f"no bounds entry for (n={p.n}, k={p.k}); pass an explicit lb")
    t_lb, t_ub = entry if entry is not None else (lb, singleton)
    lb = t_lb if lb is None else lb
    ub = t_ub if ub is None else ub
    if not 1 <= lb <= singleton:
        raise ValueError(f"lb={lb} outside 1..{singleton}")
    return lb, max(lb, min(ub, singleton))


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def random_header_search(
    p: HeaderSearchParams,
    bounds: BoundsTable | None = None,
    lb: int | None = None,
    ub: int | None = None,
    stats: dict | None = None,
) -> Iterator[DiscoveredCode]:
    """Uniform random headers; those whose estimate reaches ``lb`` are emitted."""
    lb, ub = resolve_bounds(p, bounds, lb, ub)
    ev = _Evaluator(p, lb, ub)
    em = _Emitter(p, ev, _now())
    rng = np.random.default_rng(p.seed)
    L = p.header_length
    draws: list[np.ndarray] = [np.array([int(c) for c in h], dtype=np.uint8) for h in p.inject]
    for h in draws:
        if len(h) != L:
            raise ValueError(f"injected header has length {len(h)}, expected {L}")
    draws += random_headers(L, p.max_draws, rng)
    batch = max(1, 8 * p.threads)
    for start in range(0, len(draws), batch):
        chunk = draws[start : start + batch]
        specs = [spec_from_bits(p.family, p.r, h) for h in chunk]
        for i, (spec, est) in enumerate(zip(specs, ev.fitness(specs)), start=start):
            found = em.consider(spec, est, (0, i))
            if found is not None:
                yield found
    if stats is not None:
        stats.update(evaluations=ev.evaluations, distinct=len(ev.fitness_cache), lb=lb, ub=ub)


def ga_header_search(
    p: HeaderSearchParams,
    bounds: BoundsTable | None = None,
    lb: int | None = None,
    ub: int | None = None,
    stats: dict | None = None,
) -> Iterator[DiscoveredCode]:
    """Genetic search over headers (concatenated a||b for triple circulant codes)."""
    if p.family is Family.BDCC:
        raise ValueError("the GA variant covers dcc and tcc only; use random search for bdcc")
    lb, ub = resolve_bounds(p, bounds, lb, ub)
    ev = _Evaluator(p, lb, ub)
    em = _Emitter(p, ev, _now())
    rng = np.random.default_rng(p.seed)
    L = p.header_length

    def evaluate(pop: list[np.ndarray]) -> list[DistanceEstimate]:
        return ev.fitness([spec_from_bits(p.family, p.r, h) for h in pop])

    def tournament(fit: list[int]) -> int:
        picks = [int(x) for x in rng.integers(len(fit), size=p.tournament_size)]
        return max(picks, key=lambda i: (fit[i], -i))

    pop = [random_weight_header(L, rng) for _ in range(p.n_i)]
    ests = evaluate(pop)
    history = []
    for gen in range(p.generations):
        for i, (h, est) in enumerate(zip(pop, ests)):
            found = em.consider(spec_from_bits(p.family, p.r, h), est, (gen, i))
            if found is not None:
                yield found
        fit = [_score(e) for e in ests]
        order = sorted(range(len(pop)), key=lambda i: -fit[i])
        pop = [pop[i] for i in order]
        ests = [ests[i] for i in order]
        fit = [fit[i] for i in order]
        history.append(fit[0])
        nxt = [h.copy() for h in pop[: p.n_e]]
        nxt_est = ests[: p.n_e]
        pairs = []
        while len(nxt) + len(pairs) < p.n_i:
            a, b = pop[tournament(fit)], pop[tournament(fit)]
            if rng.random() < p.p_c:
                c1, c2 = crossover(a, b, "two_point", rng)
                c1 = c1 ^ (rng.random(L) < p.p_m).astype(np.uint8)
                c2 = c2 ^ (rng.random(L) < p.p_m).astype(np.uint8)
            else:
                c1, c2 = a.copy(), b.copy()
            pairs.append((c1, c2))
        flat = [c for pair in pairs for c in pair]
        flat_est = evaluate(flat)
        for j in range(len(pairs)):
            e1, e2 = flat_est[2 * j], flat_est[2 * j + 1]
            if _score(e2) > _score(e1):
                nxt.append(pairs[j][1])
                nxt_est.append(e2)
            else:
                nxt.append(pairs[j][0])
                nxt_est.append(e1)
        pop, ests = nxt, nxt_est
    for i, (h, est) in enumerate(zip(pop, ests)):
        found = em.consider(spec_from_bits(p.family, p.r, h), est, (p.generations, i))
        if found is not None:
            yield found
    if stats is not None:
        stats.update(
            evaluations=ev.evaluations,
            distinct=len(ev.fitness_cache),
            lb=lb,
            ub=ub,
            best_history=history,
        )
