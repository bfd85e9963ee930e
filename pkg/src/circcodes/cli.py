"""``circcodes`` command line: construct, distance, search, verify, bench."""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .codes import CodeSpec, Family, build_generator, load_header_file
from .estimators import GaMsgParams, MimGaParams, MimParams, ga_message_distance, mim_estimate, mim_ga_estimate
from .exact import (
    BRUTE_FORCE_CAP,
    DistanceEstimate,
    brute_force_distance,
    chen_distance,
    circulant_exact_distance,
)
from .gf2 import BinaryMatrix, in_code, parity_check, systematize
from .ledger import Ledger, LedgerRecord, default_ledger_path
from .osd import OsdDecoder
from .search import BoundsTable, HeaderSearchParams, ga_header_search, load_bounds, random_header_search
from .verify import VerifyBudget, verify_claim

METHODS = ("brute", "chen", "circulant-exact", "ga-msg", "mim", "mim-ga")
STOCHASTIC = {"ga-msg", "mim", "mim-ga"}
MAX_SEED = 2**64 - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _family(text: str) -> Family:
    try:
        return Family.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown family {text!r} (dcc, bdcc, tcc)") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=_seed, default=None, help="master seed (printed when omitted)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--ledger", type=Path, default=None, help="ledger path (default: $CIRCCODES_LEDGER)")
    p.add_argument("--bounds", type=Path, default=None, help="CSV of n,k,lb,ub")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--config", type=Path, default=None, help="key=value file of flag defaults")
    return p


def _code_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", type=_family, default=None, help="dcc, bdcc or tcc")
    p.add_argument("--header", default=None)
    p.add_argument("--header-a", default=None)
    p.add_argument("--header-b", default=None)
    p.add_argument("--border-corner", type=int, default=0, choices=(0, 1))


def _mim_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("MIM / MIM-GA")
    g.add_argument("--nb-test", type=int, default=20)
    g.add_argument("--osd-order", type=int, default=2)
    g.add_argument("--d0", type=int, default=None)
    g.add_argument("--d1", type=int, default=None)
    g.add_argument("--error-max", type=int, default=None)
    g.add_argument("--n-ind", type=int, default=10)
    g.add_argument("--n-gm", type=int, default=10000)
    g.add_argument("--p-cr", type=float, default=0.95)
    g.add_argument("--p-mu", type=float, default=0.05)
    g.add_argument("--r-amp", type=float, default=0.1)
    g.add_argument("--nb-error", type=int, default=2)
    g.add_argument("--stop-at", type=int, default=None, help="MIM-GA stops at this weight (a proven lower bound)")


def _method_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("exact methods")
    g.add_argument("--brute-cap", type=int, default=BRUTE_FORCE_CAP)
    g.add_argument("--r-cap", type=int, default=None)
    g.add_argument("--w-probe", type=int, default=None)
    g.add_argument("--max-work", type=int, default=None)
    _mim_flags(p)
    g = p.add_argument_group("GA over messages")
    g.add_argument("--n-i", type=int, default=100)
    g.add_argument("--n-gmax", type=int, default=100)
    g.add_argument("--n-e", type=int, default=10)
    g.add_argument("--p-c", type=float, default=0.8)
    g.add_argument("--p-m", type=float, default=0.05)
    g.add_argument("--crossover", choices=("one_point", "two_point", "uniform"), default="two_point")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = _common()
    top = _Parser(prog="circcodes", description=__doc__)
    top.add_argument("--version", action="version", version=f"circcodes {__version__}")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs = {}

    p = sub.add_parser("construct", parents=[common], help="print a generator matrix")
    _code_flags(p)
    p.add_argument("--out", type=Path, default=None)
    subs["construct"] = p

    p = sub.add_parser("distance", parents=[common], help="estimate or compute the minimum distance")
    _code_flags(p)
    p.add_argument("--matrix", type=Path, default=None)
    p.add_argument("--method", choices=METHODS, default="mim")
    _method_flags(p)
    p.add_argument("--osd-debug", default=None, metavar="Y",
                   help="decode one comma-separated soft vector and dump the OSD internals")  # fmt: skip
    subs["distance"] = p

    p = sub.add_parser("search", parents=[common], help="search headers for codes meeting a lower bound")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--algo", choices=("ga", "random"), default="random")
    p.add_argument("--max", dest="max_draws", type=int, default=1000)
    p.add_argument("--lb", type=int, default=None)
    p.add_argument("--ub", type=int, default=None)
    p.add_argument("--generations", type=int, default=75)
    p.add_argument("--n-i", type=int, default=1000)
    p.add_argument("--n-e", type=int, default=100)
    p.add_argument("--p-c", type=float, default=0.80)
    p.add_argument("--p-m", type=float, default=0.02)
    p.add_argument("--inject", action="append", default=[], metavar="HEADER")
    p.add_argument("--estimator", choices=("mim", "mim-ga"), default="mim")
    p.add_argument("--search-nb-test", type=int, default=3)
    p.add_argument("--confirm-nb-test", type=int, default=20)
    p.add_argument("--exact-cap", type=int, default=20)
    subs["search"] = p

    p = sub.add_parser("verify", parents=[common], help="check a claimed minimum distance")
    _code_flags(p)
    p.add_argument("--header-file", type=Path, default=None, help="lines: family r header [header_b] claimed_d")
    p.add_argument("--claim", type=int, default=None)
    p.add_argument("--budget", choices=("exact", "witness"), default="exact")
    p.add_argument("--brute-cap", type=int, default=24)
    p.add_argument("--max-work", type=int, default=200_000_000)
    p.add_argument("--w-probe", type=int, default=None)
    p.add_argument("--seeds", type=int, default=1, help="number of estimator seeds (seed, seed+1, ...)")
    p.add_argument("--n-gm", type=int, default=1000)
    subs["verify"] = p

    p = sub.add_parser("bench", parents=[common], help="compare estimators on matrix files")
    p.add_argument("--matrix", type=Path, nargs="+", required=True)
    p.add_argument("--methods", default="mim,mim-ga")
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--stop-at-lb", action="store_true", help="MIM-GA stops once it reaches the bounds-file lb")
    _method_flags(p)
    subs["bench"] = p
    return top, subs


# --- config -----------------------------------------------------------------


def read_config(path: Path) -> dict[str, str]:
    out = {}
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        if "=" not in text:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in text.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _apply_config(cfg: dict[str, str], subs: dict[str, argparse.ArgumentParser]) -> None:
    known = set()
    for p in subs.values():
        defaults = {}
        for action in p._actions:
            if action.dest not in cfg:
                continue
            known.add(action.dest)
            raw = cfg[action.dest]
            if isinstance(action, argparse._StoreTrueAction):
                value = raw.lower() in ("1", "true", "yes", "on")
            elif isinstance(action, argparse._AppendAction):
                value = [v for v in raw.split(",") if v]
            else:
                try:
                    value = action.type(raw) if action.type else raw
                except (ValueError, argparse.ArgumentTypeError) as exc:
                    raise UsageError(f"config {action.dest}: {exc}") from None
            defaults[action.dest] = value
        p.set_defaults(**defaults)
    unknown = set(cfg) - known
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")


# --- helpers ----------------------------------------------------------------


def _ensure_seed(args: argparse.Namespace) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(63)
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _spec_from_args(args: argparse.Namespace) -> CodeSpec:
    if args.family is None:
        raise UsageError("--family is required")
    if args.family is Family.TCC:
        if args.header_a is None or args.header_b is None:
            raise UsageError("tcc needs --header-a and --header-b")
        return CodeSpec.tcc(args.header_a, args.header_b)
    header = args.header if args.header is not None else args.header_a
    if header is None:
        raise UsageError(f"{args.family.value} needs --header")
    if args.family is Family.BDCC:
        return CodeSpec.bdcc(header, args.border_corner)
    return CodeSpec.dcc(header)


def _load_matrix(path: Path) -> BinaryMatrix:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read matrix {path}: {exc}") from None
    return BinaryMatrix.from_text(text)


def _log(record: dict) -> None:
    print(json.dumps(record, sort_keys=True, default=str), file=sys.stderr)


def _emit(args: argparse.Namespace, obj: dict, text: str) -> None:
    print(json.dumps(obj, sort_keys=True) if args.json else text)


def _bounds(args: argparse.Namespace) -> BoundsTable | None:
    return None if args.bounds is None else load_bounds(args.bounds)


def _mim_params(args: argparse.Namespace, seed: int, n: int, k: int, bounds: BoundsTable | None) -> MimParams:
    d0, d1 = args.d0, args.d1
    entry = bounds.lookup(n, k) if bounds is not None else None
    if entry is not None:
        d0 = entry[0] if d0 is None else d0
        d1 = entry[1] if d1 is None else d1
    return MimParams(args.nb_test, args.osd_order, d0 or 1, d1, args.error_max, seed)


def _mim_ga_params(args: argparse.Namespace, seed: int, n: int, k: int, bounds: BoundsTable | None) -> MimGaParams:
    m = _mim_params(args, seed, n, k, bounds)
    stop_at = args.stop_at
    if getattr(args, "stop_at_lb", False) and bounds is not None and bounds.lookup(n, k) is not None:
        stop_at = bounds.lookup(n, k)[0]
    return MimGaParams(
        n_ind=args.n_ind,
        n_gm=args.n_gm,
        p_cr=args.p_cr,
        p_mu=args.p_mu,
        r_amp=args.r_amp,
        d0=m.d0,
        d1=m.d1,
        nb_error=args.nb_error,
        osd_order=args.osd_order,
        seed=seed,
        stop_at=stop_at,
    )


def run_method(
    method: str,
    G: BinaryMatrix,
    spec: CodeSpec | None,
    args: argparse.Namespace,
    seed: int | None,
    bounds: BoundsTable | None = None,
) -> DistanceEstimate:
    k, n = G.shape
    if method == "brute":
        return brute_force_distance(G, args.brute_cap, args.threads)
    if method == "chen":
        form = systematize(G)
        if form.rank < k:
            raise ValueError("generator rows are linearly dependent")
        est = chen_distance(form.matrix, args.r_cap, threads=args.threads)
        wit = form.unpermute(est.witness) if est.witness is not None else None
        return replace(est, witness=wit)
    if method == "circulant-exact":
        if spec is None:
            raise UsageError("circulant-exact needs --family/--header input, not --matrix")
        return circulant_exact_distance(
            spec, args.w_probe, args.threads, args.brute_cap, args.max_work
        )
    assert seed is not None
    if method == "ga-msg":
        return ga_message_distance(
            G, GaMsgParams(args.n_i, args.n_gmax, args.n_e, args.p_c, args.p_m, args.crossover, seed)
        )
    if method == "mim":
        return mim_estimate(G, _mim_params(args, seed, n, k, bounds), args.threads)
    if method == "mim-ga":
        return mim_ga_estimate(G, _mim_ga_params(args, seed, n, k, bounds), args.threads)
    raise UsageError(f"unknown method {method!r}")


def _check_witness(G: BinaryMatrix, est: DistanceEstimate) -> None:
    if est.witness is None:
        return
    if est.witness.weight != est.d or not in_code(parity_check(G), est.witness):
        raise AssertionError(f"{est.method} produced an invalid witness")


def _estimate_log(est: DistanceEstimate, wall: float, **extra) -> dict:
    return {
        "method": est.method,
        "seed": est.seed,
        "params": est.info.get("params"),
        "d": est.d,
        "witness": None if est.witness is None else str(est.witness),
        "work_units": est.work_units,
        "wall_time": round(wall, 6),
        **extra,
    }


# --- commands ---------------------------------------------------------------


def cmd_construct(args: argparse.Namespace) -> int:
    G = build_generator(_spec_from_args(args))
    text = G.to_text()
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_distance(args: argparse.Namespace) -> int:
    if (args.matrix is None) == (args.family is None):
        raise UsageError("give exactly one of --matrix or --family/--header")
    spec = None if args.matrix is not None else _spec_from_args(args)
    G = _load_matrix(args.matrix) if spec is None else build_generator(spec)
    if args.osd_debug is not None:
        y = np.array([float(v) for v in args.osd_debug.split(",")])
        res = OsdDecoder(G, args.osd_order).decode(y)
        print(json.dumps(res.debug_dict(), sort_keys=True))
        return 0
    seed = _ensure_seed(args) if args.method in STOCHASTIC else args.seed
    t0 = time.perf_counter()
    est = run_method(args.method, G, spec, args, seed, _bounds(args))
    wall = time.perf_counter() - t0
    _check_witness(G, est)
    _log(_estimate_log(est, wall, command="distance"))
    out = est.to_dict()
    if est.info.get("params") is not None:
        out["params"] = est.info["params"]
    flag = "exact" if est.exact else "upper bound"
    _emit(args, out, f"d={est.d} ({flag}) method={est.method} witness={est.witness}")
    return 0


def cmd_search(args: argparse.Namespace, argv: list[str]) -> int:
    seed = _ensure_seed(args)
    bounds = _bounds(args)
    p = HeaderSearchParams(
        args.family,
        args.r,
        algo=args.algo,
        n_i=args.n_i,
        n_e=args.n_e,
        generations=args.generations,
        p_c=args.p_c,
        p_m=args.p_m,
        max_draws=args.max_draws,
        inject=tuple(args.inject),
        estimator=args.estimator,
        search_mim=MimParams(nb_test=args.search_nb_test),
        confirm_mim=MimParams(nb_test=args.confirm_nb_test),
        exact_cap=args.exact_cap,
        seed=seed,
        threads=args.threads,
    )
    if bounds is None and args.lb is None:
        raise UsageError("search needs --bounds with an (n,k) entry or an explicit --lb")
    if bounds is not None and bounds.lookup(p.n, p.k) is None and args.lb is None:
        raise UsageError(f"no bounds entry for (n={p.n}, k={p.k}); pass --lb")
    ledger = Ledger(args.ledger or default_ledger_path())
    search = ga_header_search if args.algo == "ga" else random_header_search
    stats: dict = {}
    t0 = time.perf_counter()
    count = 0
    command_line = ("circcodes", *argv)
    for code in search(p, bounds, lb=args.lb, ub=args.ub, stats=stats):
        ledger.append(LedgerRecord(code, command_line))
        d = code.to_dict()
        count += 1
        print(json.dumps(d, sort_keys=True) if args.json else f"{code.spec.label()} d={code.estimate.d} ({code.verification})")
    summary = {"emitted": count, "seed": seed, "ledger": str(ledger.path), **stats}
    _log({"command": "search", "wall_time": round(time.perf_counter() - t0, 6), **summary})
    _emit(
        args,
        {"summary": summary},
        f"emitted {count} code(s) from {stats.get('evaluations', 0)} evaluations "
        f"({stats.get('distinct', 0)} distinct headers); ledger {ledger.path}",
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    seed = _ensure_seed(args)
    if args.header_file is not None:
        items = [(h.spec, h.claimed_d, h.lineno) for h in load_header_file(args.header_file)]
        for spec, claim, lineno in items:
            if claim is None:
                raise UsageError(f"{args.header_file}: line {lineno}: no claimed distance")
    else:
        if args.claim is None:
            raise UsageError("--claim is required without --header-file")
        items = [(_spec_from_args(args), args.claim, 0)]
    budget = VerifyBudget(
        mode=args.budget,
        brute_cap=args.brute_cap,
        max_work=args.max_work,
        w_probe=args.w_probe,
        mim=MimParams(seed=seed),
        mim_ga=MimGaParams(n_gm=args.n_gm, seed=seed),
        seeds=tuple(seed + i for i in range(args.seeds)),
        threads=args.threads,
    )
    codes = []
    for spec, claim, lineno in items:
        t0 = time.perf_counter()
        res = verify_claim(spec, claim, budget)
        out = {**spec.to_dict(), **res.to_dict()}
        if lineno:
            out["line"] = lineno
        _log({"command": "verify", "verdict": res.verdict, "wall_time": round(time.perf_counter() - t0, 6)})
        _emit(args, out, f"{spec.label()} claim={claim}: {res.verdict} (d_found={res.d_found})")
        codes.append(res.exit_code)
    if 2 in codes:
        return 2
    if 3 in codes:
        return 3
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    seed = _ensure_seed(args)
    bounds = _bounds(args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}")
    rows = []
    flagged = []
    for path in args.matrix:
        G = _load_matrix(path)
        best: dict[str, int | None] = {}
        for method in methods:
            for s in range(seed, seed + args.seeds):
                t0 = time.perf_counter()
                est = run_method(method, G, None, args, s, bounds)
                wall = time.perf_counter() - t0
                _check_witness(G, est)
                _log(_estimate_log(est, wall, command="bench", matrix=str(path)))
                rows.append(
                    {
                        "matrix": path.name,
                        "n": G.ncols,
                        "k": G.nrows,
                        "method": method,
                        "seed": s,
                        "d": est.d,
                        "work_units": est.work_units,
                        "wall_time": round(wall, 3),
                    }
                )
                if est.d is not None and (best.get(method) is None or est.d < best[method]):
                    best[method] = est.d
        if len(set(best.values())) > 1:
            flagged.append({"matrix": path.name, "best": best})
    if args.json:
        for row in rows:
            print(json.dumps(row, sort_keys=True))
        print(json.dumps({"discrepancies": flagged}, sort_keys=True))
        return 0
    cols = ("matrix", "n", "k", "method", "seed", "d", "work_units", "wall_time")
    table = [cols] + [tuple(str(r[c]) for c in cols) for r in rows]
    widths = [max(len(t[i]) for t in table) for i in range(len(cols))]
    for t in table:
        print("  ".join(v.rjust(w) if i > 3 else v.ljust(w) for i, (v, w) in enumerate(zip(t, widths))).rstrip())
    for f in flagged:
        print(f"DISCREPANCY {f['matrix']}: best d per method {f['best']}")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    top, subs = build_parser()
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config", type=Path, default=None)
        known, _ = pre.parse_known_args(argv)
        if known.config is not None:
            _apply_config(read_config(known.config), subs)
        try:
            args = top.parse_args(argv)
        except SystemExit as exc:  # --help, --version and usage errors
            return int(exc.code or 0)
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be >= 1")
        if args.command == "construct":
            return cmd_construct(args)
        if args.command == "distance":
            return cmd_distance(args)
        if args.command == "search":
            return cmd_search(args, argv)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_bench(args)
    except UsageError as exc:
        print(f"circcodes: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"circcodes: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
