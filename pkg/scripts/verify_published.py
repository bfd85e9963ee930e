#!/usr/bin/env python3
"""Check every well-formed row of data/published_codes.txt.

Small codes are settled exactly; larger ones get a witness hunt, so a
verdict there is either a matching witness, a lighter codeword, or
inconclusive.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from circcodes.cli import main

ROOT = Path(__file__).resolve().parents[1]


def run() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--file", type=Path, default=ROOT / "data" / "published_codes.txt")
    ap.add_argument("--budget", choices=("exact", "witness"), default="witness")
    ap.add_argument("--seed", default="0")
    ap.add_argument("--seeds", default="1")
    ap.add_argument("--n-gm", default="300")
    args = ap.parse_args()
    return main(
        [
            "verify",
            "--header-file", str(args.file),
            "--budget", args.budget,
            "--seed", args.seed,
            "--seeds", args.seeds,
            "--n-gm", args.n_gm,
            "--json",
        ]
    )  # fmt: skip


if __name__ == "__main__":
    sys.exit(run())
