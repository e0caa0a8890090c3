#!/usr/bin/env python3
"""Run the standard verification sweeps and summarise them.

Sweeps:
  exhaustive  every 3..6-subset of {-8..8}, distinct-integer bounds and tighter-than-baseline checks
  real        seeded random real samples, classic and order-statistic bounds
  two-block   every (n, j) two-value sample, order-statistic bounds and their exact equality cases

Usage:
    python3 scripts/run_verification.py                 # all sweeps
    python3 scripts/run_verification.py --quick         # smaller real sweep
    python3 scripts/run_verification.py --sweeps real --count 2000 --seed 7 --json out.json
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from mbounds.oracle import VerificationRun, verify

SWEEPS = ("exhaustive", "real", "two-block")


@dataclass
class SweepConfig:
    sweeps: tuple = SWEEPS
    count: int = 10_000
    seed: int = 42
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    json_path: str = ""


def build_runs(cfg: SweepConfig) -> dict:
    runs = {
        "exhaustive": VerificationRun(family="distinct-int", n_range=(3, 6), value_range=(-8, 8),
                                      exhaustive=True, bounds=("all-integer",)),
        "real": VerificationRun(family="real", n_range=(2, 50), value_range=(-100, 100),
                                count=cfg.count, seed=cfg.seed, bounds=("all-real",)),
        "two-block": VerificationRun(family="two-block", n_range=(2, 40), value_range=(-50, 50),
                                     exhaustive=True, seed=cfg.seed, bounds=("thm1", "thm1-equality")),
    }
    return {name: runs[name] for name in cfg.sweeps}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sweeps", nargs="+", choices=SWEEPS, default=list(SWEEPS))
    ap.add_argument("--count", type=int, default=SweepConfig.count, help="random real samples")
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--quick", action="store_true", help="use 1000 random real samples")
    ap.add_argument("--json", dest="json_path", default="")
    args = ap.parse_args(argv)
    cfg = SweepConfig(sweeps=tuple(args.sweeps), count=1000 if args.quick else args.count,
                      seed=args.seed, json_path=args.json_path)
    if args.workers:
        cfg.workers = args.workers

    results, ok = {}, True
    print(f"{'sweep':<11} {'inputs':>8} {'evaluations':>12} {'equalities':>11} {'failures':>9} {'seconds':>8}")
    for name, run in build_runs(cfg).items():
        t0 = time.perf_counter()
        verify(run, workers=cfg.workers)
        elapsed = time.perf_counter() - t0
        ok &= run.passed
        results[name] = dict(run.to_dict(), seconds=round(elapsed, 2))
        print(f"{name:<11} {run.inputs:>8} {run.evaluations:>12} {run.equalities:>11} "
              f"{len(run.failures):>9} {elapsed:>8.1f}")
        for f in run.failures[:5]:
            print(f"    {f['bound']}: claimed {f['claimed']} actual {f['actual']} input {f['input']}")
    print("PASS" if ok else "FAIL")
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump(results, fh, indent=2)
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())
