#!/usr/bin/env python3
"""Tabulate the distinct-integer correction terms for a range of sample sizes.

Columns: n, beta1, beta2, the count-only fourth-moment floor (integer and
non-integer mean) and the range correction c(n), all exact; minimisers of the
gamma sums are listed as well.

Usage:
    python3 scripts/correction_table.py --n 3 20
    python3 scripts/correction_table.py --n 3 500 --csv corrections.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from mbounds import integer
from mbounds.integer import GammaKind


@dataclass
class TableConfig:
    n_min: int = 3
    n_max: int = 20
    csv_path: str = ""


def table(cfg: TableConfig) -> list:
    out = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        bc = integer.beta_correction(n)
        out.append({
            "n": n,
            "beta1": bc.beta1,
            "beta2": bc.beta2,
            "count_only_int_mean": Fraction(integer.count_only_minimum(n, True), n),
            "count_only_non_int_mean": Fraction(integer.count_only_minimum(n, False), n),
            "range_corr_int_mean": integer.range_correction(n, True),
            "range_corr_non_int_mean": integer.range_correction(n, False),
            "argmin_gamma1": " ".join(map(str, bc.argmin_k[GammaKind.GAMMA1])),
            "argmin_gamma3": " ".join(map(str, bc.argmin_k[GammaKind.GAMMA3])),
            "closed_forms_agree": bc.beta1 == integer.beta1_closed_form(n) and bc.beta2 == integer.beta2_closed_form(n),
        })
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", nargs=2, type=int, metavar=("MIN", "MAX"), default=(3, 20))
    ap.add_argument("--csv", dest="csv_path", default="")
    args = ap.parse_args(argv)
    cfg = TableConfig(max(3, args.n[0]), args.n[1], args.csv_path)

    rows = table(cfg)
    cols = list(rows[0])
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols)
            w.writeheader()
            w.writerows({k: str(v) for k, v in r.items()} for r in rows)
    shown = [{k: str(v) for k, v in r.items()} for r in rows]
    widths = {c: max(len(c), *(len(r[c]) for r in shown)) for c in cols}
    print("  ".join(c.rjust(widths[c]) for c in cols))
    for r in shown:
        print("  ".join(r[c].rjust(widths[c]) for c in cols))
    return 0 if all(r["closed_forms_agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
