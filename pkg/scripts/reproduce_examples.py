#!/usr/bin/env python3
"""Recompute the worked examples and compare them with their reference digits.

Each row is classed as
  match     computed value agrees with the reference to the tolerance
  derived   reference digits are known to be inconsistent; the computed value is authoritative
  mismatch  disagreement beyond tolerance (the interval is still checked for containment)

Usage:
    python3 scripts/reproduce_examples.py
    python3 scripts/reproduce_examples.py --json results.json
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from mbounds.cli import matrix_report, poly_report, sample_report
from mbounds.matrix import SquareMatrix
from mbounds.moments import new_sample
from mbounds.oracle import eigenvalues
from mbounds.poly import DepressedPolynomial

NINE = [1, 2, 3, 4, 5, 6, 8, 9, 10]
FIVE = [10, 9, 8, 2, 1]
A1 = [[4, 0, 2, 3], [0, 5, 0, 1], [2, 0, 6, 3], [3, 1, 0, 7]]
SPREAD5 = [[2, -1, -2, 0, 1], [2, 2, 1, 1, 2], [-2, 1, 1, 1, 1], [-1, 1, 2, 1, -1], [2, 0, 2, 0, 2]]
QUINTIC = DepressedPolynomial(5, (-53, -24, 412, -336))


@dataclass
class Config:
    tolerance: float = 5e-4
    functional_tolerance: float = 1e-3
    json_path: Optional[str] = None


@dataclass
class Row:
    example: str
    quantity: str
    bound: str
    computed: float
    reference: float
    status: str = ""


def pick(report, ident, **params):
    for e in report.entries():
        if e.id == ident and all(e.params.get(k) == v for k, v in params.items()):
            return e
    raise KeyError(f"{ident} {params}")


def rows(cfg: Config) -> list:
    nine, _ = sample_report(new_sample(NINE), j_spec="1")
    five, _ = sample_report(new_sample(FIVE), j_spec="4,5")
    A = SquareMatrix.from_rows(A1)
    a1, _ = matrix_report(A, r=1)
    sp5, _ = matrix_report(SquareMatrix.from_rows(SPREAD5), integer_spectrum=True)
    qu1, _ = poly_report(0, QUINTIC, j_spec="1,2", r=1, integer_roots=True)
    qu2, _ = poly_report(0, QUINTIC, j_spec="1,2", r=2)

    def row(example, quantity, entry, side, reference, derived=False):
        r = Row(example, quantity, entry.id, float(entry.values[side]), reference)
        if derived:
            r.status = "derived"
        else:
            r.status = "match" if abs(r.computed - reference) <= cfg.tolerance else "mismatch"
        return r

    out = [
        row("nine integers", "m3 lower", pick(nine, "sharma-m3-extremes"), 0, -20.3425),
        row("nine integers", "m3 upper", pick(nine, "sharma-m3-extremes"), 1, 25.4074),
        row("nine integers", "m4 lower", pick(nine, "sharma-i3"), 0, 91.1250),
        row("nine integers", "m4 upper", pick(nine, "sharma-it3"), 0, 181.0022),
        row("nine integers", "m4 lower (distinct)", pick(nine, "int-m4-range"), 0, 103.9028),
        row("nine integers", "m4 upper (distinct)", pick(nine, "int-m4-upper"), 0, 162.5578),
        row("nine integers", "m3 lower (distinct)", pick(nine, "int-m3-c2"), 0, -7.1574, derived=True),
        row("nine integers", "m3 upper (distinct)", pick(nine, "int-m3-c2"), 1, 12.2222, derived=True),
        row("five values", "m4 lower j=5", pick(five, "sharma-saini", j=5), 0, 126.9531),
        row("five values", "m4 lower j=4", pick(five, "re1", j=4), 0, 132.7407),
        row("matrix A1", "l1 lower", pick(a1, "ws-eigen", j=1), 0, 5.5000),
        row("matrix A1", "l1 upper", pick(a1, "ws-eigen", j=1), 1, 10.4749),
        row("matrix A1", "l2 lower", pick(a1, "ws-eigen", j=2), 0, 3.8417),
        row("matrix A1", "l3 upper", pick(a1, "ws-eigen", j=3), 1, 7.1583),
        row("matrix A1", "l4 lower", pick(a1, "ws-eigen", j=4), 0, 0.5250),
        row("5x5 integer spectrum", "spread upper", pick(sp5, "nagy-spread"), 0, 6.5115),
        row("5x5 integer spectrum", "spread upper", pick(sp5, "sharma-i3-spread"), 0, 6.3648),
        row("5x5 integer spectrum", "spread lower", pick(sp5, "sharma-it4-spread"), 0, 5.5119),
        row("5x5 integer spectrum", "spread upper (distinct)", pick(sp5, "int-spread-upper"), 0, 6.3638, derived=True),
        row("5x5 integer spectrum", "spread lower (distinct)", pick(sp5, "int-spread-lower"), 0, 5.5128, derived=True),
        row("quintic", "x1 upper r=1", pick(qu1, "ws-root", j=1), 1, 9.2087),
        row("quintic", "x2 lower r=1", pick(qu1, "ws-root", j=2), 0, -2.3022),
        row("quintic", "x1 upper r=2", pick(qu2, "root-m4", j=1), 1, 7.9070),
        row("quintic", "x2 lower r=2", pick(qu2, "root-m4", j=2), 0, -1.9768),
        row("quintic", "span upper", pick(qu1, "nagy-spread"), 0, 14.5602),
        row("quintic", "span upper", pick(qu1, "sharma-i3-spread"), 0, 13.3496),
        row("quintic", "span lower", pick(qu1, "sharma-it4-spread"), 0, 12.0986),
        row("quintic", "span upper (distinct)", pick(qu1, "int-spread-upper"), 0, 13.3494, derived=True),
        row("quintic", "span lower (distinct)", pick(qu1, "int-spread-lower"), 0, 12.0987, derived=True),
    ]

    spectrum = eigenvalues(A)
    functional = [
        ("l1 lower", dict(j_spec="1", r=1, phi="diag-avg:1,2", q=5), "eigen-functional", 1, 0, 8.1261),
        ("l1 upper", dict(j_spec="1", r=1, phi="diag-avg:1,2", q=5), "eigen-functional", 1, 1, 9.3775),
        ("l3 upper r=3", dict(j_spec="3", r=3), "eigen-moment", 3, 1, 6.9886),
        ("l2 lower", dict(j_spec="2", r=1, phi="entry:4,1", q=3), "eigen-functional", 2, 0, 5.3900),
        ("l4 lower", dict(j_spec="4", r=2, phi="trace-mean", q=3), "eigen-functional", 4, 0, 1.2534),
    ]
    for quantity, kwargs, ident, j, side, reference in functional:
        rep, _ = matrix_report(A, **kwargs)
        e = pick(rep, ident, j=j)
        r = Row("matrix A1", f"{quantity} ({kwargs.get('phi', 'moment')})", ident, float(e.values[side]), reference)
        inside = float(e.values[0]) <= spectrum[j - 1] <= float(e.values[1])
        close = abs(r.computed - reference) <= cfg.functional_tolerance
        r.status = ("match" if close else "mismatch") + ("" if inside else " NOT CONTAINED")
        out.append(r)
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tolerance", type=float, default=Config.tolerance)
    ap.add_argument("--json", dest="json_path", help="also write the rows as JSON to this path")
    cfg = Config(**vars(ap.parse_args(argv)))

    table = rows(cfg)
    width = max(len(r.example) for r in table)
    qwidth = max(len(r.quantity) for r in table)
    for r in table:
        print(f"{r.example:<{width}}  {r.quantity:<{qwidth}}  {r.bound:<20} "
              f"{r.computed:>11.4f} {r.reference:>11.4f}  {r.status}")
    counts = {s: sum(r.status.split()[0] == s for r in table) for s in ("match", "derived", "mismatch")}
    print(f"\n{counts['match']} match, {counts['derived']} derived, {counts['mismatch']} mismatch")
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump([asdict(r) for r in table], fh, indent=2)
    return 1 if any("NOT CONTAINED" in r.status for r in table) else 0


if __name__ == "__main__":
    sys.exit(main())
