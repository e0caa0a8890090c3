"""Machine-readable comparison reports and their text rendering."""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .entry import BoundEntry

DEFAULT_PRECISION = 10


def precision() -> int:
    raw = os.environ.get("MBOUNDS_PRECISION", "")
    try:
        digits = int(raw)
    except ValueError:
        return DEFAULT_PRECISION
    return digits if 1 <= digits <= 17 else DEFAULT_PRECISION


def fmt(x, digits: Optional[int] = None):
    """JSON-ready number: ints stay exact, everything else rounds to ``digits`` significant digits."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    v = float(x)
    if not math.isfinite(v):
        return str(v)
    v = float(f"{v:.{digits or precision()}g}")
    return 0.0 if v == 0 else v


def exact_str(x) -> Optional[str]:
    """'p/q' for rationals, None otherwise."""
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    return None


def digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# Known disagreements between these computations and published reference values.
# Attached to a report whenever one of the trigger ids is emitted.
NOTES = {
    "spread-upper-form": (
        "Refined spread/span upper bound is the direct inversion spread^4 <= 8n(m4 - c(n)). "
        "Published reference digits for this bound use a different prefactor and come out slightly larger."
    ),
    "spread-lower-form": (
        "Refined spread/span lower bound is the inversion spread^4 >= 64(m4 - m2^2 - m3^2/m2 + beta2). "
        "Published reference digits for this bound follow a different prefactor and cube term and are not reproduced."
    ),
    "m3-refined-digits": (
        "The distinct-integer m3 intervals use beta1(n) = min gamma1/n; published reference digits "
        "for this interval could not be reproduced from any stated formula."
    ),
    "beta-closed-forms": (
        "beta1 and beta2 come from direct minimisation; the closed forms used as cross-checks are "
        "corrected versions of commonly printed ones."
    ),
    "gamma3-minimum": "beta2 takes the minimum of the gamma3 sums over the split point, not the maximum.",
    "root-interval-route": (
        "Root intervals are computed from the root moments (m2 = -2b2/n, m4 = 2(b2^2 - 2b4)/n); "
        "printed coefficient shortcuts for these intervals contain typos and are not used."
    ),
    "eigen-digits": (
        "Published reference digits for the trace-moment eigenvalue intervals (plain and shifted-power) "
        "could not be reproduced; use --verify-spectrum to confirm each interval contains its eigenvalue."
    ),
    "integer-roots-threshold": (
        "The integer-root threshold is n * S / 2 with S the count-only fourth-moment sum; "
        "one published worked value of this threshold is arithmetically wrong."
    ),
}

NOTE_TRIGGERS = {
    "spread-upper-form": {"int-spread-upper"},
    "spread-lower-form": {"int-spread-lower"},
    "m3-refined-digits": {"int-m3-c1", "int-m3-c2"},
    "beta-closed-forms": {"int-m3-raw", "int-m3-c1", "int-m3-c2", "int-m3-c3", "int-m3-c4",
                          "int-m4-upper", "int-m4-combo", "int-m4-combo-spread", "int-spread-lower"},
    "gamma3-minimum": {"int-m4-upper", "int-m4-combo", "int-m4-combo-spread", "int-spread-lower"},
    "root-interval-route": {"ws-root", "root-m4"},
    "eigen-digits": {"eigen-moment", "eigen-functional"},
    "integer-roots-threshold": {"int-roots-necessary"},
}


def notes_for(ids) -> list:
    ids = set(ids)
    return [{"id": key, "text": NOTES[key]} for key in NOTES if NOTE_TRIGGERS[key] & ids]


def entry_dict(e: BoundEntry) -> dict:
    d = {
        "id": e.id,
        "kind": e.kind,
        "target": e.target,
        "eq_tag": e.eq_tag,
        "assumptions": sorted(e.assumptions),
        "values": [fmt(v) for v in e.values],
    }
    if e.params:
        d["params"] = {k: fmt(v) for k, v in sorted(e.params.items())}
    if e.refines:
        d["refines"] = e.refines
    if e.kind == "check":
        d["holds"] = bool(e.holds)
    return d


@dataclass
class Report:
    kind: str
    input: dict
    moments: dict = field(default_factory=dict)
    baseline: list = field(default_factory=list)
    refined: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    truth: Optional[dict] = None
    skipped: list = field(default_factory=list)
    refusals: list = field(default_factory=list)

    def add(self, e: BoundEntry) -> None:
        if e.refines:
            self.refined.append(e)
        elif e.kind == "check":
            self.checks.append(e)
        else:
            self.baseline.append(e)

    def entries(self) -> list:
        return self.baseline + self.refined + self.checks

    def skip(self, what: str, reason: Exception) -> None:
        self.skipped.append({"bound": what, "reason": str(reason)})

    def refuse(self, what: str, reason) -> None:
        self.refusals.append({"request": what, "reason": str(reason)})

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "input": self.input,
            "moments": self.moments,
            "bounds": {
                "baseline": [entry_dict(e) for e in self.baseline],
                "refined": [entry_dict(e) for e in self.refined],
                "checks": [entry_dict(e) for e in self.checks],
            },
            "notes": notes_for(e.id for e in self.entries()),
        }
        if self.truth is not None:
            d["truth"] = self.truth
        if self.skipped:
            d["skipped"] = self.skipped
        if self.refusals:
            d["refusals"] = self.refusals
        return d


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=True) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.{precision()}g}"
    return str(v)


def _params(d: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in d.get("params", {}).items())


def report_table(d: dict) -> str:
    """Aligned plain-text rendering of ``Report.to_dict()``."""
    lines = [f"{d['kind']} report  ({d['input'].get('digest', '')})"]
    if d["moments"]:
        lines.append("")
        lines.append("moments")
        for k, v in d["moments"].items():
            if k != "exact":
                lines.append(f"  {k:<8} {_cell(v)}")
    flags = {}
    if d.get("truth"):
        flags = {(f["id"], f["params"]): f for f in d["truth"].get("flags", [])}
    for group in ("baseline", "refined", "checks"):
        rows = d["bounds"][group]
        if not rows:
            continue
        lines.append("")
        lines.append(group)
        table = []
        for e in rows:
            vals = "  ".join(_cell(v) for v in e["values"])
            extra = f"refines {e['refines']}" if "refines" in e else ""
            if e["kind"] == "check":
                extra = ("holds" if e["holds"] else "FAILS") + ("  " + extra if extra else "")
            f = flags.get((e["id"], _params(e)))
            if f is not None:
                extra = ("ok" if f["satisfied"] else "VIOLATED") + (" tight" if f["tight"] else "") + (
                    "  " + extra if extra else "")
            table.append((e["id"], _params(e), e["kind"], e["eq_tag"], vals, extra))
        widths = [max(len(row[i]) for row in table) for i in range(5)]
        for row in table:
            line = "  " + "  ".join(row[i].ljust(widths[i]) for i in range(5)) + "  " + row[5]
            lines.append(line.rstrip())
    if d.get("truth"):
        lines.append("")
        lines.append("truth")
        for k, v in d["truth"].items():
            if k == "flags":
                continue
            shown = " ".join(_cell(x) for x in v) if isinstance(v, list) else _cell(v)
            lines.append(f"  {k:<12} {shown}")
    for key in ("skipped", "refusals"):
        if d.get(key):
            lines.append("")
            lines.append(key)
            for item in d[key]:
                lines.append(f"  {next(iter(item.values()))}: {item['reason']}")
    if d["notes"]:
        lines.append("")
        lines.append("notes")
        for note in d["notes"]:
            lines.append(f"  [{note['id']}] {note['text']}")
    return "\n".join(lines) + "\n"


def verification_table(d: dict) -> str:
    lines = [
        f"family      {d['family']}",
        f"n range     {d['n_range'][0]}..{d['n_range'][1]}",
        f"values      {d['value_range'][0]}..{d['value_range'][1]}",
        f"mode        {'exhaustive' if d['exhaustive'] else 'count=%s seed=%s' % (d['count'], d['seed'])}",
        f"bounds      {','.join(d['bounds'])}",
        f"inputs      {d['inputs']}",
        f"evaluations {d['evaluations']}",
        f"equalities  {d['equalities']}",
        f"failures    {len(d['failures'])}",
        f"result      {'PASS' if d['passed'] else 'FAIL'}",
    ]
    for f in d["failures"][:20]:
        lines.append(f"  {f['bound']}: claimed {f['claimed']} actual {f['actual']} input {f['input']}")
    return "\n".join(lines) + "\n"
