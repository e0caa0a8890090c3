"""The BoundEntry record every bound operation returns."""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Optional

KINDS = ("lower", "upper", "two_sided", "check")
TARGETS = (
    "m2r", "m3", "m3_raw", "m4", "m4_combo", "x_j", "x_kj", "d_j",
    "spread", "lambda_j", "root_j", "b2_2b4",
)
ASSUMPTIONS = ("none", "distinct_integers", "integer_mean", "n_min", "real_spectrum")


@dataclass(frozen=True)
class BoundEntry:
    """A named one- or two-sided bound.

    ``values`` holds (lower,), (upper,) or (lower, upper); for ``check``
    entries it is (lhs, rhs) of an asserted ``lhs <= rhs``. Values may be
    ``int``/``Fraction`` when the computation was exact.
    """

    id: str
    kind: str
    target: str
    values: tuple
    eq_tag: str
    assumptions: frozenset = frozenset({"none"})
    refines: Optional[str] = None
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}")
        want = 2 if self.kind in ("two_sided", "check") else 1
        if len(self.values) != want:
            raise ValueError(f"{self.kind} entry needs {want} values, got {len(self.values)}")
        if self.kind == "two_sided":
            lo, hi = self.values
            slack = 1e-9 * max(1.0, abs(float(lo)), abs(float(hi)))
            if float(lo) > float(hi) + slack:
                raise ValueError(f"{self.id}: lower {lo} exceeds upper {hi}")

    @property
    def lower(self):
        if self.kind == "lower":
            return self.values[0]
        if self.kind == "two_sided":
            return self.values[0]
        return None

    @property
    def upper(self):
        if self.kind == "upper":
            return self.values[0]
        if self.kind == "two_sided":
            return self.values[1]
        return None

    @property
    def holds(self) -> Optional[bool]:
        if self.kind != "check":
            return None
        return self.values[0] <= self.values[1]

    def satisfied_by(self, truth, rel_tol: float = 1e-9) -> bool:
        """Does ``truth`` respect the bound? Exact comparison when both sides are rational."""
        lo, hi = self.lower, self.upper
        return (lo is None or _le(lo, truth, rel_tol)) and (hi is None or _le(truth, hi, rel_tol))

    def is_tight(self, truth, rel_tol: float = 1e-10) -> bool:
        return any(
            b is not None and _close(b, truth, rel_tol) for b in (self.lower, self.upper)
        )


def _exact(x) -> bool:
    return type(x) is int or isinstance(x, Fraction)


def _le(a, b, rel_tol: float) -> bool:
    if _exact(a) and _exact(b):
        return a <= b
    a, b = float(a), float(b)
    return a <= b + rel_tol * max(1.0, abs(a), abs(b))


def _close(a, b, rel_tol: float) -> bool:
    if _exact(a) and _exact(b):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=rel_tol, abs_tol=rel_tol)
