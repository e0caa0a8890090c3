"""Eigenvalue localisation and spread bounds from traces of matrix powers.

Nothing here computes eigenvalues: every bound only needs tr(A^p) of a
shifted matrix. Integral matrices are kept as Python-int object arrays so
the traces are exact.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .classic import nonneg_root
from .entry import BoundEntry
from .errors import InvalidInput, ParseError
from .moments import _check_index, _normalize, parse_number, ratio
from .refined import MAX_R, _check_r, radii
from .spread import refined_spread_lower, refined_spread_upper, spread_entries

REAL = frozenset({"real_spectrum"})


@dataclass(frozen=True)
class SquareMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidInput(f"matrix must be square and non-empty, got shape {a.shape}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SquareMatrix":
        vals = [[_normalize(v) for v in row] for row in rows]
        if any(len(row) != len(vals) for row in vals):
            raise InvalidInput("matrix is not square")
        exact = all(isinstance(v, (int, Fraction)) for row in vals for v in row)
        return cls(np.array(vals, dtype=object if exact else float))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    def __getitem__(self, ij):
        i, j = ij
        _check_index(i, self.n, "row")
        _check_index(j, self.n, "column")
        return self.entries[i - 1, j - 1]


def _identity(A: SquareMatrix) -> np.ndarray:
    if A.exact:
        eye = np.zeros((A.n, A.n), dtype=object)
        eye[:] = 0
        for i in range(A.n):
            eye[i, i] = 1
        return eye
    return np.eye(A.n)


def _trace(a: np.ndarray):
    t = sum(a[i, i] for i in range(a.shape[0]))
    return ratio(t, 1) if isinstance(t, (int, Fraction)) else float(t)


def matrix_power(A: SquareMatrix, p: int) -> np.ndarray:
    if not isinstance(p, int) or p < 0:
        raise ValueError(f"power must be a non-negative integer, got {p!r}")
    out = _identity(A)
    for _ in range(p):
        out = out @ A.entries
    return out


def trace_power(A: SquareMatrix, p: int):
    """tr(A^p) by repeated multiplication."""
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"power must be a positive integer, got {p!r}")
    return _trace(matrix_power(A, p))


def shifted(A: SquareMatrix, c) -> SquareMatrix:
    """A - c I."""
    if A.exact and isinstance(c, (int, Fraction)):
        return SquareMatrix(A.entries - _identity(A) * c)
    return SquareMatrix(A.entries.astype(float) - float(c) * np.eye(A.n))


def trace_mean(A: SquareMatrix):
    return ratio(_trace(A.entries), A.n)


def deviation_matrix(A: SquareMatrix) -> SquareMatrix:
    """B = A - (tr A / n) I, whose spectrum is the centred spectrum of A."""
    return shifted(A, trace_mean(A))


def spectral_moment(A: SquareMatrix, r: int):
    """r-th central moment of the eigenvalues: tr(B^r) / n."""
    return ratio(trace_power(deviation_matrix(A), r), A.n)


@dataclass(frozen=True)
class FunctionalSpec:
    """A real functional phi(A) used as the shift in the functional interval."""

    selector: str
    indices: tuple = ()
    value: Optional[float] = None

    SELECTORS = ("trace_mean", "entry", "diag_avg", "constant")

    def __post_init__(self):
        if self.selector not in self.SELECTORS:
            raise InvalidInput(f"unknown functional selector {self.selector!r}")
        if self.selector == "entry" and len(self.indices) != 2:
            raise InvalidInput("entry selector needs (row, column)")
        if self.selector == "diag_avg" and not self.indices:
            raise InvalidInput("diag_avg selector needs at least one index")
        if self.selector == "constant" and self.value is None:
            raise InvalidInput("constant selector needs a value")

    @classmethod
    def parse(cls, text: str) -> "FunctionalSpec":
        """'trace-mean', 'entry:4,1', 'diag-avg:1,2' or 'const:3.5'."""
        name, _, arg = text.strip().partition(":")
        name = name.replace("-", "_")
        try:
            if name == "trace_mean":
                return cls("trace_mean")
            if name == "entry":
                return cls("entry", tuple(int(t) for t in arg.split(",")))
            if name == "diag_avg":
                return cls("diag_avg", tuple(int(t) for t in arg.split(",")))
            if name in ("const", "constant"):
                return cls("constant", value=_normalize(parse_number(arg)))
        except ValueError as exc:
            raise InvalidInput(f"bad functional {text!r}: {exc}") from None
        raise InvalidInput(f"unknown functional {text!r}")

    def __call__(self, A: SquareMatrix):
        if self.selector == "trace_mean":
            return trace_mean(A)
        if self.selector == "entry":
            return A[self.indices]
        if self.selector == "diag_avg":
            total = sum(A[i, i] for i in self.indices)
            return ratio(total, len(self.indices))
        return self.value

    def describe(self) -> str:
        if self.selector == "entry":
            return "entry:%d,%d" % self.indices
        if self.selector == "diag_avg":
            return "diag-avg:" + ",".join(map(str, self.indices))
        if self.selector == "constant":
            return f"const:{self.value}"
        return "trace-mean"


def real_root(x, q: int) -> float:
    """Sign-preserving real q-th root for odd q."""
    x = float(x)
    return -((-x) ** (1.0 / q)) if x < 0 else x ** (1.0 / q)


def _scale(A: SquareMatrix) -> float:
    return max(1.0, float(np.max(np.abs(A.entries.astype(float)))))


def eigen_ws_interval(A: SquareMatrix, j: int) -> BoundEntry:
    e = eigen_interval(A, j, 1)
    return BoundEntry("ws-eigen", "two_sided", "lambda_j", e.values, eq_tag="ieqi52",
                      assumptions=REAL, params={"j": j})


def eigen_interval(A: SquareMatrix, j: int, r: int, max_r: int = MAX_R) -> BoundEntry:
    _check_index(j, A.n)
    _check_r(r, max_r)
    xbar = float(trace_mean(A))
    scale = _scale(A) * A.n
    lo, hi = radii(A.n, j, j, r, spectral_moment(A, 2 * r), scale)
    return BoundEntry(
        "eigen-moment", "two_sided", "lambda_j", (xbar - lo, xbar + hi),
        eq_tag="mcc1", assumptions=REAL, refines="ws-eigen", params={"j": j, "r": r},
    )


def eigen_interval_functional(
    A: SquareMatrix, j: int, r: int, phi: FunctionalSpec, q: int, max_r: int = MAX_R
) -> BoundEntry:
    """Interval for lambda_j from the spectrum of C = (A - phi(A) I)^q, q odd."""
    if not isinstance(q, int) or q < 1 or q % 2 == 0:
        raise InvalidInput(f"q must be a positive odd integer, got {q!r}")
    _check_index(j, A.n)
    _check_r(r, max_r)
    shift = phi(A)
    C = SquareMatrix(matrix_power(shifted(A, shift), q))
    cbar = trace_mean(C)
    lo, hi = radii(A.n, j, j, r, spectral_moment(C, 2 * r), _scale(C) * A.n)
    values = (float(shift) + real_root(cbar - lo, q), float(shift) + real_root(cbar + hi, q))
    return BoundEntry(
        "eigen-functional", "two_sided", "lambda_j", values, eq_tag="mf1",
        assumptions=REAL, refines="ws-eigen",
        params={"j": j, "r": r, "q": q, "phi": phi.describe(), "phi_value": float(shift)},
    )


def divides_trace(A: SquareMatrix) -> bool:
    t = _trace(A.entries)
    return isinstance(t, int) and t % A.n == 0 or (isinstance(t, float) and t.is_integer() and int(t) % A.n == 0)


def _spectral_m234(A: SquareMatrix):
    return tuple(spectral_moment(A, r) for r in (2, 3, 4))


def _need_three(A: SquareMatrix):
    if A.n < 3:
        raise InvalidInput("spread refinements need n >= 3")


def spread_upper(A: SquareMatrix, integer_mean: Optional[bool] = None) -> BoundEntry:
    """Upper bound on the spread for a matrix with n distinct integer eigenvalues."""
    _need_three(A)
    im = divides_trace(A) if integer_mean is None else integer_mean
    value = refined_spread_upper(A.n, spectral_moment(A, 4), im)
    return BoundEntry("int-spread-upper", "upper", "spread", (value,),
                      eq_tag="5t2" if im else "5t1",
                      assumptions=frozenset({"distinct_integers"} | ({"integer_mean"} if im else set())),
                      refines="sharma-i3-spread")


def spread_lower(A: SquareMatrix) -> BoundEntry:
    _need_three(A)
    m2, m3, m4 = _spectral_m234(A)
    if m2 == 0:
        raise InvalidInput("zero spectral variance: eigenvalues cannot be distinct")
    return BoundEntry("int-spread-lower", "lower", "spread",
                      (refined_spread_lower(A.n, m2, m3, m4),), eq_tag="5c1",
                      assumptions=frozenset({"distinct_integers"}), refines="sharma-it4-spread")


def spread_bounds(A: SquareMatrix, distinct_integer_spectrum: bool = False) -> list:
    if distinct_integer_spectrum:
        _need_three(A)
    m2, m3, m4 = _spectral_m234(A)
    if m2 == 0:
        return []
    return spread_entries(A.n, m2, m3, m4, distinct_integer_spectrum, divides_trace(A))


def read_matrix(path) -> SquareMatrix:
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row]
            if not cells or cells == [""] or cells[0].startswith("#"):
                continue
            try:
                rows.append([parse_number(c) for c in cells])
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from None
    if not rows:
        raise InvalidInput("empty matrix file")
    return SquareMatrix.from_rows(rows)
