"""Sample representation and exact moment computation.

Integral inputs stay integral and all derived quantities are computed in
rational arithmetic; any non-integral float switches the sample to a float
path built on ``math.fsum`` (exactly rounded sums).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import EmptySample, InvalidValue, ParseError

Number = Union[int, Fraction, float]


def _normalize(v) -> Number:
    if isinstance(v, bool):
        raise InvalidValue(f"boolean is not a sample value: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, Rational):
        f = Fraction(v)
        return f.numerator if f.denominator == 1 else f
    try:
        x = float(v)
    except (TypeError, ValueError) as exc:
        raise InvalidValue(f"not a real number: {v!r}") from exc
    if not math.isfinite(x):
        raise InvalidValue(f"non-finite value: {v!r}")
    if x == round(x):
        return int(x)
    return x


def exact_sum(values: Iterable[Number]) -> Number:
    """Sum of rationals exactly, or of floats with a single rounding."""
    values = list(values)
    if all(isinstance(v, (int, Fraction)) for v in values):
        return sum(values, 0)
    return math.fsum(values)


@dataclass(frozen=True)
class Sample:
    """Finite sample, stored in non-increasing order (x_1 >= ... >= x_n)."""

    values: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(self.values) == 0:
            raise EmptySample("sample must contain at least one value")
        if any(a < b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("Sample.values must be sorted descending; use new_sample()")

    @property
    def n(self) -> int:
        return len(self.values)

    def _memo(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            val = self._cache[key] = fn()
            return val

    @property
    def max(self) -> Number:
        return self.values[0]

    @property
    def min(self) -> Number:
        return self.values[-1]

    @property
    def exact(self) -> bool:
        """True when every value is rational, so moments are exact."""
        return self._memo("exact", lambda: all(isinstance(v, (int, Fraction)) for v in self.values))

    @property
    def integral(self) -> bool:
        return self._memo("integral", lambda: all(isinstance(v, int) for v in self.values))

    @property
    def distinct_integers(self) -> bool:
        return self.integral and len(set(self.values)) == self.n

    @property
    def integer_mean(self) -> bool:
        return self.integral and sum(self.values) % self.n == 0

    def __len__(self):
        return self.n

    def __getitem__(self, j: int) -> Number:
        """1-based order statistic x_j."""
        _check_index(j, self.n)
        return self.values[j - 1]


def _check_index(j: int, n: int, name: str = "j") -> None:
    if not isinstance(j, int) or not 1 <= j <= n:
        raise IndexError(f"{name}={j!r} outside 1..{n}")


def new_sample(values: Iterable) -> Sample:
    vals = [_normalize(v) for v in values]
    if not vals:
        raise EmptySample("sample must contain at least one value")
    vals.sort(reverse=True)
    return Sample(tuple(vals))


def mean(s: Sample) -> Number:
    try:
        return s._cache["mean"]
    except KeyError:
        pass
    if s.exact:
        m = _collapse(Fraction(sum(s.values), s.n))
    else:
        m = math.fsum(s.values) / s.n
    s._cache["mean"] = m
    return m


def ratio(a, b):
    """a / b, staying rational when both operands are."""
    if type(a) is float or type(b) is float:
        return a / b
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return _collapse(Fraction(a, b))
    return a / b


def _collapse(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def central_moment(s: Sample, r: int) -> Number:
    """m_r = (1/n) sum (x_i - mean)^r, after a separate mean pass."""
    if r < 1:
        raise ValueError("moment order must be a positive integer")
    key = ("central", r)
    if key in s._cache:
        return s._cache[key]
    xbar = mean(s)
    if r == 1 and s.exact:
        val = 0
    elif s.exact:
        val = _collapse(Fraction(sum((x - xbar) ** r for x in s.values), s.n))
    else:
        val = math.fsum((x - xbar) ** r for x in s.values) / s.n
    s._cache[key] = val
    return val


def raw_moment(s: Sample, r: int) -> Number:
    """m'_r = (1/n) sum x_i^r."""
    if r < 1:
        raise ValueError("moment order must be a positive integer")
    key = ("raw", r)
    if key not in s._cache:
        total = exact_sum(x**r for x in s.values)
        s._cache[key] = _collapse(Fraction(total, s.n) if s.exact else total / s.n)
    return s._cache[key]


def segment_mean(s: Sample, k: int, j: int) -> Number:
    """Mean of the k-th through j-th largest values (1-based, inclusive)."""
    _check_index(k, s.n, "k")
    _check_index(j, s.n, "j")
    if k > j:
        raise IndexError(f"segment requires k <= j, got k={k}, j={j}")
    count = j - k + 1
    if s.exact:
        return _collapse(Fraction(sum(s.values[k - 1 : j]), count))
    return math.fsum(s.values[k - 1 : j]) / count


@dataclass(frozen=True)
class MomentSummary:
    n: int
    mean: Number
    central: dict
    raw: dict


def summarize(s: Sample, max_order: int = 4) -> MomentSummary:
    orders = range(1, max_order + 1)
    return MomentSummary(
        n=s.n,
        mean=mean(s),
        central={r: central_moment(s, r) for r in orders},
        raw={r: raw_moment(s, r) for r in orders},
    )


_SPLIT = re.compile(r"[,\s]+")


def parse_number(token: str) -> Number:
    try:
        return int(token)
    except ValueError:
        pass
    if "/" in token:
        return Fraction(token)
    return float(token)


def parse_sample_text(text: str) -> list:
    """One number per line or comma separated; lines starting with '#' are comments."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for tok in _SPLIT.split(stripped):
            if not tok:
                continue
            try:
                out.append(_normalize(parse_number(tok)))
            except (ValueError, ZeroDivisionError, InvalidValue) as exc:
                raise ParseError(f"cannot parse {tok!r}: {exc}", line=lineno) from None
    if not out:
        raise EmptySample("no values found")
    return out


def read_sample(path) -> Sample:
    with open(path, encoding="utf-8") as fh:
        return new_sample(parse_sample_text(fh.read()))
