"""Baseline moment inequalities used as references for the refined bounds."""

from __future__ import annotations

import math

import numpy as np

from .entry import BoundEntry
from .errors import BoundInapplicable, DegenerateSample
from .moments import Sample, _check_index, central_moment, mean, ratio, raw_moment

SQRT3 = math.sqrt(3.0)


def nonneg_root(x, q: int = 2, scale: float = 1.0) -> float:
    """Real q-th root of an analytically non-negative quantity.

    Negative round-off up to 1e-9 * scale is clamped to 0.
    """
    x = float(x)
    if x <= 0:
        if x < -1e-9 * max(1.0, abs(float(scale))):
            raise ValueError(f"root of negative quantity {x}")
        return 0.0
    return math.sqrt(x) if q == 2 else x ** (1.0 / q)


def nonneg_sqrt(x, scale: float = 1.0) -> float:
    return nonneg_root(x, 2, scale)


def _need_two(s: Sample) -> None:
    if s.n < 2:
        raise DegenerateSample("bound requires at least two values")


def samuelson_interval(s: Sample, j: int) -> BoundEntry:
    _need_two(s)
    _check_index(j, s.n)
    xbar = mean(s)
    rad = nonneg_sqrt((s.n - 1) * central_moment(s, 2))
    return BoundEntry(
        "samuelson", "two_sided", "x_j", (float(xbar) - rad, float(xbar) + rad),
        eq_tag="iew1", params={"j": j},
    )


def ws_interval(s: Sample, k: int, j: int) -> BoundEntry:
    """Segment-mean interval for x_(k,j); with k == j it bounds x_j."""
    _check_index(k, s.n, "k")
    _check_index(j, s.n, "j")
    if k > j:
        raise IndexError(f"segment requires k <= j, got k={k}, j={j}")
    n, m2, xbar = s.n, central_moment(s, 2), float(mean(s))
    lo = xbar - nonneg_sqrt(ratio(k - 1, n - k + 1) * m2)
    hi = xbar + nonneg_sqrt(ratio(n - j, j) * m2)
    return BoundEntry(
        "ws", "two_sided", "x_j" if k == j else "x_kj", (lo, hi),
        eq_tag="ine3" if k == j else "ieq4", params={"k": k, "j": j},
    )


def ws_radius_table(s: Sample) -> tuple:
    """(lower, upper) float arrays: the segment interval is [mean - lower[k-1], mean + upper[j-1]]."""
    n, m2 = s.n, central_moment(s, 2)
    lower = np.array([nonneg_sqrt(ratio(k - 1, n - k + 1) * m2) for k in range(1, n + 1)])
    upper = np.array([nonneg_sqrt(ratio(n - j, j) * m2) for j in range(1, n + 1)])
    return lower, upper


def nagy_m2_lower(s: Sample) -> BoundEntry:
    _need_two(s)
    spread = s.max - s.min
    return BoundEntry(
        "nagy", "lower", "m2r", (ratio(spread**2, 2 * s.n),), eq_tag="i2", params={"r": 1},
    )


def sharma_m2r_lower(s: Sample, r: int) -> BoundEntry:
    _need_two(s)
    _check_r(r)
    spread = s.max - s.min
    value = ratio(spread ** (2 * r), 2 ** (2 * r - 1) * s.n)
    return BoundEntry("sharma-i3", "lower", "m2r", (value,), eq_tag="i3", params={"r": r})


def sharma_saini_m2r_lower(s: Sample, r: int, j: int) -> BoundEntry:
    _need_two(s)
    _check_r(r)
    _check_index(j, s.n)
    n = s.n
    p = (n - 1) ** (2 * r - 1)
    value = ratio((1 + p) * (s[j] - mean(s)) ** (2 * r), n * p)
    return BoundEntry(
        "sharma-saini", "lower", "m2r", (value,), eq_tag="m2", params={"r": r, "j": j},
    )


def _check_r(r: int) -> None:
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")


def _interior(s: Sample):
    xbar = mean(s)
    if not (s.min < xbar < s.max):
        raise DegenerateSample("all values equal; mean coincides with an extreme")
    return xbar, s.max, s.min


def it1_raw_interval(s: Sample):
    """(lower, upper) for m'_3 in terms of mean, m'_2 and the extremes."""
    xbar, M, m = _interior(s)
    q = raw_moment(s, 2)
    lo = ratio(m**2 * xbar**2 - m * (m + xbar) * q + q**2, xbar - m)
    hi = ratio(M * (M + xbar) * q - M**2 * xbar**2 - q**2, M - xbar)
    return lo, hi


def it1_central_interval(s: Sample):
    """The raw-moment interval rewritten for m3; avoids cancellation in the conversion."""
    xbar, M, m = _interior(s)
    m2 = central_moment(s, 2)
    lo = ratio(m2**2 - (xbar - m) ** 2 * m2, xbar - m)
    hi = ratio((M - xbar) ** 2 * m2 - m2**2, M - xbar)
    return lo, hi


def raw_to_central_m3(m3_raw, m2, xbar):
    return m3_raw - 3 * m2 * xbar - xbar**3


def sharma_m3_bounds(s: Sample) -> list:
    _need_two(s)
    xbar, M, m = _interior(s)
    m2, m3 = central_moment(s, 2), central_moment(s, 3)
    lo_raw, hi_raw = it1_raw_interval(s)
    spread = M - m
    popoviciu_gap = nonneg_sqrt(ratio(spread**2, 4) - m2, scale=float(spread) ** 2)
    c = float(spread) ** 3 / (6 * SQRT3)
    return [
        BoundEntry("sharma-it1-raw", "two_sided", "m3_raw", (lo_raw, hi_raw), eq_tag="it1"),
        BoundEntry("sharma-it1", "two_sided", "m3", it1_central_interval(s), eq_tag="it1"),
        BoundEntry(
            "sharma-m3-extremes", "two_sided", "m3",
            (-ratio((xbar - m) ** 3, 4), ratio((M - xbar) ** 3, 4)), eq_tag="2.25raj20",
        ),
        # |m3| <= 2 m2 sqrt((M-m)^2/4 - m2), i.e. m2 + (m3 / 2m2)^2 <= (M-m)^2/4
        BoundEntry(
            "sharma-m3-popoviciu", "check", "m3",
            (m2 + ratio(m3, 2 * m2) ** 2, ratio(spread**2, 4)), eq_tag="2.2raj10",
            params={"m3_radius": 2 * float(m2) * popoviciu_gap},
        ),
        BoundEntry("sharma-m3-range", "two_sided", "m3", (-c, c), eq_tag="2.6raj18"),
    ]


def it3_upper(s: Sample) -> BoundEntry:
    """Upper bound on m4 from the first three central moments and the extremes."""
    _need_two(s)
    xbar, M, m = _interior(s)
    m2, m3 = central_moment(s, 2), central_moment(s, 3)
    prod = (M - xbar) * (xbar - m)
    denom = prod - m2
    if denom <= 0:
        raise BoundInapplicable(
            "(M - mean)(mean - m) - m2 vanishes: sample is supported on two points"
        )
    skew = M + m - 2 * xbar
    value = prod * m2 + skew * m3 - ratio((m3 - skew * m2) ** 2, denom)
    return BoundEntry("sharma-it3", "upper", "m4", (value,), eq_tag="it3")


def it4_upper(s: Sample) -> BoundEntry:
    """Upper bound (M-m)^4/64 on m4 - m2^2 - m3^2/m2."""
    _need_two(s)
    _interior(s)
    spread = s.max - s.min
    return BoundEntry("sharma-it4", "upper", "m4_combo", (ratio(spread**4, 64),), eq_tag="it4")


def m4_combo(s: Sample):
    """The quantity m4 - m2^2 - m3^2/m2 bounded by it4."""
    m2, m3, m4 = (central_moment(s, r) for r in (2, 3, 4))
    return m4 - m2**2 - ratio(m3**2, m2)


def sharma_m4_upper(s: Sample) -> list:
    return [it3_upper(s), it4_upper(s)]
