"""Order-statistic and segment-mean intervals from the 2r-th central moment.

The radii are raised to the power 2r internally (``upper_radius_power``,
``lower_radius_power``) so that equality cases can be checked exactly in
rational arithmetic before the final root is taken.
"""

from __future__ import annotations

import numpy as np

from .classic import nonneg_root, sharma_saini_m2r_lower
from .entry import BoundEntry
from .errors import BoundInapplicable, DegenerateSample
from .moments import Sample, _check_index, central_moment, mean, ratio, segment_mean

MAX_R = 8


def upper_radius_power(n: int, j: int, r: int, m2r):
    """(x_(k,j) - mean)^(2r) is at most this; zero when j == n."""
    if j == n:
        return 0
    p = (n - j) ** (2 * r - 1)
    return ratio(n * p * m2r, j ** (2 * r) + j * p)


def lower_radius_power(n: int, k: int, r: int, m2r):
    """(mean - x_(k,j))^(2r) is at most this; zero when k == 1."""
    if k == 1:
        return 0
    p = (k - 1) ** (2 * r - 1)
    q = n - k + 1
    return ratio(n * p * m2r, q ** (2 * r) + q * p)


def _check_r(r: int, max_r: int) -> None:
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    if r > max_r:
        raise ValueError(f"r={r} exceeds the cap {max_r}; pass max_r to raise it")


def radii(n: int, k: int, j: int, r: int, m2r, scale: float = 1.0) -> tuple:
    """(lower radius, upper radius) as floats."""
    q = 2 * r
    s = float(scale) ** q if scale else 1.0
    return (
        nonneg_root(lower_radius_power(n, k, r, m2r), q, s),
        nonneg_root(upper_radius_power(n, j, r, m2r), q, s),
    )


def _scale(s: Sample) -> float:
    return max(abs(float(s.max)), abs(float(s.min)), 1.0)


def general_segment_interval(s: Sample, k: int, j: int, r: int, max_r: int = MAX_R) -> BoundEntry:
    _check_index(k, s.n, "k")
    _check_index(j, s.n, "j")
    if k > j:
        raise IndexError(f"segment requires k <= j, got k={k}, j={j}")
    if s.n < 2:
        raise DegenerateSample("bound requires at least two values")
    _check_r(r, max_r)
    if (k, j) == (1, s.n) and r >= 2:
        raise BoundInapplicable("the full segment (1, n) is excluded for r >= 2")
    xbar = float(mean(s))
    lo, hi = radii(s.n, k, j, r, central_moment(s, 2 * r), _scale(s))
    return BoundEntry(
        "thm1-segment", "two_sided", "x_kj", (xbar - lo, xbar + hi),
        eq_tag="2e1", refines="ws", params={"k": k, "j": j, "r": r},
    )


def general_order_interval(s: Sample, j: int, r: int, max_r: int = MAX_R) -> BoundEntry:
    _check_index(j, s.n)
    if s.n < 2:
        raise DegenerateSample("bound requires at least two values")
    _check_r(r, max_r)
    xbar = float(mean(s))
    lo, hi = radii(s.n, j, j, r, central_moment(s, 2 * r), _scale(s))
    return BoundEntry(
        "thm1-order", "two_sided", "x_j", (xbar - lo, xbar + hi),
        eq_tag="2e3", refines="ws", params={"j": j, "r": r},
    )


def top_segment_m2r_lower(s: Sample, j: int, r: int):
    """Lower bound on m_2r from the mean of the j largest values (1 <= j <= n-1)."""
    if not 1 <= j <= s.n - 1:
        raise IndexError(f"j={j} outside 1..{s.n - 1}")
    n, p = s.n, (s.n - j) ** (2 * r - 1)
    return ratio((j ** (2 * r) + j * p) * (segment_mean(s, 1, j) - mean(s)) ** (2 * r), n * p)


def m2r_lower_piecewise(s: Sample, j: int, r: int, max_r: int = MAX_R) -> BoundEntry:
    """Lower bound on m_2r from a single order statistic, branch chosen by side of the mean."""
    _check_index(j, s.n)
    if s.n < 2:
        raise DegenerateSample("bound requires at least two values")
    _check_r(r, max_r)
    n, dev = s.n, s[j] - mean(s)
    if dev == 0:
        value = 0
    elif dev > 0:
        # dev > 0 forces j < n
        p = (n - j) ** (2 * r - 1)
        value = ratio((j ** (2 * r) + j * p) * dev ** (2 * r), n * p)
    else:
        # dev < 0 forces j > 1
        p = (j - 1) ** (2 * r - 1)
        q = n - j + 1
        value = ratio((q ** (2 * r) + q * p) * dev ** (2 * r), n * p)
    return BoundEntry(
        "re1", "lower", "m2r", (value,), eq_tag="re1", refines="sharma-saini",
        params={"j": j, "r": r},
    )


def best_m2r_lower_piecewise(s: Sample, r: int) -> BoundEntry:
    """The largest piecewise bound over all j."""
    return max((m2r_lower_piecewise(s, j, r) for j in range(1, s.n + 1)), key=lambda e: e.values[0])


def best_sharma_saini(s: Sample, r: int) -> BoundEntry:
    return max((sharma_saini_m2r_lower(s, r, j) for j in range(1, s.n + 1)), key=lambda e: e.values[0])


def abs_deviation_upper(s: Sample, j: int, r: int, max_r: int = MAX_R) -> BoundEntry:
    """Upper bound on d_j = |x_j - mean|."""
    _check_index(j, s.n)
    if s.n < 2:
        raise DegenerateSample("bound requires at least two values")
    _check_r(r, max_r)
    lo, hi = radii(s.n, j, j, r, central_moment(s, 2 * r), _scale(s))
    return BoundEntry(
        "abs-deviation", "upper", "d_j", (max(lo, hi),), eq_tag="1c1", refines="samuelson", params={"j": j, "r": r},
    )


def segment_radius_table(s: Sample, r: int, max_r: int = MAX_R) -> tuple:
    """Radii for every segment at once, as float arrays of length n.

    ``lower[k - 1]`` and ``upper[j - 1]`` give the interval
    ``[mean - lower[k-1], mean + upper[j-1]]`` for x_(k,j). The lower radius
    depends on k only and the upper on j only, so the n(n+1)/2 intervals
    collapse to two vectors.
    """
    if s.n < 2:
        raise DegenerateSample("bound requires at least two values")
    _check_r(r, max_r)
    n, m2r, sc = s.n, central_moment(s, 2 * r), _scale(s)
    scale = sc ** (2 * r)
    lower = np.array([nonneg_root(lower_radius_power(n, k, r, m2r), 2 * r, scale) for k in range(1, n + 1)])
    upper = np.array([nonneg_root(upper_radius_power(n, j, r, m2r), 2 * r, scale) for j in range(1, n + 1)])
    return lower, upper
