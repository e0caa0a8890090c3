"""Refinements of the moment bounds for samples of n distinct integers.

Every correction term is obtained by exact integer minimisation of its
defining sum over the split index k; closed forms are kept only as
cross-checks (``beta1_closed_form`` and friends).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .classic import SQRT3, it1_central_interval, it1_raw_interval, it3_upper, m4_combo, nonneg_root, nonneg_sqrt
from .entry import BoundEntry
from .errors import InvalidInput, RequiresDistinctIntegers
from .moments import Sample, central_moment, mean, ratio

DISTINCT = frozenset({"distinct_integers"})


class GammaKind(enum.Enum):
    GAMMA1 = "gamma1"
    GAMMA2 = "gamma2"
    GAMMA3 = "gamma3"


_WEIGHTS = {
    GammaKind.GAMMA1: lambda n, i: n - i,
    GammaKind.GAMMA2: lambda n, i: i - 1,
    GammaKind.GAMMA3: lambda n, i: (n - i) * (i - 1),
}


def gamma(n: int, k: int, kind: GammaKind) -> int:
    """Sum over i of (distance from i to the gap after position k)^2 times a weight."""
    if n < 3:
        raise InvalidInput(f"n must be at least 3, got {n}")
    if not 1 <= k <= n - 1:
        raise InvalidInput(f"k={k} outside 1..{n - 1}")
    w = _WEIGHTS[GammaKind(kind)]
    left = sum((k - i) ** 2 * w(n, i) for i in range(1, k + 1))
    right = sum((i - k - 1) ** 2 * w(n, i) for i in range(k + 1, n + 1))
    return left + right


@dataclass(frozen=True)
class BetaCorrection:
    n: int
    beta1: Fraction
    beta2: Fraction
    argmin_k: dict


def gamma_table(n: int, kind: GammaKind) -> np.ndarray:
    """gamma(n, k, kind) for k = 1..n-1 as an int64 array (entries stay below n^5)."""
    if n < 3 or n > 4000:
        raise InvalidInput(f"n must be in 3..4000, got {n}")
    i = np.arange(1, n + 1, dtype=np.int64)
    k = i[:-1, None]
    dist = np.where(i <= k, k - i, i - k - 1)
    w = np.array([_WEIGHTS[GammaKind(kind)](n, int(v)) for v in i], dtype=np.int64)
    return (dist * dist * w).sum(axis=1)


def _argmin(n: int, kind: GammaKind) -> tuple:
    vals = {k: int(v) for k, v in enumerate(gamma_table(n, kind), start=1)}
    best = min(vals.values())
    return best, tuple(k for k, v in vals.items() if v == best)


@lru_cache(maxsize=None)
def beta_correction(n: int) -> BetaCorrection:
    if not isinstance(n, int) or n < 3:
        raise InvalidInput(f"n must be an integer >= 3, got {n!r}")
    g1, k1 = _argmin(n, GammaKind.GAMMA1)
    g2, k2 = _argmin(n, GammaKind.GAMMA2)
    g3, k3 = _argmin(n, GammaKind.GAMMA3)
    assert g1 == g2, (n, g1, g2)
    return BetaCorrection(
        n=n,
        beta1=Fraction(g1, n),
        beta2=Fraction(g3, n),
        argmin_k={GammaKind.GAMMA1: k1, GammaKind.GAMMA2: k2, GammaKind.GAMMA3: k3},
    )


def beta1(n: int) -> Fraction:
    return beta_correction(n).beta1


def beta2(n: int) -> Fraction:
    return beta_correction(n).beta2


def beta1_closed_form(n: int) -> Fraction:
    if n % 3 == 0:
        return Fraction((n - 3) * (9 * n**2 - 23 * n + 12), 324)
    if n % 3 == 1:
        return Fraction((n - 1) * (9 * n**3 - 41 * n**2 + 46 * n + 4), 324 * n)
    return Fraction((n - 2) * (9 * n**3 - 32 * n**2 + 47 * n - 20), 324 * n)


def beta2_closed_form(n: int) -> Fraction:
    if n % 2 == 0:
        return Fraction((n - 2) * (n - 4) * (4 * n**2 - 11 * n + 2), 480)
    return Fraction((n - 1) * (n - 3) * (4 * n**3 - 19 * n**2 + 32 * n - 5), 480 * n)


def lemma1_conditions(b, c, t: int) -> tuple:
    """Conditions (a), (b) certifying t as floor of the largest root of x^2 + b x - c."""
    B, C = Fraction(b), Fraction(c)
    return C - t * t - t * B >= 0, (t + 1) ** 2 + t * B + B - C >= 0


def lemma2_conditions(b, c, t: int) -> tuple:
    """Conditions (a), (b) certifying t as floor of the smallest root of -x^2 + b x - c."""
    B, C = Fraction(b), Fraction(c)
    return C + t * t - t * B >= 0, t * B - (t + 1) ** 2 + B - C >= 0


def floor_of_largest_root(b, c) -> int:
    """floor of the largest root of x^2 + b x - c, for b, c >= 0."""
    if b < 0 or c < 0:
        raise InvalidInput("b and c must be non-negative")
    B, C = Fraction(b), Fraction(c)
    p = lambda x: x * x + B * x - C  # noqa: E731
    t = math.floor((-float(b) + math.sqrt(float(b) ** 2 + 4 * float(c))) / 2)
    while p(t) > 0:
        t -= 1
    while p(t + 1) <= 0:
        t += 1
    assert all(lemma1_conditions(b, c, t))
    return t


def floor_of_smallest_root(b, c) -> int:
    """floor of the smallest root of -x^2 + b x - c, for b, c >= 0 and b^2 >= 4c.

    Condition (b) of ``lemma2_conditions`` only holds when the two roots are
    at least 1 apart (b^2 - 4c >= 1); for a double root it fails.
    """
    if b < 0 or c < 0:
        raise InvalidInput("b and c must be non-negative")
    B, C = Fraction(b), Fraction(c)
    if B * B < 4 * C:
        raise InvalidInput("polynomial has no real roots (b^2 < 4c)")
    q = lambda x: x * x - B * x + C  # noqa: E731
    left_of_root = lambda x: 2 * x <= B and q(x) >= 0  # noqa: E731
    t = math.floor((float(b) - math.sqrt(max(float(b) ** 2 - 4 * float(c), 0.0))) / 2)
    while not left_of_root(t):
        t -= 1
    while left_of_root(t + 1):
        t += 1
    cond_a, cond_b = lemma2_conditions(b, c, t)
    assert cond_a and (cond_b or B * B - 4 * C < 1)
    return t


def _require_distinct(s: Sample) -> None:
    if s.n < 3:
        raise RequiresDistinctIntegers("refinements need at least three values")
    if not s.distinct_integers:
        raise RequiresDistinctIntegers("sample values are not pairwise distinct integers")


def m3_raw_bounds_refined(s: Sample) -> BoundEntry:
    _require_distinct(s)
    lo, hi = it1_raw_interval(s)
    b = beta1(s.n)
    return BoundEntry(
        "int-m3-raw", "two_sided", "m3_raw", (lo + b, hi - b),
        eq_tag="2t1", assumptions=DISTINCT, refines="sharma-it1-raw",
    )


def m3_central_bounds_refined(s: Sample) -> list:
    _require_distinct(s)
    xbar, M, m = mean(s), s.max, s.min
    b = beta1(s.n)
    lo, hi = it1_central_interval(s)
    c1 = (lo + b, hi - b)
    c2 = (-ratio((xbar - m) ** 3, 4) + b, ratio((M - xbar) ** 3, 4) - b)
    return [
        BoundEntry("int-m3-c1", "two_sided", "m3", c1, eq_tag="c1",
                   assumptions=DISTINCT, refines="sharma-it1"),
        BoundEntry("int-m3-c2", "two_sided", "m3", c2, eq_tag="c3",
                   assumptions=DISTINCT, refines="sharma-m3-extremes"),
    ]


def c3_spread_lower(m2, m3, beta) -> float:
    """Spread lower bound from m2 + ((m3 + beta)/(2 m2))^2 <= spread^2 / 4."""
    return 2 * nonneg_sqrt(m2 + ratio(m3 + beta, 2 * m2) ** 2)


def c4_spread_lower(m3, beta) -> float:
    """Spread lower bound from |m3 + beta| <= spread^3 / (6 sqrt 3)."""
    return nonneg_root(6 * SQRT3 * abs(float(m3 + beta)), 3)


def m3_spread_inequalities(s: Sample) -> list:
    _require_distinct(s)
    m2, m3 = central_moment(s, 2), central_moment(s, 3)
    spread = s.max - s.min
    b = beta1(s.n)
    return [
        BoundEntry("int-m3-c3", "check", "m3", (m2 + ratio(m3 + b, 2 * m2) ** 2, ratio(spread**2, 4)),
                   eq_tag="3c1", assumptions=DISTINCT, refines="sharma-m3-popoviciu"),
        BoundEntry("int-m3-c3-spread", "lower", "spread", (c3_spread_lower(m2, m3, b),),
                   eq_tag="3c1", assumptions=DISTINCT, refines="sharma-m3-popoviciu"),
        BoundEntry("int-m3-c4", "check", "m3",
                   (abs(float(m3 + b)), float(spread) ** 3 / (6 * SQRT3)),
                   eq_tag="4c1", assumptions=DISTINCT, refines="sharma-m3-range"),
        BoundEntry("int-m3-c4-spread", "lower", "spread", (c4_spread_lower(m3, b),),
                   eq_tag="4c1", assumptions=DISTINCT, refines="sharma-m3-range"),
    ]


def m4_upper_refined(s: Sample) -> BoundEntry:
    _require_distinct(s)
    base = it3_upper(s)
    return BoundEntry(
        "int-m4-upper", "upper", "m4", (base.values[0] - beta2(s.n),),
        eq_tag="3t11", assumptions=DISTINCT, refines="sharma-it3",
    )


def c6_spread_lower(m2, m3, m4, beta) -> float:
    """Spread lower bound from m4 - m2^2 - m3^2/m2 <= spread^4/64 - beta."""
    return nonneg_root(64 * (m4 - m2**2 - ratio(m3**2, m2) + beta), 4)


def m4_combo_upper_refined(s: Sample) -> BoundEntry:
    _require_distinct(s)
    spread = s.max - s.min
    return BoundEntry(
        "int-m4-combo", "upper", "m4_combo", (ratio(spread**4, 64) - beta2(s.n),),
        eq_tag="5c1", assumptions=DISTINCT, refines="sharma-it4",
    )


def m4_combo_spread_lower(s: Sample) -> BoundEntry:
    _require_distinct(s)
    m2, m3, m4 = (central_moment(s, r) for r in (2, 3, 4))
    return BoundEntry(
        "int-m4-combo-spread", "lower", "spread", (c6_spread_lower(m2, m3, m4, beta2(s.n)),),
        eq_tag="5c1", assumptions=DISTINCT, refines="sharma-it4",
    )


def _power4_prefix(t: int) -> int:
    return sum(i**4 for i in range(1, t + 1))


@lru_cache(maxsize=None)
def count_only_minimum(n: int, integer_mean: bool) -> int:
    """min over the mean's position of the sum of fourth-power gaps."""
    S = _power4_prefix
    if integer_mean:
        return min(S(k - 1) + S(n - k) for k in range(1, n + 1))
    return min(S(k - 1) + S(n - k - 1) for k in range(1, n))


@lru_cache(maxsize=None)
def range_correction_minimum(n: int, integer_mean: bool) -> int:
    """As ``count_only_minimum`` but over the n-2 interior values."""
    S = _power4_prefix
    if integer_mean:
        return min(S(max(k - 2, 0)) + S(max(n - 1 - k, 0)) for k in range(1, n + 1))
    return min(S(max(k - 2, 0)) + S(max(n - k - 2, 0)) for k in range(1, n))


def count_only_closed_form(n: int, integer_mean: bool) -> Fraction:
    if integer_mean:
        if n % 2 == 0:
            return Fraction(3 * n**4 + 20 * n**2 - 8, 240)
        return Fraction((n + 1) * (n - 1) * (3 * n**2 - 7), 240)
    if n % 2 == 0:
        return Fraction((n - 1) * (n - 2) * (3 * n**2 - 6 * n - 4), 240)
    return Fraction((n - 1) * (3 * n**4 - 12 * n**3 + 38 * n**2 - 52 * n + 15), 240 * n)


def range_correction_closed_form(n: int, integer_mean: bool) -> Fraction:
    if integer_mean:
        if n % 2 == 0:
            return Fraction((n - 2) * (3 * n**4 - 24 * n**3 + 92 * n**2 - 176 * n + 120), 240 * n)
        return Fraction((n - 1) * (n - 2) * (n - 3) * (3 * n**2 - 12 * n + 5), 240 * n)
    if n % 2 == 0:
        return Fraction((n - 4) * (n - 3) * (n - 2) * (3 * n**2 - 18 * n + 20), 240 * n)
    return Fraction((n - 3) * (3 * n**4 - 36 * n**3 + 182 * n**2 - 444 * n + 415), 240 * n)


def range_correction(n: int, integer_mean: bool) -> Fraction:
    """c(n): the amount the range-based m4 lower bound gains for distinct integers."""
    if n < 3:
        raise InvalidInput(f"n must be at least 3, got {n}")
    return Fraction(range_correction_minimum(n, integer_mean), n)


def m4_lower_count_only(n: int, integer_mean: bool) -> BoundEntry:
    if not isinstance(n, int) or n < 3:
        raise InvalidInput(f"n must be an integer >= 3, got {n!r}")
    value = Fraction(count_only_minimum(n, integer_mean), n)
    assumptions = DISTINCT | ({"integer_mean"} if integer_mean else set())
    return BoundEntry(
        "int-m4-count", "lower", "m4", (value,), eq_tag="4t2" if integer_mean else "4t1",
        assumptions=frozenset(assumptions), refines="sharma-i3",
        params={"n": n, "integer_mean": int(integer_mean)},
    )


def m4_lower_with_range(s: Sample) -> BoundEntry:
    _require_distinct(s)
    im = s.integer_mean
    spread = s.max - s.min
    value = ratio(spread**4, 8 * s.n) + range_correction(s.n, im)
    assumptions = DISTINCT | ({"integer_mean"} if im else set())
    return BoundEntry(
        "int-m4-range", "lower", "m4", (value,), eq_tag="5t2" if im else "5t1",
        assumptions=frozenset(assumptions), refines="sharma-i3",
    )


def all_refinements(s: Sample) -> list:
    """Every distinct-integer bound applicable to ``s``."""
    out = [m3_raw_bounds_refined(s)]
    out += m3_central_bounds_refined(s)
    out += m3_spread_inequalities(s)
    out.append(m4_upper_refined(s))
    out.append(m4_combo_upper_refined(s))
    out.append(m4_combo_spread_lower(s))
    out.append(m4_lower_count_only(s.n, False))
    if s.integer_mean:
        out.append(m4_lower_count_only(s.n, True))
    out.append(m4_lower_with_range(s))
    return out
