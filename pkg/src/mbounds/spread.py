"""Spread (max - min) bounds obtained by solving moment inequalities for M - m.

Shared by the matrix (eigenvalue spread) and polynomial (root span) layers,
which only differ in how they obtain the central moments.
"""

from __future__ import annotations

import math

from .classic import nonneg_root
from .entry import BoundEntry
from .integer import DISTINCT, beta2, c6_spread_lower, range_correction


def nagy_spread_upper(n: int, m2) -> float:
    return math.sqrt(2 * n * float(m2))


def sharma_spread_upper(n: int, m2r, r: int = 2) -> float:
    return nonneg_root(2 ** (2 * r - 1) * n * m2r, 2 * r)


def it4_spread_lower(m2, m3, m4) -> float:
    return c6_spread_lower(m2, m3, m4, 0)


def refined_spread_upper(n: int, m4, integer_mean: bool) -> float:
    """spread^4 <= 8n (m4 - c(n)) for n distinct integers."""
    return nonneg_root(8 * n * (m4 - range_correction(n, integer_mean)), 4)


def refined_spread_lower(n: int, m2, m3, m4) -> float:
    return c6_spread_lower(m2, m3, m4, beta2(n))


def spread_entries(n: int, m2, m3, m4, distinct: bool, integer_mean: bool) -> list:
    """Baseline spread bounds, plus the distinct-integer ones when ``distinct``."""
    out = [
        BoundEntry("nagy-spread", "upper", "spread", (nagy_spread_upper(n, m2),), eq_tag="i2"),
        BoundEntry("sharma-i3-spread", "upper", "spread", (sharma_spread_upper(n, m4, 2),),
                   eq_tag="i3", params={"r": 2}),
        BoundEntry("sharma-it4-spread", "lower", "spread", (it4_spread_lower(m2, m3, m4),),
                   eq_tag="it4"),
    ]
    if distinct:
        upper_tags = frozenset(DISTINCT | ({"integer_mean"} if integer_mean else set()))
        out += [
            BoundEntry("int-spread-upper", "upper", "spread",
                       (refined_spread_upper(n, m4, integer_mean),),
                       eq_tag="5t2" if integer_mean else "5t1", assumptions=upper_tags,
                       refines="sharma-i3-spread"),
            BoundEntry("int-spread-lower", "lower", "spread",
                       (refined_spread_lower(n, m2, m3, m4),),
                       eq_tag="5c1", assumptions=DISTINCT, refines="sharma-it4-spread"),
        ]
    return out


def published_spread_upper_variant(n: int, m4, integer_mean: bool) -> float:
    """(8n m4 - n c(n))^(1/4): the arithmetic behind the published example digits."""
    return nonneg_root(8 * n * m4 - n * range_correction(n, integer_mean), 4)

