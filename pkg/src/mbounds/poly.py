"""Moments, root intervals and span bounds for real-rooted polynomials.

All root intervals go through the moment pipeline: coefficients give the
central moments of the roots, and the order-statistic intervals are then
applied with mean zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .entry import BoundEntry
from .errors import InvalidInput, NotAllRootsReal, ParseError
from .integer import count_only_closed_form
from .moments import _check_index, _normalize, parse_number, ratio
from .refined import radii
from .spread import spread_entries


@dataclass(frozen=True)
class DepressedPolynomial:
    """x^n + b_2 x^(n-2) + b_3 x^(n-3) + ... + b_n."""

    degree: int
    b: tuple  # (b_2, ..., b_n)

    def __post_init__(self):
        if self.degree < 2:
            raise InvalidInput("degree must be at least 2")
        if len(self.b) != self.degree - 1:
            raise InvalidInput(f"expected {self.degree - 1} coefficients b_2..b_n, got {len(self.b)}")

    @classmethod
    def from_dict(cls, degree: int, coeffs: dict) -> "DepressedPolynomial":
        b = [0] * (degree - 1)
        for key, val in coeffs.items():
            i = int(str(key).lstrip("b"))
            if not 2 <= i <= degree:
                raise InvalidInput(f"coefficient {key} outside b2..b{degree}")
            b[i - 2] = _normalize(val)
        return cls(degree, tuple(b))

    def coeff(self, i: int):
        """b_i, with absent coefficients equal to 0."""
        return self.b[i - 2] if 2 <= i <= self.degree else 0

    def monic_coefficients(self) -> tuple:
        """Coefficients highest degree first: (1, 0, b_2, ..., b_n)."""
        return (1, 0) + self.b


@dataclass(frozen=True)
class PolyMoments:
    n: int
    mean: int
    m2: object
    m3: object
    m4: object


def depress(coeffs: Sequence) -> tuple:
    """Shift x -> x - a_1/n to remove the x^(n-1) term.

    ``coeffs`` are a_1..a_n of x^n + a_1 x^(n-1) + ... + a_n. Returns (shift, DepressedPolynomial) where the roots of
    the result are the original roots plus ``shift``.
    """
    a = [_normalize(c) for c in coeffs]
    if not a:
        raise InvalidInput("empty coefficient list")
    n = len(a)
    if n < 2:
        raise InvalidInput("degree must be at least 2")
    full = [1] + a  # c_0 = 1 (x^n), c_i multiplies x^(n-i)
    shift = ratio(a[0], n)
    # f(y - shift) expanded: coefficient of y^(n-i)
    new = []
    for i in range(n + 1):
        total = 0
        for t in range(i + 1):
            # term c_t (y - s)^(n-t) contributes to y^(n-i) with binom(n-t, i-t)(-s)^(i-t)
            total += full[t] * comb(n - t, i - t) * (-shift) ** (i - t)
        new.append(ratio(total, 1) if isinstance(total, (int, Fraction)) else total)
    new[1] = 0
    return shift, DepressedPolynomial(n, tuple(new[2:]))


def expand_shift(p: DepressedPolynomial, shift) -> tuple:
    """Inverse of ``depress``: coefficients a_1..a_n of p(x + shift)."""
    n = p.degree
    full = list(p.monic_coefficients())
    out = []
    for i in range(n + 1):
        total = sum(full[t] * comb(n - t, i - t) * shift ** (i - t) for t in range(i + 1))
        out.append(total)
    return tuple(out[1:])


def poly_moments(p: DepressedPolynomial) -> PolyMoments:
    n = p.degree
    b2, b3, b4 = p.coeff(2), p.coeff(3), p.coeff(4)
    if b2 > 0:
        raise NotAllRootsReal("b_2 > 0 forces a negative sum of squared roots")
    return PolyMoments(
        n=n, mean=0,
        m2=ratio(-2 * b2, n),
        m3=ratio(-3 * b3, n),
        m4=ratio(2 * (b2 * b2 - 2 * b4), n),
    )


def root_interval(p: DepressedPolynomial, j: int, r: int, center=0) -> BoundEntry:
    """Interval for the j-th largest root; ``center`` is the root mean (minus the depressing shift)."""
    n = p.degree
    _check_index(j, n)
    if r not in (1, 2):
        raise InvalidInput("root intervals are available for r = 1 and r = 2")
    if r == 2 and n < 5:
        raise InvalidInput("the r = 2 root interval requires degree >= 5")
    pm = poly_moments(p)
    m2r = pm.m2 if r == 1 else pm.m4
    lo, hi = radii(n, j, j, r, m2r)
    return BoundEntry(
        "ws-root" if r == 1 else "root-m4", "two_sided", "root_j", (float(center) - lo, float(center) + hi),
        eq_tag="ipe3" if r == 1 else "pe2",
        refines=None if r == 1 else "ws-root", params={"j": j, "r": r},
    )


def integer_roots_threshold(n: int, integer_mean: bool = True) -> Fraction:
    """Least possible b_2^2 - 2 b_4 when the undepressed roots are n distinct integers.

    ``integer_mean`` says whether those roots have an integer mean, i.e. whether
    the depressing shift was an integer.
    """
    return n * count_only_closed_form(n, integer_mean) / 2


def integer_roots_necessary(p: DepressedPolynomial, integer_mean: bool = True) -> BoundEntry:
    """Check entry; a failing check proves p has no n distinct integer roots."""
    n = p.degree
    if n < 3:
        raise InvalidInput("the integer-root test needs degree >= 3")
    lhs = p.coeff(2) ** 2 - 2 * p.coeff(4)
    rhs = integer_roots_threshold(n, integer_mean)
    tags = {"distinct_integers"} | ({"integer_mean"} if integer_mean else set())
    return BoundEntry(
        "int-roots-necessary", "check", "b2_2b4", (ratio(rhs, 1), ratio(lhs, 1)),
        eq_tag="p4t2" if integer_mean else "p4t1", assumptions=frozenset(tags),
    )


def span_bounds(p: DepressedPolynomial, distinct_integer_roots: bool = False,
                integer_mean: bool = True) -> list:
    """Span bounds; ``integer_mean`` refers to the undepressed roots (integral shift)."""
    n = p.degree
    if n < 3:
        raise InvalidInput("span bounds need degree >= 3")
    pm = poly_moments(p)
    if pm.m2 <= 0:
        raise InvalidInput("m2 = 0: all roots coincide")
    return spread_entries(n, pm.m2, pm.m3, pm.m4, distinct_integer_roots, integer_mean)


def parse_coefficients(tokens: Sequence[str]) -> tuple:
    """CLI coefficient list, highest degree first; returns (shift, DepressedPolynomial).

    A leading 1 is always read as the x^n coefficient; otherwise the list is
    taken to start at a_1.
    """
    vals = []
    for tok in tokens:
        for part in str(tok).replace(",", " ").split():
            try:
                vals.append(_normalize(parse_number(part)))
            except ValueError as exc:
                raise ParseError(f"bad coefficient {part!r}: {exc}") from None
    if len(vals) >= 3 and vals[0] == 1:
        vals = vals[1:]
    return depress(vals)


def read_poly_json(text: str) -> DepressedPolynomial:
    obj = json.loads(text)
    return DepressedPolynomial.from_dict(int(obj["degree"]), obj.get("coeffs", {}))
