"""Exact real-root isolation with Sturm sequences over the rationals.

Float coefficients are converted to ``Fraction`` exactly, so the sign
computations never suffer round-off. Polynomials are lists of coefficients,
lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidInput, WidenInterval

MAX_DEGREE = 16


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def from_monic(coeffs_high_first: Sequence) -> list:
    """Highest-first coefficient list to an exact lowest-first list."""
    p = [Fraction(c) for c in reversed(list(coeffs_high_first))]
    return _trim(p)


def evaluate(p: list, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: list) -> list:
    return [i * p[i] for i in range(1, len(p))]


def divmod_poly(a: list, b: list) -> tuple:
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        _trim(a)
    return _trim(q), a


def gcd_poly(a: list, b: list) -> list:
    a, b = list(a), list(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return [c / a[-1] for c in a] if a else a


def squarefree_factors(p: list) -> list:
    """Yun's algorithm: [(a_1, 1), (a_2, 2), ...] with p = lc * prod a_i^i."""
    out = []
    dp = derivative(p)
    a = gcd_poly(p, dp)
    b, _ = divmod_poly(p, a)
    c, _ = divmod_poly(dp, a)
    i = 1
    while len(b) > 1:
        d = [x - y for x, y in _zip_pad(c, derivative(b))]
        _trim(d)
        g = gcd_poly(b, d) if d else [c / b[-1] for c in b]
        if len(g) > 1:
            out.append((g, i))
        b, _ = divmod_poly(b, g)
        c, _ = divmod_poly(d, g) if d else ([], [])
        i += 1
    return out


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def sturm_sequence(p: list) -> list:
    seq = [p, derivative(p)]
    while len(seq[-1]) > 1:
        _, r = divmod_poly(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def sign_variations(seq: list, x) -> int:
    signs = [s for s in (_sign(evaluate(q, x)) for q in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def cauchy_bound(p: list) -> Fraction:
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootBracket:
    root: float
    lo: Fraction
    hi: Fraction
    multiplicity: int


def _isolate_squarefree(q: list, lo: Fraction, hi: Fraction, tol: Fraction) -> list:
    """Roots of square-free q in (lo, hi); neither endpoint may be a root."""
    seq = sturm_sequence(q)
    out = []
    stack = [(lo, hi, sign_variations(seq, lo), sign_variations(seq, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count == 0:
            continue
        if count == 1:
            out.append(_refine(q, a, b, tol))
            continue
        mid = _split_point(q, a, b)
        vm = sign_variations(seq, mid)
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    return out


_SPLITS = (Fraction(1, 2), Fraction(17, 32), Fraction(15, 32), Fraction(9, 16), Fraction(7, 16))


def _split_point(q: list, a: Fraction, b: Fraction) -> Fraction:
    """A point strictly inside (a, b) that is not a root of q."""
    for f in _SPLITS:
        mid = a + (b - a) * f
        if evaluate(q, mid) != 0:
            return mid
    k = 33
    while True:
        mid = a + (b - a) * Fraction(k, 64)
        if evaluate(q, mid) != 0:
            return mid
        k += 1


def _refine(q: list, a: Fraction, b: Fraction, tol: Fraction) -> tuple:
    sa = _sign(evaluate(q, a))
    while b - a > tol:
        mid = (a + b) / 2
        sm = _sign(evaluate(q, mid))
        if sm == 0:
            return mid, mid
        if sm == sa:
            a = mid
        else:
            b = mid
    # the bracket isolates one root; a small-denominator rational inside it that
    # is a root is that root exactly
    guess = ((a + b) / 2).limit_denominator(1000)
    if a <= guess <= b and evaluate(q, guess) == 0:
        return guess, guess
    return a, b


def isolate_real_roots(
    coeffs_high_first: Sequence,
    lo=None,
    hi=None,
    tol: float = 1e-10,
    expected: Optional[int] = None,
) -> list:
    """All real roots in [lo, hi] (default: everywhere), ascending, with multiplicities.

    Raises WidenInterval when ``expected`` roots were requested but some of
    the polynomial's real roots fall outside [lo, hi].
    """
    p = from_monic(coeffs_high_first)
    if len(p) - 1 > MAX_DEGREE:
        raise InvalidInput(f"degree {len(p) - 1} exceeds {MAX_DEGREE}")
    if len(p) <= 1:
        return []
    bound = cauchy_bound(p)
    ftol = Fraction(tol)
    found = []
    for factor, mult in squarefree_factors(p):
        for a, b in _isolate_squarefree(factor, -bound, bound, ftol):
            found.append(RootBracket(float((a + b) / 2), a, b, mult))
    found.sort(key=lambda rb: rb.lo)
    lo_f = None if lo is None else Fraction(lo)
    hi_f = None if hi is None else Fraction(hi)
    inside = [
        rb for rb in found
        if (lo_f is None or rb.hi >= lo_f) and (hi_f is None or rb.lo <= hi_f)
    ]
    if expected is not None:
        total = sum(rb.multiplicity for rb in inside)
        if total < expected and len(inside) < len(found):
            raise WidenInterval(
                f"only {total} of {expected} roots lie in [{lo}, {hi}]; widen the interval"
            )
    return inside


def real_roots(coeffs_high_first: Sequence, tol: float = 1e-10) -> list:
    """Real roots repeated by multiplicity, descending."""
    out = []
    for rb in isolate_real_roots(coeffs_high_first, tol=tol):
        out.extend([rb.root] * rb.multiplicity)
    return sorted(out, reverse=True)
