"""Brute-force ground truth and the bound verification harness."""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import classic, integer, refined
from .errors import BoundInapplicable, InvalidInput, NotAllRootsReal
from .matrix import SquareMatrix, trace_power
from .moments import Sample, central_moment, mean, new_sample, raw_moment, segment_mean
from .sturm import isolate_real_roots, real_roots

# ---------------------------------------------------------------- generators


def enumerate_distinct_integer_samples(n: int, lo: int, hi: int) -> Iterator[Sample]:
    """Every n-subset of {lo..hi}, each exactly once, as a descending Sample."""
    if hi - lo + 1 < n or n < 1:
        raise InvalidInput(f"cannot choose {n} distinct integers from {lo}..{hi}")
    for combo in itertools.combinations(range(hi, lo - 1, -1), n):
        yield Sample(combo)


def random_real_samples(count: int, n_range: tuple, value_range: tuple, seed: int) -> Iterator[Sample]:
    rng = random.Random(seed)
    lo, hi = value_range
    for _ in range(count):
        n = rng.randint(*n_range)
        yield new_sample(rng.uniform(lo, hi) for _ in range(n))


def random_distinct_integer_samples(count: int, n_range: tuple, value_range: tuple, seed: int):
    rng = random.Random(seed)
    lo, hi = value_range
    for _ in range(count):
        n = rng.randint(*n_range)
        yield new_sample(rng.sample(range(lo, hi + 1), n))


def two_block_samples(n_range: tuple, value_range: tuple, seed: int, count: Optional[int] = None):
    """Samples a*j, b*(n-j) with a > b; exhaustive over (n, j) unless ``count`` is set."""
    rng = random.Random(seed)
    lo, hi = value_range
    if hi <= lo:
        raise InvalidInput("two-block samples need hi > lo")

    def pair():
        a, b = sorted(rng.sample(range(lo, hi + 1), 2), reverse=True)
        # a rational offset keeps the fixtures off the integer lattice
        return a + Fraction(rng.randint(0, 3), 4), b

    if count is None:
        for n in range(max(2, n_range[0]), n_range[1] + 1):
            for j in range(1, n):
                a, b = pair()
                yield Sample((a,) * j + (b,) * (n - j))
    else:
        for _ in range(count):
            n = rng.randint(max(2, n_range[0]), n_range[1])
            j = rng.randint(1, n - 1)
            a, b = pair()
            yield Sample((a,) * j + (b,) * (n - j))


def unimodular_pair(n: int, rng: random.Random, steps: Optional[int] = None) -> tuple:
    """Integer P with det 1 and its exact integer inverse, from elementary row operations."""
    P = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    Pinv = P.copy()
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            break
        c = rng.choice((-1, 1))
        P[i, :] = P[i, :] + c * P[j, :]
        Pinv[:, j] = Pinv[:, j] - c * Pinv[:, i]
    return P, Pinv


def similarity_fixture(spectrum, rng: random.Random) -> SquareMatrix:
    n = len(spectrum)
    P, Pinv = unimodular_pair(n, rng)
    D = np.zeros((n, n), dtype=object)
    D[:] = 0
    for i, lam in enumerate(spectrum):
        D[i, i] = lam
    return SquareMatrix(P @ D @ Pinv)


def spectral_fixtures(count: int, n_range: tuple, value_range: tuple, seed: int, distinct: bool = False):
    """(matrix, spectrum) pairs with known integer eigenvalues."""
    rng = random.Random(seed)
    lo, hi = value_range
    for _ in range(count):
        n = rng.randint(*n_range)
        if distinct:
            spec = rng.sample(range(lo, hi + 1), n)
        else:
            spec = [rng.randint(lo, hi) for _ in range(n)]
        yield similarity_fixture(spec, rng), sorted(spec, reverse=True)


# ---------------------------------------------------------------- spectra


def characteristic_polynomial(A: SquareMatrix) -> list:
    """det(xI - A), highest degree first, from power sums via Newton's identities."""
    n = A.n
    if n > 16:
        raise InvalidInput("characteristic polynomial limited to n <= 16")
    p = [None] + [trace_power(A, k) for k in range(1, n + 1)]
    e = [1]
    for k in range(1, n + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * p[i] for i in range(1, k + 1))
        e.append(Fraction(acc) / k if A.exact else acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(n + 1)]
    return [c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c for c in coeffs]


def eigenvalues(A: SquareMatrix) -> list:
    """Real eigenvalues, descending, assuming a real spectrum."""
    roots = real_roots(characteristic_polynomial(A))
    if len(roots) != A.n:
        raise NotAllRootsReal(f"found {len(roots)} real eigenvalues for an order-{A.n} matrix")
    return roots


def poly_roots(coeffs_high_first) -> list:
    return real_roots(coeffs_high_first)


# ---------------------------------------------------------------- ground truth


def truth_for(entry, s: Sample):
    t, p = entry.target, entry.params
    if t == "x_j":
        return s[p["j"]]
    if t == "x_kj":
        return segment_mean(s, p["k"], p["j"])
    if t == "m2r":
        return central_moment(s, 2 * p.get("r", 1))
    if t == "m3":
        return central_moment(s, 3)
    if t == "m3_raw":
        return raw_moment(s, 3)
    if t == "m4":
        return central_moment(s, 4)
    if t == "m4_combo":
        return classic.m4_combo(s)
    if t == "d_j":
        return abs(s[p["j"]] - mean(s))
    if t == "spread":
        return s.max - s.min
    raise ValueError(f"no ground truth for target {t!r}")


# ---------------------------------------------------------------- checkers
# Each checker maps a Sample to a list of findings:
#   ("bound", entry)                       entry must hold for the sample
#   ("check", entry)                       a check entry whose inequality must hold
#   ("tighter", refined, baseline)         refined no looser than baseline
#   ("equal", id, lhs, rhs, rel_tol)       lhs == rhs (exact if rational)

R_MAX = 4


def _classic(s: Sample) -> list:
    out = []
    if s.n < 2:
        return out
    n = s.n
    for j in range(1, n + 1):
        out.append(("bound", classic.samuelson_interval(s, j)))
        for r in range(1, R_MAX + 1):
            out.append(("bound", classic.sharma_saini_m2r_lower(s, r, j)))
    xbar = float(mean(s))
    lower, upper = classic.ws_radius_table(s)
    out.append(("grid", "ws", xbar - lower, xbar + upper, None))
    for k, j in _probe_pairs(n):
        out.append(("bound", classic.ws_interval(s, k, j)))
        out.append(("grid_probe", "ws", k, j, classic.ws_interval(s, k, j), xbar - lower, xbar + upper))
    out.append(("bound", classic.nagy_m2_lower(s)))
    for r in range(1, R_MAX + 1):
        out.append(("bound", classic.sharma_m2r_lower(s, r)))
    if s.min < mean(s) < s.max:
        for e in classic.sharma_m3_bounds(s):
            out.append(("check" if e.kind == "check" else "bound", e))
        out.append(("bound", classic.it4_upper(s)))
        try:
            out.append(("bound", classic.it3_upper(s)))
        except BoundInapplicable:
            pass
    return out


def _thm1(s: Sample) -> list:
    out = []
    if s.n < 2:
        return out
    n = s.n
    for r in range(1, R_MAX + 1):
        for j in range(1, n + 1):
            out.append(("bound", refined.general_order_interval(s, j, r)))
            out.append(("bound", refined.m2r_lower_piecewise(s, j, r)))
            out.append(("bound", refined.abs_deviation_upper(s, j, r)))
            if j < n:
                e8 = refined.top_segment_m2r_lower(s, j, r)
                out.append(("equal_le", f"e8[j={j},r={r}]", e8, central_moment(s, 2 * r)))
        xbar = float(mean(s))
        lower, upper = refined.segment_radius_table(s, r)
        lo, hi = xbar - lower, xbar + upper
        out.append(("grid", f"thm1-segment[r={r}]", lo, hi, (1, n) if r >= 2 else None))
        if r == 1:
            ws_lower, ws_upper = classic.ws_radius_table(s)
            out.append(("grid_equal", "thm1-r1-vs-ws", lo, hi, xbar - ws_lower, xbar + ws_upper, 1e-12))
        for k, j in _probe_pairs(n):
            if (k, j) == (1, n) and r >= 2:
                continue
            seg = refined.general_segment_interval(s, k, j, r)
            out.append(("bound", seg))
            out.append(("grid_probe", f"thm1-segment[r={r}]", k, j, seg, lo, hi))
            if r == 1:
                ws = classic.ws_interval(s, k, j)
                for a, b in zip(seg.values, ws.values):
                    out.append(("equal", f"thm1-r1-vs-ws[k={k},j={j}]", a, b, 1e-12))
    return out


PROBE_LIMIT = 24


def _probe_pairs(n: int) -> list:
    """Segments checked through the per-pair functions as well as the radius table.

    Every pair when there are few of them, otherwise a fixed pseudo-random
    selection that always includes the corners.
    """
    pairs = [(k, j) for j in range(1, n + 1) for k in range(1, j + 1)]
    if len(pairs) <= PROBE_LIMIT:
        return pairs
    rng = random.Random(n)
    corners = [(1, 1), (1, n), (n, n), (1, n - 1), (2, n)]
    rest = [p for p in pairs if p not in corners]
    return corners + rng.sample(rest, PROBE_LIMIT - len(corners))


def segment_mean_grid(s: Sample) -> np.ndarray:
    """n x n float array with x_(k,j) at [k-1, j-1] for k <= j and NaN elsewhere."""
    n = s.n
    if s.exact:
        prefix = [0] + list(itertools.accumulate(s.values))
        grid = np.full((n, n), np.nan)
        for j in range(1, n + 1):
            for k in range(1, j + 1):
                grid[k - 1, j - 1] = float(Fraction(prefix[j] - prefix[k - 1]) / (j - k + 1))
        return grid
    prefix = np.concatenate(([0.0], np.cumsum(np.asarray(s.values, dtype=float))))
    idx = np.arange(n)
    count = idx[None, :] - idx[:, None] + 1
    with np.errstate(invalid="ignore", divide="ignore"):
        grid = (prefix[1:][None, :] - prefix[:-1][:, None]) / count
    grid[count < 1] = np.nan
    return grid


def _two_block_equalities(s: Sample, side: str) -> list:
    """Exact equality of the order-statistic bound at the block boundary."""
    vals = s.values
    j = next(i for i in range(1, s.n) if vals[i] != vals[i - 1])
    xbar = mean(s)
    out = []
    for r in range(1, 4):
        m2r = central_moment(s, 2 * r)
        if side == "upper":
            lhs = refined.upper_radius_power(s.n, j, r, m2r)
            rhs = (s[j] - xbar) ** (2 * r)
            out.append(("equal", f"thm1-upper-tight[j={j},r={r}]", lhs, rhs, 0.0))
        else:
            lhs = refined.lower_radius_power(s.n, j + 1, r, m2r)
            rhs = (xbar - s[j + 1]) ** (2 * r)
            out.append(("equal", f"thm1-lower-tight[k={j + 1},r={r}]", lhs, rhs, 0.0))
    return out


def _quantity(e) -> str:
    if e.target == "m2r" and e.params.get("r", 1) == 2:
        return "m4"
    return e.target


def _integer(s: Sample) -> list:
    if s.n < 3 or not s.distinct_integers:
        return []
    out = []
    refs = {e.id: e for e in integer.all_refinements(s)}
    for e in refs.values():
        if e.kind == "check":
            out.append(("check", e))
        else:
            out.append(("bound", e))
    base = {e.id: e for e in classic.sharma_m3_bounds(s)}
    base["sharma-it3"] = classic.it3_upper(s)
    base["sharma-it4"] = classic.it4_upper(s)
    base["sharma-i3"] = classic.sharma_m2r_lower(s, 2)
    for e in refs.values():
        b = base.get(e.refines)
        # the count-only bound ignores the range, so it need not beat the range baseline
        if b is not None and e.kind != "check" and e.kind == b.kind and _quantity(e) == _quantity(b) and e.id != "int-m4-count":
            out.append(("tighter", e, b))
    return out


CHECKERS = {
    "classic": _classic,
    "thm1": _thm1,
    "thm1-upper": lambda s: _two_block_equalities(s, "upper"),
    "thm1-lower": lambda s: _two_block_equalities(s, "lower"),
    "integer": _integer,
}
ALIASES = {
    "all-real": ("classic", "thm1"),
    "all-integer": ("integer",),
    "all": ("classic", "thm1", "integer"),
    "thm1-equality": ("thm1-upper", "thm1-lower"),
}


def resolve_bounds(names) -> tuple:
    out = []
    for name in names:
        for item in ALIASES.get(name, (name,)):
            if item not in CHECKERS:
                raise InvalidInput(f"unknown bound group {item!r}; choose from {sorted(CHECKERS) + sorted(ALIASES)}")
            if item not in out:
                out.append(item)
    return tuple(out)


def _exactish(x) -> bool:
    return isinstance(x, (int, Fraction))


def _le(a, b, tol: float) -> bool:
    if _exactish(a) and _exactish(b):
        return a <= b
    a, b = float(a), float(b)
    return a <= b + tol * max(1.0, abs(a), abs(b))


def _eq(a, b, tol: float) -> bool:
    if _exactish(a) and _exactish(b):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=tol, abs_tol=tol)


def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x if isinstance(x, int) else float(x)


def _subset(inner: tuple, outer: tuple, tol: float) -> bool:
    return _le(outer[0], inner[0], tol) and _le(inner[1], outer[1], tol)


def evaluate_sample(s: Sample, checker_names, tol: float = 1e-9) -> tuple:
    """(evaluations, equalities, failures) for one sample."""
    failures, evals, equalities = [], 0, 0
    inp = [_num(v) for v in s.values]

    def fail(bound, claimed, actual):
        failures.append({"input": inp, "bound": bound, "claimed": claimed, "actual": actual})

    grid = None
    for name in checker_names:
        for item in CHECKERS[name](s):
            evals += 1
            kind = item[0]
            if kind == "grid":
                _, bid, lo, hi, skip = item
                if grid is None:
                    grid = segment_mean_grid(s)
                found, tight = _grid_check(grid, lo, hi, skip, tol)
                evals += int(np.count_nonzero(~np.isnan(grid))) - 1
                equalities += tight
                for k, j in found:
                    fail(f"{bid}[k={k},j={j}]", [float(lo[k - 1]), float(hi[j - 1])], float(grid[k - 1, j - 1]))
            elif kind == "grid_equal":
                _, bid, lo, hi, lo2, hi2, etol = item
                for name2, a, b in (("lower", lo, lo2), ("upper", hi, hi2)):
                    bad = ~np.isclose(a, b, rtol=etol, atol=etol)
                    for i in np.flatnonzero(bad):
                        fail(f"{bid}[{name2},index={i + 1}]", float(a[i]), float(b[i]))
                    equalities += int(np.count_nonzero(~bad))
            elif kind == "grid_probe":
                _, bid, k, j, e, lo, hi = item
                for a, b in zip(e.values, (lo[k - 1], hi[j - 1])):
                    if not _eq(a, float(b), 1e-12):
                        fail(f"{bid}-table-vs-pair[k={k},j={j}]", _num(a), float(b))
            elif kind == "bound":
                e = item[1]
                truth = truth_for(e, s)
                if not e.satisfied_by(truth, tol):
                    fail(_tag(e), [_num(v) for v in e.values], _num(truth))
                elif e.is_tight(truth):
                    equalities += 1
            elif kind == "check":
                e = item[1]
                lhs, rhs = e.values
                if not _le(lhs, rhs, tol):
                    fail(_tag(e), _num(rhs), _num(lhs))
            elif kind == "tighter":
                ref, base = item[1], item[2]
                if ref.kind == "two_sided":
                    ok = _subset(ref.values, base.values, tol)
                elif ref.kind == "upper":
                    ok = _le(ref.values[0], base.values[0], tol)
                else:
                    ok = _le(base.values[0], ref.values[0], tol)
                if not ok:
                    fail(f"{ref.id} looser than {base.id}",
                         [_num(v) for v in ref.values], [_num(v) for v in base.values])
            elif kind == "equal":
                _, bid, a, b, etol = item
                if not _eq(a, b, etol):
                    fail(bid, _num(a), _num(b))
                else:
                    equalities += 1
            elif kind == "equal_le":
                _, bid, a, b = item
                if not _le(a, b, tol):
                    fail(bid, _num(a), _num(b))
    return evals, equalities, failures


def _grid_check(grid: np.ndarray, lo: np.ndarray, hi: np.ndarray, skip, tol: float) -> tuple:
    """Pairs (k, j) whose segment mean escapes [lo[k-1], hi[j-1]], and the count of tight pairs."""
    valid = ~np.isnan(grid)
    if skip is not None:
        valid[skip[0] - 1, skip[1] - 1] = False
    L = np.broadcast_to(lo[:, None], grid.shape)
    H = np.broadcast_to(hi[None, :], grid.shape)
    g = np.where(valid, grid, 0.0)
    slack_lo = tol * np.maximum(1.0, np.maximum(np.abs(L), np.abs(g)))
    slack_hi = tol * np.maximum(1.0, np.maximum(np.abs(H), np.abs(g)))
    bad = valid & ((g < L - slack_lo) | (g > H + slack_hi))
    tight = valid & (np.isclose(g, L, rtol=1e-10, atol=1e-10) | np.isclose(g, H, rtol=1e-10, atol=1e-10))
    pairs = [(int(k) + 1, int(j) + 1) for k, j in zip(*np.nonzero(bad))]
    return pairs, int(np.count_nonzero(tight))


def _tag(e) -> str:
    if not e.params:
        return e.id
    return e.id + "[" + ",".join(f"{k}={v}" for k, v in sorted(e.params.items())) + "]"


def _batch(args):
    samples, names, tol = args
    return [evaluate_sample(s, names, tol) for s in samples]


# ---------------------------------------------------------------- harness


@dataclass
class VerificationRun:
    family: str = "real"
    n_range: tuple = (2, 50)
    value_range: tuple = (-100, 100)
    count: Optional[int] = 1000
    exhaustive: bool = False
    seed: int = 0
    bounds: tuple = ("all-real",)
    tolerance: float = 1e-9
    inputs: int = 0
    evaluations: int = 0
    equalities: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_range"] = list(self.n_range)
        d["value_range"] = list(self.value_range)
        d["bounds"] = list(self.bounds)
        d["passed"] = self.passed
        return d


FAMILIES = ("real", "distinct-int", "two-block")


def generate(run: VerificationRun) -> Iterator[Sample]:
    lo, hi = run.value_range
    n0, n1 = run.n_range
    if n0 < 1 or n1 < n0:
        raise InvalidInput(f"bad n range {run.n_range}")
    if run.family == "real":
        if run.exhaustive:
            raise InvalidInput("the real family cannot be enumerated exhaustively")
        return random_real_samples(run.count, run.n_range, run.value_range, run.seed)
    if run.family == "distinct-int":
        lo, hi = int(lo), int(hi)
        if hi - lo + 1 < n1:
            raise InvalidInput(f"range {lo}..{hi} holds fewer than {n1} distinct integers")
        if run.exhaustive:
            return itertools.chain.from_iterable(
                enumerate_distinct_integer_samples(n, lo, hi) for n in range(n0, n1 + 1)
            )
        return random_distinct_integer_samples(run.count, run.n_range, (lo, hi), run.seed)
    if run.family == "two-block":
        return two_block_samples(run.n_range, (int(lo), int(hi)), run.seed,
                                 None if run.exhaustive else run.count)
    raise InvalidInput(f"unknown family {run.family!r}; choose from {FAMILIES}")


def verify(run: VerificationRun, workers: int = 1, chunk: int = 2000) -> VerificationRun:
    """Evaluate the requested bound groups on every generated input.

    Failures are collected in input order whatever the worker count.
    """
    names = resolve_bounds(run.bounds)
    samples = list(generate(run))
    batches = [samples[i : i + chunk] for i in range(0, len(samples), chunk)]
    if workers > 1 and len(batches) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_batch, [(b, names, run.tolerance) for b in batches]))
    else:
        results = [_batch((b, names, run.tolerance)) for b in batches]
    run.inputs, run.evaluations, run.equalities, run.failures = len(samples), 0, 0, []
    for batch in results:
        for evals, eqs, fails in batch:
            run.evaluations += evals
            run.equalities += eqs
            run.failures.extend(fails)
    return run
