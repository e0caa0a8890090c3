"""mbounds command line: sample, matrix, poly and verify subcommands.

Exit codes: 0 success, 1 input error, 2 precondition refusal, 3 verification failures.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import classic, integer, refined
from .errors import InputError, MBoundsError, NotAllRootsReal, PreconditionError
from .matrix import (
    FunctionalSpec,
    SquareMatrix,
    eigen_interval,
    eigen_interval_functional,
    eigen_ws_interval,
    read_matrix,
    spectral_moment,
    spread_bounds,
    trace_mean,
)
from .moments import Sample, read_sample, summarize
from .oracle import FAMILIES, VerificationRun, eigenvalues, truth_for, verify
from .poly import (
    DepressedPolynomial,
    expand_shift,
    integer_roots_necessary,
    parse_coefficients,
    poly_moments,
    read_poly_json,
    root_interval,
    span_bounds,
)
from .report import Report, digest, exact_str, fmt, report_table, to_json, verification_table
from .sturm import real_roots

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_FAILURES = 0, 1, 2, 3
INTEGER_TOL = 1e-6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _indices(spec: str, n: int) -> list:
    if spec == "all":
        return list(range(1, n + 1))
    try:
        js = sorted({int(t) for t in spec.split(",") if t.strip()})
    except ValueError:
        raise InputError(f"--j expects 'all' or a comma list of indices, got {spec!r}") from None
    bad = [j for j in js if not 1 <= j <= n]
    if bad or not js:
        raise InputError(f"--j indices must lie in 1..{n}, got {spec!r}")
    return js


def _range(text: str, cast: Callable = int) -> tuple:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise InputError(f"expected a range like 3..5, got {text!r}")
    try:
        return cast(lo), cast(hi)
    except ValueError:
        raise InputError(f"bad range {text!r}") from None


def _number(text: str):
    return int(text) if text.lstrip("-").isdigit() else float(text)


def _attempt(report: Report, label: str, fn: Callable) -> list:
    """Run ``fn``; bounds whose hypotheses fail are recorded as skipped."""
    try:
        out = fn()
    except PreconditionError as exc:
        report.skip(label, exc)
        return []
    except InputError as exc:
        report.skip(label, exc)
        return []
    out = out if isinstance(out, list) else [out]
    for e in out:
        report.add(e)
    return out


def _params_key(e) -> str:
    return ",".join(f"{k}={fmt(v)}" for k, v in sorted(e.params.items()))


def _flags(entries, truth_of: Callable) -> list:
    out = []
    for e in entries:
        if e.kind == "check":
            continue
        actual = truth_of(e)
        if actual is None:
            continue
        out.append({
            "id": e.id,
            "params": _params_key(e),
            "actual": fmt(actual),
            "satisfied": e.satisfied_by(actual),
            "tight": e.is_tight(actual),
        })
    return out


def _moment_block(pairs: dict) -> dict:
    block = {k: fmt(v) for k, v in pairs.items()}
    exact = {k: exact_str(v) for k, v in pairs.items() if isinstance(v, Fraction)}
    if exact:
        block["exact"] = exact
    return block


# ---------------------------------------------------------------- sample


def sample_report(s: Sample, r: int = 2, j_spec: str = "all", integer_claims: bool = False) -> tuple:
    """(Report, exit code) for a data sample."""
    rep = Report("sample", {"n": s.n, "values": [fmt(v) for v in s.values],
                            "digest": digest([str(v) for v in s.values])})
    summ = summarize(s)
    rep.moments = _moment_block({
        "n": s.n, "mean": summ.mean,
        **{f"m{k}": summ.central[k] for k in (2, 3, 4)},
        **{f"raw{k}": summ.raw[k] for k in (2, 3, 4)},
    })
    js = _indices(j_spec, s.n)
    for j in js:
        _attempt(rep, f"samuelson[j={j}]", lambda: classic.samuelson_interval(s, j))
        _attempt(rep, f"ws[j={j}]", lambda: classic.ws_interval(s, j, j))
    if s.n >= 2:
        for j in js:
            _attempt(rep, f"sharma-saini[j={j}]", lambda: classic.sharma_saini_m2r_lower(s, r, j))
        _attempt(rep, "nagy", lambda: classic.nagy_m2_lower(s))
        _attempt(rep, "sharma-i3", lambda: classic.sharma_m2r_lower(s, r))
        _attempt(rep, "sharma-m3", lambda: classic.sharma_m3_bounds(s))
        _attempt(rep, "sharma-it3", lambda: classic.it3_upper(s))
        _attempt(rep, "sharma-it4", lambda: classic.it4_upper(s))
        for j in js:
            _attempt(rep, f"thm1-order[j={j}]", lambda: refined.general_order_interval(s, j, r))
            _attempt(rep, f"re1[j={j}]", lambda: refined.m2r_lower_piecewise(s, j, r))
            _attempt(rep, f"abs-deviation[j={j}]", lambda: refined.abs_deviation_upper(s, j, r))
        best = refined.best_m2r_lower_piecewise(s, r)
        if best.params["j"] not in js:
            rep.add(best)
    else:
        rep.skip("all moment bounds", "a single value gives only degenerate intervals")
    code = EXIT_OK
    if s.n >= 3 and s.distinct_integers:
        _attempt(rep, "integer refinements", lambda: integer.all_refinements(s))
    elif integer_claims:
        rep.refuse("--integer-claims", "distinct-integer refinements need at least three pairwise distinct integers")
        code = EXIT_REFUSED
    flags = _flags(rep.entries(), lambda e: truth_for(e, s))
    rep.truth = {"max": fmt(s.max), "min": fmt(s.min), "spread": fmt(s.max - s.min), "flags": flags}
    return rep, code


# ---------------------------------------------------------------- matrix


def _distinct_integers(values: Sequence[float]) -> bool:
    rounded = [round(v) for v in values]
    return all(abs(v - k) <= INTEGER_TOL for v, k in zip(values, rounded)) and len(set(rounded)) == len(rounded)


def matrix_report(A: SquareMatrix, j_spec: str = "all", r: int = 2, phi: Optional[str] = None,
                  q: int = 1, integer_spectrum: bool = False, verify_spectrum: bool = False) -> tuple:
    if q < 1 or q % 2 == 0:
        raise InputError(f"--q must be a positive odd integer, got {q}")
    spec = FunctionalSpec.parse(phi) if phi else None
    rows = [[str(v) for v in row] for row in A.entries.tolist()]
    rep = Report("matrix", {"n": A.n, "digest": digest(rows)})
    rep.moments = _moment_block({"n": A.n, "mean": trace_mean(A),
                                 **{f"m{k}": spectral_moment(A, k) for k in (2, 3, 4)}})
    code = EXIT_OK
    eig = None
    if verify_spectrum:
        try:
            eig = eigenvalues(A)
        except NotAllRootsReal as exc:
            rep.refuse("--verify-spectrum", exc)
            return rep, EXIT_REFUSED
        if integer_spectrum and not _distinct_integers(eig):
            rep.refuse("--integer-spectrum", "the computed spectrum is not n distinct integers")
            integer_spectrum = False
            code = EXIT_REFUSED
    js = _indices(j_spec, A.n)
    for j in js:
        _attempt(rep, f"ws-eigen[j={j}]", lambda: eigen_ws_interval(A, j))
        if r >= 2:
            _attempt(rep, f"eigen-moment[j={j}]", lambda: eigen_interval(A, j, r))
        if spec is not None:
            _attempt(rep, f"eigen-functional[j={j}]", lambda: eigen_interval_functional(A, j, r, spec, q))
    if A.n >= 2:
        _attempt(rep, "spread", lambda: spread_bounds(A, integer_spectrum and A.n >= 3))
    if integer_spectrum and A.n < 3:
        rep.refuse("--integer-spectrum", "refined spread bounds need n >= 3")
        code = EXIT_REFUSED
    if eig is not None:
        spread = eig[0] - eig[-1]

        def truth_of(e):
            if e.target == "lambda_j":
                return eig[e.params["j"] - 1]
            return spread if e.target == "spread" else None

        rep.truth = {"eigenvalues": [fmt(v) for v in eig], "spread": fmt(spread),
                     "flags": _flags(rep.entries(), truth_of)}
    return rep, code


# ---------------------------------------------------------------- polynomial


def poly_report(shift, p: DepressedPolynomial, j_spec: str = "all", r: int = 2,
                integer_roots: bool = False, verify_roots: bool = False) -> tuple:
    n = p.degree
    coeffs = (1,) + expand_shift(p, shift)
    rep = Report("poly", {"degree": n, "coefficients": [fmt(c) for c in coeffs], "shift": fmt(shift),
                          "depressed": [fmt(b) for b in p.b],
                          "digest": digest([str(c) for c in coeffs])})
    code = EXIT_OK
    roots = None
    if verify_roots:
        roots = real_roots(coeffs)
        if len(roots) != n:
            rep.refuse("--verify-roots", NotAllRootsReal(f"only {len(roots)} of {n} roots are real"))
            return rep, EXIT_REFUSED
        if integer_roots and not _distinct_integers(roots):
            rep.refuse("--integer-roots", "the roots are not n distinct integers")
            integer_roots = False
            code = EXIT_REFUSED
    pm = poly_moments(p)
    center = -shift
    rep.moments = _moment_block({"n": n, "mean": center, "m2": pm.m2, "m3": pm.m3, "m4": pm.m4})
    integral_shift = Fraction(shift).denominator == 1
    for j in _indices(j_spec, n):
        _attempt(rep, f"ws-root[j={j}]", lambda: root_interval(p, j, 1, center))
        if r >= 2:
            _attempt(rep, f"root-m4[j={j}]", lambda: root_interval(p, j, 2, center))
    _attempt(rep, "int-roots-necessary", lambda: integer_roots_necessary(p, integral_shift))
    _attempt(rep, "span", lambda: span_bounds(p, integer_roots, integral_shift))
    if roots is not None:
        span = roots[0] - roots[-1]

        def truth_of(e):
            if e.target == "root_j":
                return roots[e.params["j"] - 1]
            return span if e.target == "spread" else None

        rep.truth = {"roots": [fmt(v) for v in roots], "span": fmt(span),
                     "flags": _flags(rep.entries(), truth_of)}
    return rep, code


# ---------------------------------------------------------------- wiring


def _emit(d: dict, table: bool, render=report_table) -> None:
    sys.stdout.write(render(d) if table else to_json(d))


def cmd_sample(args) -> int:
    rep, code = sample_report(read_sample(args.path), args.r, args.j, args.integer_claims)
    _emit(rep.to_dict(), args.table)
    return code


def cmd_matrix(args) -> int:
    rep, code = matrix_report(read_matrix(args.path), args.j, args.r, args.phi, args.q,
                              args.integer_spectrum, args.verify_spectrum)
    _emit(rep.to_dict(), args.table)
    return code


def cmd_poly(args) -> int:
    if args.json:
        with open(args.json, encoding="utf-8") as fh:
            p = read_poly_json(fh.read())
        shift = 0
    elif args.coeffs:
        shift, p = parse_coefficients(args.coeffs)
    else:
        raise InputError("give coefficients or --json FILE")
    rep, code = poly_report(shift, p, args.j, args.r, args.integer_roots, args.verify_roots)
    _emit(rep.to_dict(), args.table)
    return code


def cmd_verify(args) -> int:
    if args.family not in FAMILIES:
        raise InputError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    run = VerificationRun(
        family=args.family,
        n_range=_range(args.n_range),
        value_range=_range(args.value_range, _number),
        count=None if args.exhaustive else args.count,
        exhaustive=args.exhaustive,
        seed=args.seed,
        bounds=tuple(b.strip() for b in args.bounds.split(",") if b.strip()),
        tolerance=args.tolerance,
    )
    verify(run, workers=args.workers)
    _emit(run.to_dict(), args.table, verification_table)
    return EXIT_OK if run.passed else EXIT_FAILURES


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mbounds", description="Moment-based bounds for samples, spectra and polynomial roots.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, r_default=2):
        p.add_argument("--j", default="all", help="indices: 'all' or a comma list (default all)")
        p.add_argument("--r", type=int, default=r_default, help="moment order 2r used by the refined intervals")
        p.add_argument("--table", action="store_true", help="aligned text instead of JSON")

    p = sub.add_parser("sample", help="bounds for a data sample")
    p.add_argument("path", help="text file of numbers (comma or whitespace separated, '#' comments)")
    common(p)
    p.add_argument("--integer-claims", action="store_true",
                   help="insist on the distinct-integer refinements; refuse if the sample does not qualify")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("matrix", help="eigenvalue bounds for a real-spectrum matrix (CSV)")
    p.add_argument("path", help="CSV of a square matrix, one row per line")
    common(p)
    p.add_argument("--phi", help="shift functional: trace-mean, entry:I,J, diag-avg:I,J,... or const:X")
    p.add_argument("--q", type=int, default=1, help="odd power used with --phi (default 1)")
    p.add_argument("--integer-spectrum", action="store_true", help="assert n distinct integer eigenvalues")
    p.add_argument("--verify-spectrum", action="store_true", help="compute eigenvalues and flag each bound")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("poly", help="root bounds for a monic real-rooted polynomial")
    p.add_argument("coeffs", nargs="*", help="coefficients, highest degree first (leading 1 optional)")
    p.add_argument("--json", help='JSON file {"degree": n, "coeffs": {"b2": ..}}')
    common(p)
    p.add_argument("--integer-roots", action="store_true", help="assert n distinct integer roots")
    p.add_argument("--verify-roots", action="store_true", help="isolate the roots and flag each bound")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify", help="run the verification harness")
    p.add_argument("--family", default="real", help=f"one of {', '.join(FAMILIES)}")
    p.add_argument("--n-range", default="2..50", help="sample sizes LO..HI (default 2..50)")
    p.add_argument("--value-range", default="-100..100", help="value range LO..HI (default -100..100)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", type=int, default=1000, help="random inputs to draw (default 1000)")
    mode.add_argument("--exhaustive", action="store_true",
                      help="enumerate every input of the family instead of sampling")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--bounds", default="all-real",
                   help="comma list of bound groups: classic, thm1, thm1-upper, thm1-lower, integer, "
                        "or the aliases all-real, all-integer, all, thm1-equality")
    p.add_argument("--tolerance", type=float, default=1e-9, help="relative slack for float inputs")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--table", action="store_true", help="aligned text instead of JSON")
    p.set_defaults(func=cmd_verify)
    return parser


def _glue_ranges(argv: Sequence[str]) -> list:
    # "--value-range -6..6" would otherwise be read as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--value-range", "--n-range"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_glue_ranges(argv))
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"mbounds: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (InputError, OSError, UnicodeDecodeError) as exc:
        print(f"mbounds: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"mbounds: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MBoundsError as exc:
        print(f"mbounds: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
