from __future__ import annotations

import random
from math import comb

import numpy as np
import pytest

from mbounds import oracle, refined
from mbounds.errors import InvalidInput, NotAllRootsReal
from mbounds.matrix import SquareMatrix
from mbounds.moments import new_sample
from mbounds.oracle import VerificationRun, verify


def test_enumeration_counts():
    one = list(oracle.enumerate_distinct_integer_samples(3, -1, 1))
    assert [s.values for s in one] == [(1, 0, -1)]
    assert len(list(oracle.enumerate_distinct_integer_samples(2, 0, 2))) == 3
    assert sum(1 for _ in oracle.enumerate_distinct_integer_samples(4, -8, 8)) == comb(17, 4) == 2380


def test_enumeration_infeasible():
    with pytest.raises(InvalidInput):
        list(oracle.enumerate_distinct_integer_samples(5, 0, 2))


def expand(roots):
    c = [1]
    for r in roots:
        c = [a - r * b for a, b in zip(c + [0], [0] + c)]
    return c


def test_characteristic_polynomial():
    D = SquareMatrix.from_rows([[-2, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 2, 0, 0], [0, 0, 0, 3, 0], [0, 0, 0, 0, 4]])
    assert expand([-2, 1, 2, 3, 4]) == [1, -8, 15, 20, -76, 48]
    assert oracle.characteristic_polynomial(D) == expand([-2, 1, 2, 3, 4])
    assert oracle.characteristic_polynomial(SquareMatrix.from_rows([[1, 0], [0, 1]])) == [1, -2, 1]


def test_spread_matrix_spectrum(spread_matrix):
    assert oracle.eigenvalues(spread_matrix) == pytest.approx([4, 3, 2, 1, -2], abs=1e-9)
    assert oracle.characteristic_polynomial(spread_matrix) == expand([-2, 1, 2, 3, 4])


def test_complex_spectrum_refused():
    rot = SquareMatrix.from_rows([[0, -1], [1, 0]])
    with pytest.raises(NotAllRootsReal):
        oracle.eigenvalues(rot)


def test_unimodular_pair_inverse():
    rng = random.Random(3)
    P, Pinv = oracle.unimodular_pair(6, rng)
    assert (P @ Pinv == np.eye(6, dtype=int)).all()


def test_similarity_fixtures_recover_spectrum():
    for A, spec in oracle.spectral_fixtures(25, (2, 7), (-20, 20), seed=11):
        assert oracle.eigenvalues(A) == pytest.approx(spec, abs=1e-6)


def test_verify_small_runs_pass():
    for run in (
        VerificationRun(family="real", n_range=(2, 12), count=60, seed=5),
        VerificationRun(family="distinct-int", n_range=(3, 5), value_range=(-6, 6), exhaustive=True,
                        bounds=("all-integer",)),
        VerificationRun(family="two-block", n_range=(2, 9), value_range=(-10, 10), exhaustive=True,
                        bounds=("thm1-upper", "thm1-lower")),
    ):
        verify(run)
        assert run.passed, run.failures[:3]
        assert run.inputs > 0 and run.evaluations >= run.inputs


def test_two_block_flags_equalities():
    run = verify(VerificationRun(family="two-block", n_range=(2, 6), value_range=(-5, 5), exhaustive=True,
                                 bounds=("thm1-upper",)))
    assert run.passed and run.equalities == run.evaluations


def test_verify_is_deterministic():
    a = verify(VerificationRun(family="real", n_range=(2, 10), count=40, seed=9)).to_dict()
    b = verify(VerificationRun(family="real", n_range=(2, 10), count=40, seed=9)).to_dict()
    assert a == b


def test_parallel_matches_serial():
    serial = verify(VerificationRun(family="distinct-int", n_range=(3, 4), value_range=(-4, 4), count=30,
                                    seed=2, bounds=("all",)), workers=1, chunk=7)
    parallel = verify(VerificationRun(family="distinct-int", n_range=(3, 4), value_range=(-4, 4), count=30,
                                      seed=2, bounds=("all",)), workers=2, chunk=7)
    assert serial.to_dict() == parallel.to_dict()


def test_planted_violation_is_reported(monkeypatch):
    original = refined.segment_radius_table

    def shrunk(s, r, max_r=refined.MAX_R):
        lower, upper = original(s, r, max_r)
        return lower * 0.5, upper * 0.5

    monkeypatch.setattr(refined, "segment_radius_table", shrunk)
    run = verify(VerificationRun(family="real", n_range=(3, 8), count=10, seed=1, bounds=("thm1",)))
    assert not run.passed
    f = run.failures[0]
    assert set(f) == {"input", "bound", "claimed", "actual"}


def test_planted_violation_in_pair_function(monkeypatch):
    original = refined.general_segment_interval

    def widened(s, k, j, r, max_r=refined.MAX_R):
        e = original(s, k, j, r, max_r)
        return type(e)(e.id, e.kind, e.target, (e.values[0] - 1.0, e.values[1]), e.eq_tag,
                       e.assumptions, e.refines, e.params)

    monkeypatch.setattr(refined, "general_segment_interval", widened)
    run = verify(VerificationRun(family="real", n_range=(3, 6), count=5, seed=1, bounds=("thm1",)))
    assert any("table-vs-pair" in f["bound"] or "r1-vs-ws" in f["bound"] for f in run.failures)


def test_unknown_bound_group():
    with pytest.raises(InvalidInput):
        oracle.resolve_bounds(["nope"])


def test_segment_mean_grid_matches_definition():
    s = new_sample([5, 3, 2, 2, -1])
    grid = oracle.segment_mean_grid(s)
    assert grid[1, 3] == pytest.approx((3 + 2 + 2) / 3)
    assert np.isnan(grid[3, 1])
    f = new_sample([5.5, 3.25, 2.0, -1.5])
    assert oracle.segment_mean_grid(f)[0, 3] == pytest.approx((5.5 + 3.25 + 2.0 - 1.5) / 4)
