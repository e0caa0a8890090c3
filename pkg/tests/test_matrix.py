from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from mbounds import matrix
from mbounds.errors import InvalidInput, ParseError
from mbounds.matrix import FunctionalSpec, SquareMatrix
from mbounds.oracle import eigenvalues

A1_EIGEN = [9.948896418, 5.594374711, 4.427897221, 2.028831651]


def test_trace_power_exact(a1):
    assert matrix.trace_power(a1, 1) == 22
    assert matrix.trace_power(a1, 2) == int(np.trace(np.array(a1.entries, dtype=float) @ np.array(a1.entries, dtype=float)))
    assert matrix.trace_mean(a1) == Fraction(11, 2)


def test_spectral_moments_match_eigenvalues(spread_matrix):
    eig = [4, 3, 2, 1, -2]
    xbar = Fraction(sum(eig), 5)
    for r in (2, 3, 4):
        assert matrix.spectral_moment(spread_matrix, r) == sum((x - xbar) ** r for x in eig) / 5
    assert matrix.spectral_moment(spread_matrix, 2) == Fraction(106, 25)


def test_ws_eigen_published_digits(a1):
    lo, hi = matrix.eigen_ws_interval(a1, 1).values
    assert lo == pytest.approx(5.5000, abs=5e-4) and hi == pytest.approx(10.4749, abs=5e-4)
    assert matrix.eigen_ws_interval(a1, 2).values[0] == pytest.approx(3.8417, abs=5e-4)
    assert matrix.eigen_ws_interval(a1, 3).values[1] == pytest.approx(7.1583, abs=5e-4)
    assert matrix.eigen_ws_interval(a1, 4).values[0] == pytest.approx(0.5250, abs=5e-4)


def test_eigen_intervals_contain_eigenvalues(a1):
    eig = eigenvalues(a1)
    assert eig == pytest.approx(A1_EIGEN, abs=1e-8)
    for j in range(1, 5):
        for r in (1, 2, 3):
            assert matrix.eigen_interval(a1, j, r).satisfied_by(eig[j - 1])


@pytest.mark.parametrize(
    "phi,q,r,j",
    [("diag-avg:1,2", 5, 1, 1), ("entry:4,1", 3, 1, 2), ("trace-mean", 3, 2, 4), ("const:3.5", 3, 1, 3)],
)
def test_functional_intervals_contain_eigenvalues(a1, phi, q, r, j):
    e = matrix.eigen_interval_functional(a1, j, r, FunctionalSpec.parse(phi), q)
    assert e.satisfied_by(A1_EIGEN[j - 1])
    assert e.refines == "ws-eigen"


def test_functional_with_q1_matches_plain_interval(a1):
    spec = FunctionalSpec.parse("const:2")
    a = matrix.eigen_interval_functional(a1, 2, 2, spec, 1).values
    b = matrix.eigen_interval(a1, 2, 2).values
    assert a == pytest.approx(b, abs=1e-12)


def test_even_q_rejected(a1):
    with pytest.raises(InvalidInput):
        matrix.eigen_interval_functional(a1, 1, 1, FunctionalSpec.parse("trace-mean"), 2)


@pytest.mark.parametrize("text", ["diag-avg", "entry:1", "const:", "frob", "entry:a,b"])
def test_bad_functionals(text):
    with pytest.raises(InvalidInput):
        FunctionalSpec.parse(text)


def test_functional_values(a1):
    assert FunctionalSpec.parse("diag-avg:1,2")(a1) == Fraction(9, 2)
    assert FunctionalSpec.parse("entry:4,1")(a1) == 3
    assert FunctionalSpec.parse("trace-mean")(a1) == Fraction(11, 2)
    assert FunctionalSpec.parse("entry:4,1").describe() == "entry:4,1"


def test_spread_bounds_published_baselines(spread_matrix):
    got = {e.id: e.values[0] for e in matrix.spread_bounds(spread_matrix, True)}
    assert got["nagy-spread"] == pytest.approx(6.5115, abs=5e-4)
    assert got["sharma-i3-spread"] == pytest.approx(6.3648, abs=5e-4)
    assert got["sharma-it4-spread"] == pytest.approx(5.5119, abs=5e-4)
    assert got["int-spread-upper"] == pytest.approx(6.3571, abs=5e-4)
    assert got["int-spread-lower"] == pytest.approx(5.5685, abs=5e-4)
    assert got["int-spread-lower"] <= 6 <= got["int-spread-upper"]


def test_spread_upper_branch_follows_trace_divisibility(spread_matrix):
    assert not matrix.divides_trace(spread_matrix)
    assert matrix.spread_upper(spread_matrix).eq_tag == "5t1"
    shifted = matrix.shifted(spread_matrix, Fraction(-2, 5))  # trace 10
    assert matrix.divides_trace(shifted)
    assert matrix.spread_upper(shifted).eq_tag == "5t2"


def test_identity():
    eye = SquareMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    for j in (1, 2, 3):
        assert matrix.eigen_interval(eye, j, 2).values == (1.0, 1.0)
    assert matrix.spread_bounds(eye) == []


def test_non_square_rejected():
    with pytest.raises(InvalidInput):
        SquareMatrix.from_rows([[1, 2], [3]])


def test_read_matrix(data_dir, tmp_path):
    A = matrix.read_matrix(data_dir / "a1.csv")
    assert A.n == 4 and A[4, 1] == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3,x\n")
    with pytest.raises(ParseError, match="line 2"):
        matrix.read_matrix(bad)


def test_float_matrix_path():
    A = SquareMatrix.from_rows([[0.5, 0.25], [0.25, 1.5]])
    assert not A.exact
    eig = np.linalg.eigvalsh(np.array([[0.5, 0.25], [0.25, 1.5]]))[::-1]
    for j in (1, 2):
        assert matrix.eigen_interval(A, j, 1).satisfied_by(eig[j - 1])
