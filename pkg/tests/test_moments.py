from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mbounds.errors import EmptySample, InvalidValue, ParseError
from mbounds.moments import (
    central_moment,
    mean,
    new_sample,
    parse_sample_text,
    raw_moment,
    read_sample,
    segment_mean,
    summarize,
)


def test_values_sorted_descending_and_indexed_from_one():
    s = new_sample([3, 10, 1, 7])
    assert s.values == (10, 7, 3, 1)
    assert s[1] == 10 and s[4] == 1
    with pytest.raises(IndexError):
        s[0]
    with pytest.raises(IndexError):
        s[5]


def test_nine_integer_moments_exact(nine):
    assert mean(nine) == Fraction(16, 3)
    assert central_moment(nine, 2) == Fraction(80, 9)
    assert central_moment(nine, 3) == Fraction(110, 27)
    assert raw_moment(nine, 2) == Fraction(112, 3)
    assert raw_moment(nine, 3) == 298
    # m4 by hand: sum of (x - 16/3)^4 over the nine values, divided by 9
    by_hand = sum((Fraction(x) - Fraction(16, 3)) ** 4 for x in [1, 2, 3, 4, 5, 6, 8, 9, 10]) / 9
    assert central_moment(nine, 4) == by_hand
    assert float(by_hand) == pytest.approx(134.962963, abs=1e-6)


def test_first_central_moment_is_zero(nine):
    assert central_moment(nine, 1) == 0


def test_integral_floats_become_ints():
    s = new_sample([2.0, 1.0])
    assert all(type(v) is int for v in s.values)
    assert s.exact


def test_fraction_input_stays_exact():
    s = new_sample([Fraction(1, 2), Fraction(3, 2)])
    assert mean(s) == 1
    assert central_moment(s, 2) == Fraction(1, 4)


def test_float_path_uses_correct_rounding():
    s = new_sample([0.1] * 10)
    assert mean(s) == pytest.approx(0.1, rel=1e-15)
    assert not s.exact


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), True, "x"])
def test_invalid_values_rejected(bad):
    with pytest.raises(InvalidValue):
        new_sample([1, bad])


def test_empty_sample_rejected():
    with pytest.raises(EmptySample):
        new_sample([])


def test_segment_mean(nine):
    assert segment_mean(nine, 1, 3) == 9
    assert segment_mean(nine, 9, 9) == 1
    assert segment_mean(nine, 1, 9) == mean(nine)
    with pytest.raises(IndexError):
        segment_mean(nine, 4, 2)


def test_witness_flags():
    assert new_sample([3, 1, 2]).distinct_integers
    assert new_sample([3, 1, 2]).integer_mean
    assert not new_sample([3, 1, 1]).distinct_integers
    assert not new_sample([1, 2]).integer_mean
    assert not new_sample([1.5, 2, 3]).distinct_integers


def test_summary(nine):
    summ = summarize(nine)
    assert summ.n == 9 and summ.central[2] == Fraction(80, 9) and summ.raw[3] == 298


def test_parse_sample_text_comments_and_separators():
    vals = parse_sample_text("# header\n1, 2 3\n\n  # another\n4/3\n2.5\n")
    assert vals == [1, 2, 3, Fraction(4, 3), 2.5]


def test_parse_error_reports_line():
    with pytest.raises(ParseError, match="line 3"):
        parse_sample_text("1\n2\n3 abc\n")


def test_parse_empty_text():
    with pytest.raises(EmptySample):
        parse_sample_text("# nothing\n\n")


def test_read_sample(data_dir):
    s = read_sample(data_dir / "nine_integers.txt")
    assert s.n == 9 and s.max == 10


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=20), st.integers(1, 6))
def test_central_moment_matches_two_pass_definition(xs, r):
    s = new_sample(xs)
    xbar = Fraction(sum(xs), len(xs))
    assert central_moment(s, r) == sum((x - xbar) ** r for x in xs) / len(xs)


@given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=2, max_size=30))
def test_float_moments_close_to_rational_evaluation(xs):
    s = new_sample(xs)
    exact = [Fraction(x) for x in xs]
    xbar = sum(exact) / len(exact)
    m2 = sum((x - xbar) ** 2 for x in exact) / len(exact)
    assert math.isclose(float(central_moment(s, 2)), float(m2), rel_tol=1e-9, abs_tol=1e-9)
