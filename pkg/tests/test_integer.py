from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mbounds import classic, integer
from mbounds.errors import InvalidInput, RequiresDistinctIntegers
from mbounds.integer import GammaKind, gamma
from mbounds.moments import central_moment, new_sample, raw_moment


def test_gamma_spot_values():
    assert gamma(9, 3, GammaKind.GAMMA1) == 89
    assert gamma(5, 2, GammaKind.GAMMA3) == 3
    assert gamma(4, 1, GammaKind.GAMMA1) == 1


def test_gamma_rejects_bad_split():
    with pytest.raises(InvalidInput):
        gamma(5, 5, GammaKind.GAMMA1)
    with pytest.raises(InvalidInput):
        gamma(2, 1, GammaKind.GAMMA1)


@pytest.mark.parametrize("n", range(3, 40))
def test_gamma2_mirrors_gamma1(n):
    for k in range(1, n):
        assert gamma(n, k, GammaKind.GAMMA2) == gamma(n, n - k, GammaKind.GAMMA1)


def test_beta_values():
    assert integer.beta1(9) == Fraction(89, 9)
    assert integer.beta2(9) == Fraction(166, 9)
    assert integer.beta2(5) == Fraction(3, 5)


@pytest.mark.parametrize("n", range(3, 80))
def test_beta_closed_forms(n):
    assert integer.beta1(n) == integer.beta1_closed_form(n)
    assert integer.beta2(n) == integer.beta2_closed_form(n)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_count_only_minimum_by_enumeration(n):
    # smallest n * m4 over all n-subsets of a window wide enough to hold the optimum,
    # split by whether the mean is an integer
    best = {True: None, False: None}
    for combo in itertools.combinations(range(-6, 7), n):
        xbar = Fraction(sum(combo), n)
        v = sum((x - xbar) ** 4 for x in combo)
        im = xbar.denominator == 1
        best[im] = v if best[im] is None else min(best[im], v)
    # a valid lower bound in both cases, attained for an integer mean with n odd
    assert integer.count_only_minimum(n, True) <= best[True]
    assert integer.count_only_minimum(n, False) <= best[False]
    if n % 2 == 1:
        assert integer.count_only_minimum(n, True) == best[True]


@pytest.mark.parametrize("n", range(3, 120))
def test_fourth_power_closed_forms(n):
    # closed forms give the per-value correction, i.e. the minimum divided by n
    for im in (True, False):
        assert integer.count_only_minimum(n, im) == n * integer.count_only_closed_form(n, im)
        assert integer.range_correction_minimum(n, im) == n * integer.range_correction_closed_form(n, im)


def test_count_only_equality_fixture():
    s = new_sample(range(-4, 5))
    e = integer.m4_lower_count_only(9, True)
    assert e.eq_tag == "4t2"
    assert e.values[0] == central_moment(s, 4)


def test_range_equality_fixture():
    s = new_sample([-4, -1, 0, 1, 4])
    e = integer.m4_lower_with_range(s)
    assert e.eq_tag == "5t2"
    assert e.values[0] == central_moment(s, 4)


def test_refinements_on_nine(nine):
    got = {e.id: e for e in integer.all_refinements(nine)}
    lo, hi = got["int-m3-raw"].values
    assert float(lo) == pytest.approx(283.53, abs=5e-3) and float(hi) == pytest.approx(308.587, abs=1e-3)
    lo, hi = got["int-m3-c1"].values
    assert float(lo) == pytest.approx(-10.3960, abs=1e-4) and float(hi) == pytest.approx(14.6614, abs=1e-4)
    lo, hi = got["int-m3-c2"].values
    assert float(lo) == pytest.approx(-10.4536, abs=5e-4) and float(hi) == pytest.approx(15.5185, abs=5e-4)
    assert float(got["int-m4-upper"].values[0]) == pytest.approx(162.5578, abs=5e-4)
    assert float(got["int-m4-range"].values[0]) == pytest.approx(103.9028, abs=5e-4)
    count = [e for e in integer.all_refinements(nine) if e.id == "int-m4-count"]
    assert float(count[0].values[0]) == pytest.approx(50.2222, abs=1e-4)
    m3, m4 = central_moment(nine, 3), central_moment(nine, 4)
    assert got["int-m3-c1"].satisfied_by(m3) and got["int-m3-c2"].satisfied_by(m3)
    assert got["int-m3-raw"].satisfied_by(raw_moment(nine, 3))
    assert got["int-m4-upper"].satisfied_by(m4) and got["int-m4-range"].satisfied_by(m4)
    assert got["int-m3-c3"].holds and got["int-m3-c4"].holds
    assert got["int-m3-c3-spread"].satisfied_by(9)


def test_refinements_are_tighter(nine):
    assert integer.m4_upper_refined(nine).values[0] < classic.it3_upper(nine).values[0]
    assert integer.m4_lower_with_range(nine).values[0] > classic.sharma_m2r_lower(nine, 2).values[0]
    c2 = integer.m3_central_bounds_refined(nine)[1].values
    base = {e.id: e for e in classic.sharma_m3_bounds(nine)}["sharma-m3-extremes"].values
    assert base[0] < c2[0] and c2[1] < base[1]


def test_refinements_refuse_non_distinct():
    with pytest.raises(RequiresDistinctIntegers):
        integer.all_refinements(new_sample([3, 2, 2, 1]))
    with pytest.raises(RequiresDistinctIntegers):
        integer.m4_upper_refined(new_sample([3.5, 2, 1]))
    with pytest.raises(RequiresDistinctIntegers):
        integer.m4_upper_refined(new_sample([2, 1]))


def test_exhaustive_small_family():
    for n in (3, 4, 5):
        for combo in itertools.combinations(range(-5, 6), n):
            s = new_sample(combo)
            m3, m4 = central_moment(s, 3), central_moment(s, 4)
            for e in integer.all_refinements(s):
                if e.target == "m3":
                    assert e.kind == "check" and e.holds or e.satisfied_by(m3)
                elif e.target == "m4":
                    assert e.satisfied_by(m4)
                elif e.target == "m4_combo":
                    assert e.satisfied_by(classic.m4_combo(s))
                elif e.target == "m3_raw":
                    assert e.satisfied_by(raw_moment(s, 3))
                elif e.target == "spread":
                    assert e.satisfied_by(s.max - s.min)


@given(st.fractions(0, 50, max_denominator=20), st.fractions(0, 50, max_denominator=20))
def test_lemma1(b, c):
    t = integer.floor_of_largest_root(b, c)
    root = (-b + math.sqrt(b * b + 4 * c)) / 2
    assert t == math.floor(root) or abs(root - round(root)) < 1e-9
    assert all(integer.lemma1_conditions(b, c, t))


@given(st.fractions(0, 50, max_denominator=20), st.fractions(0, 50, max_denominator=20))
def test_lemma2_when_roots_separated(b, c):
    if b * b - 4 * c < 1:
        return
    t = integer.floor_of_smallest_root(b, c)
    assert all(integer.lemma2_conditions(b, c, t))


def test_lemma2_condition_b_fails_on_double_root():
    # x^2 - 4x + 4: floor of the double root is 2 but condition (b) does not hold
    assert integer.floor_of_smallest_root(4, 4) == 2
    assert integer.lemma2_conditions(4, 4, 2) == (True, False)


@pytest.mark.parametrize("n", [3, 4, 9, 17, 64])
@pytest.mark.parametrize("kind", list(GammaKind))
def test_gamma_table_matches_scalar(n, kind):
    table = integer.gamma_table(n, kind)
    assert [int(v) for v in table] == [gamma(n, k, kind) for k in range(1, n)]
