from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomlen import finite_weyl as fw
from atomlen.errors import BadEll, BadIndex, BadLength, BudgetExceeded


@st.composite
def types_and_levels(draw, max_n=5):
    series = draw(st.sampled_from(fw.SERIES))
    n = draw(st.integers(2, max_n))
    lo = 2 if series == "D" else 1
    ell = draw(st.integers(lo, n))
    return fw.FiniteType(series, n), ell


def test_type_validation():
    with pytest.raises(BadIndex):
        fw.FiniteType("E", 6)
    with pytest.raises(BadLength):
        fw.FiniteType("D", 1)
    assert fw.FiniteType("A", 3).dim == 4
    assert fw.FiniteType("B", 3).dim == 3


def test_group_orders():
    assert fw.FiniteType("A", 3).order() == 24
    assert fw.FiniteType("B", 3).order() == 48
    assert fw.FiniteType("C", 2).order() == 8
    assert fw.FiniteType("D", 4).order() == 192
    for t in (fw.FiniteType("A", 3), fw.FiniteType("B", 2),
              fw.FiniteType("D", 3)):
        assert len(list(fw.enumerate_group(t))) == t.order()


@given(types_and_levels(max_n=6))
def test_omega_expansions_match_epsilon_coordinates(te):
    t, _ = te
    roots = fw.simple_roots(t)
    for i in range(1, t.n + 1):
        coeffs = fw.omega_in_roots(t, i)
        recon = tuple(sum(c * r[k] for c, r in zip(coeffs, roots))
                      for k in range(t.dim))
        assert recon == fw.fundamental_weight_eps(t, i)
        assert fw.height_eps(t, recon) == sum(coeffs)


def test_height_closed_forms():
    t = fw.FiniteType("A", 5)
    for i in range(1, 6):
        assert fw.height_of_weight(t, i) == Fraction(i * (5 - i + 1), 2)
    tb = fw.FiniteType("B", 4)
    assert fw.height_of_weight(tb, 4) == Fraction(4 * 5, 4)
    t1 = fw.FiniteType("A", 1)
    assert fw.omega_in_roots(t1, 1) == (Fraction(1, 2),)
    with pytest.raises(BadIndex):
        fw.omega_in_roots(tb, 5)


@given(types_and_levels())
@settings(max_examples=40)
def test_height_is_linear(te):
    t, _ = te
    u = fw.fundamental_weight_eps(t, 1)
    v = fw.fundamental_weight_eps(t, t.n)
    s = tuple(a + b for a, b in zip(u, v))
    assert fw.height_eps(t, s) == fw.height_eps(t, u) + fw.height_eps(t, v)


def test_root_coordinates_are_exact():
    t = fw.FiniteType("C", 3)
    v = fw.fundamental_weight_eps(t, 3)
    coords = fw.root_coordinates(t, v)
    assert coords == fw.omega_in_roots(t, 3)


def test_atomic_length_examples():
    t = fw.FiniteType("B", 3)
    assert fw.atomic_length_finite(t, 2, fw.identity_element(t)) == 0
    w0 = fw.w0_action(t)
    assert fw.atomic_length_finite(t, 2, w0) == fw.b_bound(t, 2)


def test_b_bound_examples():
    assert fw.b_bound(fw.FiniteType("A", 3), 3) == 10
    assert fw.b_bound(fw.FiniteType("A", 3), 1) == 3
    ta = fw.FiniteType("A", 3)
    assert fw.b_bound(ta, 1) == fw.height_of_weight(ta, 3) + \
        fw.height_of_weight(ta, 1)
    with pytest.raises(BadEll):
        fw.b_bound(fw.FiniteType("B", 3), 4)
    with pytest.raises(BadEll):
        fw.b_bound(fw.FiniteType("D", 4), 1)


@given(types_and_levels(max_n=4))
@settings(max_examples=25, deadline=None)
def test_values_are_bounded_nonnegative_integers(te):
    t, ell = te
    b = fw.b_bound(t, ell)
    for w in fw.enumerate_group(t):
        v = fw.atomic_length_finite(t, ell, w)
        assert 0 <= v <= b


def test_b_bound_matches_enumeration_small():
    for series, n in (("A", 3), ("B", 3), ("C", 3), ("D", 3)):
        t = fw.FiniteType(series, n)
        for ell in range(2 if series == "D" else 1, n + 1):
            mx = max(fw.atomic_length_finite(t, ell, w)
                     for w in fw.enumerate_group(t))
            assert mx == fw.b_bound(t, ell)


def test_w0_realizes_the_bound():
    for series, n in (("A", 4), ("B", 3), ("C", 4), ("D", 4), ("D", 3)):
        t = fw.FiniteType(series, n)
        w0 = fw.w0_action(t)
        for ell in range(2 if series == "D" else 1, n + 1):
            assert fw.atomic_length_finite(t, ell, w0) == fw.b_bound(t, ell)


def test_w0_shapes():
    assert fw.w0_action(fw.FiniteType("B", 3)).signs == (-1, -1, -1)
    assert fw.w0_action(fw.FiniteType("A", 3)).perm == (4, 3, 2, 1)
    assert fw.w0_action(fw.FiniteType("D", 4)).signs == (-1,) * 4
    assert fw.w0_action(fw.FiniteType("D", 3)).signs == (-1, -1, 1)


def test_saturation_examples():
    assert fw.saturation_check(fw.FiniteType("A", 3), 2).is_interval
    assert not fw.saturation_check(fw.FiniteType("B", 2), 2).is_interval
    assert fw.saturation_check(fw.FiniteType("D", 4), 2).is_interval


def test_rank_two_and_odd_small_rank_exceptions():
    # the printed characterization ("n = 2 and level in {1, 3}") fails in
    # series C: the level-1 orbit has 2^n points, fewer than the b+1 = n^2+1
    # interval values, and 2 is never a sum of distinct odd numbers
    res = fw.saturation_check(fw.FiniteType("C", 2), 1)
    assert not res.is_interval and 2 in res.missing
    res = fw.saturation_check(fw.FiniteType("C", 3), 1)
    assert not res.is_interval and res.missing == (2, 7)
    assert fw.saturation_check(fw.FiniteType("B", 2), 1).is_interval
    assert fw.saturation_check(fw.FiniteType("A", 2), 1).is_interval
    assert not fw.saturation_check(fw.FiniteType("A", 2), 2).is_interval
    # rank-3 level-2 failures in series C and D
    assert fw.saturation_check(fw.FiniteType("C", 3), 2).missing == (5, 12)
    assert fw.saturation_check(fw.FiniteType("D", 3), 2).missing == (3,)


@given(types_and_levels(max_n=4))
@settings(max_examples=30, deadline=None)
def test_saturation_matches_predicted(te):
    t, ell = te
    res = fw.saturation_check(t, ell)
    assert res.is_interval == fw.saturation_predicted(t, ell)


def test_saturation_result_serialization():
    res = fw.saturation_check(fw.FiniteType("B", 2), 2)
    doc = res.to_json_dict()
    assert doc == {"type": "B", "n": 2, "ell": 2, "b": 7, "image_min": 0,
                   "image_max": 7, "is_interval": False, "missing": [2, 5]}


def test_enumeration_budget(monkeypatch):
    monkeypatch.setenv("ATOMLEN_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        list(fw.enumerate_group(fw.FiniteType("B", 4)))
