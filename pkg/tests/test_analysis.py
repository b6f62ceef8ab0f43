"""Distribution operations, dependence checking, chi-square GoF."""

from fractions import Fraction

import pytest

from findep.analysis import (
    are_independent,
    chi_square_gof,
    k_dependence_counterexample,
    marginalize,
    pushforward,
    symmetry_check,
    tv_distance,
    verify_k_dependence,
)
from findep.dist import ExactDist
from findep.errors import BudgetExceeded
from findep.recurrence import cycle_law, line_window_law
from findep.words import Word

F = Fraction


def test_marginalize_identity_and_single_site():
    d = cycle_law(3, 3)
    assert marginalize(d, [1, 2, 3]) == d
    m = marginalize(d, {1})
    assert m == ExactDist({Word((c,), 3): F(1, 3) for c in (1, 2, 3)})


def test_marginalize_composes():
    d = cycle_law(5, 3)
    assert marginalize(marginalize(d, [1, 2, 4]), [1, 2]) == marginalize(d, [1, 2])
    # order-preserving: coordinates keep their relative order
    m = marginalize(cycle_law(4, 3), [2, 4])
    assert all(len(w) == 2 for w in m.support)


def test_marginalize_rejects_bad_coords():
    with pytest.raises(ValueError):
        marginalize(cycle_law(3, 3), [0, 1])
    with pytest.raises(ValueError):
        marginalize(cycle_law(3, 3), [4])


def test_pushforward_identity_and_constant():
    d = cycle_law(3, 3)
    assert pushforward(d, lambda s: s) == d
    assert pushforward(d, lambda s: "x") == ExactDist.point_mass("x")


def test_pushforward_preserves_mass():
    d = line_window_law(3, 1, 4)
    image = pushforward(d, lambda w: sum(w.symbols) % 2)
    assert sum(p for _, p in image.items()) == 1


def test_are_independent_far_sites():
    assert are_independent(cycle_law(6, 3), {1}, {4})


def test_are_independent_near_sites_fails():
    assert not are_independent(cycle_law(5, 3), {1}, {3})


def test_are_independent_empty_set_trivial():
    assert are_independent(cycle_law(5, 3), {1}, set())


def test_are_independent_rejects_overlap():
    with pytest.raises(ValueError):
        are_independent(cycle_law(5, 3), {1, 2}, {2, 3})


def test_k_dependence_positive():
    assert verify_k_dependence(cycle_law(6, 3), 2)
    assert verify_k_dependence(cycle_law(6, 4), 1)
    # on a 5-cycle no pair of sites is more than distance 2 apart
    assert verify_k_dependence(cycle_law(5, 3), 2)


def test_k_dependence_negative_with_counterexample():
    cex = k_dependence_counterexample(cycle_law(5, 3), 1)
    assert cex is not None
    s1, s2 = cex
    assert not are_independent(cycle_law(5, 3), s1, s2)


def test_k_dependence_budget_guard():
    with pytest.raises(BudgetExceeded):
        verify_k_dependence(cycle_law(11, 3, budget=10**7), 2)


def test_k_dependence_intervals_mode():
    assert verify_k_dependence(cycle_law(6, 3), 2, intervals_only=True)
    assert not verify_k_dependence(cycle_law(5, 3), 1, intervals_only=True)


def test_symmetry_checks():
    d = cycle_law(6, 3)
    assert symmetry_check(d, "rotation", r=1)
    assert symmetry_check(d, "rotation", r=4)
    assert symmetry_check(d, "reflection")
    assert symmetry_check(d, "color-permutation", sigma={1: 2, 2: 1, 3: 3})
    point = ExactDist.point_mass(Word.parse("123", 3))
    assert not symmetry_check(point, "rotation", r=1)
    with pytest.raises(ValueError):
        symmetry_check(d, "color-permutation")
    with pytest.raises(ValueError):
        symmetry_check(d, "transpose")


def test_symmetry_check_on_tuple_states():
    d = ExactDist.from_weights({(0, 1): 1, (1, 0): 1})
    assert symmetry_check(d, "rotation", r=1)
    assert symmetry_check(d, "reflection")


def test_tv_distance_metric_properties():
    a = cycle_law(4, 3)
    b = cycle_law(4, 4)
    c = pushforward(b, lambda w: Word(w.symbols, 3) if max(w.symbols) <= 3 else w)
    assert tv_distance(a, a) == 0
    assert tv_distance(a, b) == tv_distance(b, a)
    assert tv_distance(a, b) <= tv_distance(a, c) + tv_distance(c, b)


def test_tv_distance_point_masses():
    assert tv_distance(ExactDist.point_mass("a"), ExactDist.point_mass("b")) == 1


def test_chi_square_exact_counts_pass_with_zero_statistic():
    d = cycle_law(3, 3)
    counts = {s: 10 for s in d.support}
    report = chi_square_gof(counts, d)
    assert report.statistic == 0.0
    assert report.passed
    assert report.dof == 5
    assert report.n_samples == 60


def test_chi_square_concentrated_counts_fail():
    d = cycle_law(3, 3)  # uniform over 6 states
    state = next(iter(d.support))
    report = chi_square_gof({state: 600}, d)
    assert report.statistic == pytest.approx(3000.0)
    assert not report.passed


def test_chi_square_foreign_state_fails_with_diagnostic():
    d = cycle_law(3, 3)
    report = chi_square_gof({Word.parse("121", 3): 5}, d)
    assert not report.passed
    assert "outside the exact support" in report.failure_reason


def test_chi_square_rejects_empty_counts():
    with pytest.raises(ValueError):
        chi_square_gof({}, cycle_law(3, 3))
    with pytest.raises(ValueError):
        chi_square_gof({next(iter(cycle_law(3, 3).support)): 1}, cycle_law(3, 3), alpha=2)


def test_chi_square_pools_small_expectations():
    # weights 1,1,98: with 100 samples the two light states (expected 1
    # each) pool into the next cell so every cell has expectation >= 5
    d = ExactDist.from_weights({"a": 1, "b": 1, "c": 98})
    counts = {"a": 1, "b": 1, "c": 98}
    report = chi_square_gof(counts, d)
    assert report.n_cells == 1  # everything pooled; degenerate but passing
    assert report.passed
    d2 = ExactDist.from_weights({"a": 10, "b": 10, "c": 80})
    report2 = chi_square_gof({"a": 12, "b": 9, "c": 79}, d2)
    assert report2.n_cells == 3
    assert report2.dof == 2
    assert report2.passed
