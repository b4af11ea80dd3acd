import math
import random

import numpy as np
import pytest

from astopo import FitError, fit_power_law


def law(exponent, prefactor, xs):
    return [(x, prefactor * x**exponent) for x in xs]


def test_recovers_exact_decaying_law():
    fit = fit_power_law(law(-2.0, 5.0, range(1, 40)))
    assert fit.exponent == pytest.approx(-2.0, abs=1e-12)
    assert fit.prefactor == pytest.approx(5.0, rel=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.accepted


def test_recovers_exact_growing_law():
    fit = fit_power_law(law(1.5, 0.3, [2, 3, 5, 8, 13, 21]))
    assert fit.exponent == pytest.approx(1.5, abs=1e-12)
    assert fit.accepted


def test_constant_y_reports_zero_exponent_not_accepted():
    fit = fit_power_law([(x, 7.0) for x in range(1, 10)])
    assert fit.exponent == 0.0
    assert fit.prefactor == pytest.approx(7.0)
    assert fit.r_squared == 0.0
    assert not fit.accepted


def test_matches_polyfit_on_noisy_data():
    rng = random.Random(42)
    pts = [
        (x, 3.0 * x**-1.7 * math.exp(rng.gauss(0, 0.1)))
        for x in range(1, 60)
    ]
    fit = fit_power_law(pts)
    slope, intercept = np.polyfit(
        [math.log(x) for x, _ in pts], [math.log(y) for _, y in pts], 1
    )
    assert fit.exponent == pytest.approx(slope, abs=1e-10)
    assert fit.prefactor == pytest.approx(math.exp(intercept), rel=1e-10)
    assert fit.exponent == pytest.approx(-1.7, abs=0.15)


def test_scaling_y_changes_only_the_prefactor():
    pts = law(-2.3, 1.0, range(1, 30))
    base = fit_power_law(pts)
    scaled = fit_power_law([(x, 1000.0 * y) for x, y in pts])
    assert scaled.exponent == pytest.approx(base.exponent, abs=1e-12)
    assert scaled.r_squared == pytest.approx(base.r_squared, abs=1e-12)
    assert scaled.prefactor == pytest.approx(1000.0 * base.prefactor, rel=1e-12)


def test_scaling_x_changes_only_the_prefactor():
    pts = law(-1.4, 2.0, range(1, 30))
    base = fit_power_law(pts)
    scaled = fit_power_law([(10.0 * x, y) for x, y in pts])
    assert scaled.exponent == pytest.approx(base.exponent, abs=1e-12)
    assert scaled.r_squared == pytest.approx(base.r_squared, abs=1e-12)


def test_x_range_restricts_points():
    pts = law(-2.0, 1.0, range(1, 21))
    fit = fit_power_law(pts, x_range=(5, 10))
    assert fit.n_points == 6
    assert fit.x_range == (5, 10)
    assert fit.exponent == pytest.approx(-2.0, abs=1e-12)


def test_default_range_is_data_extent():
    fit = fit_power_law(law(-1.0, 1.0, [3, 7, 11]))
    assert fit.x_range == (3, 11)


def test_out_of_range_bad_points_are_ignored():
    pts = [(0.0, 1.0)] + law(-2.0, 1.0, range(5, 30))
    fit = fit_power_law(pts, x_range=(5, 30))
    assert fit.exponent == pytest.approx(-2.0, abs=1e-12)


def test_non_positive_point_in_range_is_an_error():
    with pytest.raises(FitError, match=r"\(3.*0"):
        fit_power_law([(1, 2.0), (2, 1.0), (3, 0.0)])
    with pytest.raises(FitError):
        fit_power_law([(-1, 2.0), (2, 1.0)])


def test_too_few_distinct_x_is_an_error():
    with pytest.raises(FitError, match="distinct"):
        fit_power_law([(2, 4.0)])
    with pytest.raises(FitError, match="distinct"):
        fit_power_law([(2, 4.0), (2, 5.0)])
    with pytest.raises(FitError):
        fit_power_law(law(-2.0, 1.0, range(1, 20)), x_range=(50, 60))


def test_duplicate_x_values_are_allowed_in_fit():
    pts = law(-2.0, 1.0, [1, 2, 3, 4, 5]) + law(-2.0, 1.0, [3])
    fit = fit_power_law(pts)
    assert fit.n_points == 6
    assert fit.exponent == pytest.approx(-2.0, abs=1e-12)


def test_acceptance_needs_five_distinct_x():
    # perfect fit but only 4 distinct x values: not accepted
    fit = fit_power_law(law(-2.0, 1.0, [1, 2, 3, 4]))
    assert fit.r_squared == pytest.approx(1.0)
    assert not fit.accepted
    assert fit_power_law(law(-2.0, 1.0, [1, 2, 3, 4, 5])).accepted


def test_acceptance_threshold_is_honoured():
    rng = random.Random(7)
    pts = [
        (x, x**-1.0 * math.exp(rng.gauss(0, 1.5))) for x in range(1, 40)
    ]
    loose = fit_power_law(pts, threshold=0.05)
    strict = fit_power_law(pts, threshold=0.999)
    assert loose.r_squared == strict.r_squared
    assert loose.accepted
    assert not strict.accepted
    assert strict.threshold == 0.999


def test_fit_accepts_any_iterable():
    fit = fit_power_law((p for p in law(-2.0, 1.0, range(1, 10))))
    assert fit.n_points == 9
