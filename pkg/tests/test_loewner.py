import numpy as np
import pytest

from conftest import random_psd
from opmonotone.catalog import (
    NONNEG_MONOTONE,
    affine,
    catalog_list,
    constant,
    convex_kernel,
    convex_subset,
    f_lambda,
    monotone_subset,
    power,
    t_squared,
)
from opmonotone.errors import DomainError, HypothesisError
from opmonotone.loewner import (
    FINITE_ORDER_CAVEAT,
    GridSpec,
    composition_monotone_check,
    loewner_certificate,
    loewner_matrix,
    midpoint_convexity_check,
    order_n_monotone,
    pick_scan,
)

MONOTONE = [f for f in catalog_list() if f.has(NONNEG_MONOTONE)]


def test_identity_gives_all_ones():
    cert = loewner_certificate(affine(0.0, 1.0), [1.0, 2.0, 5.0])
    assert np.allclose(cert.metadata["matrix"], np.ones((3, 3)))
    assert cert.positive and abs(cert.min_eigenvalue) < 1e-14


def test_square_two_points():
    cert = loewner_certificate(t_squared(), [0.0, 1.0])
    assert np.allclose(cert.metadata["matrix"], [[0, 1], [1, 2]])
    assert not cert.positive and cert.min_eigenvalue == pytest.approx(1 - np.sqrt(2))


def test_sqrt_three_points():
    assert loewner_certificate(power(0.5), [0.25, 1.0, 4.0]).positive


def test_merge_and_midpoint_rules():
    lm = loewner_matrix(power(0.5), [1.0, 1.0 + 1e-12, 2.0, 2.0 + 1e-6])
    assert len(lm.points) == 3 and len(lm.merged) == 1
    assert lm.midpoint_pairs == [(1, 2)]
    assert lm.entries[1, 2] == pytest.approx(0.5 / np.sqrt(2.0 + 5e-7))


def test_midpoint_rule_is_relative_at_small_scale():
    # 1e-7 and 2e-7 are far apart relative to their size
    lm = loewner_matrix(power(0.5), [1e-7, 2e-7])
    assert lm.midpoint_pairs == []
    assert lm.entries[0, 1] == pytest.approx((np.sqrt(2e-7) - np.sqrt(1e-7)) / 1e-7)


def test_points_outside_domain():
    with pytest.raises(DomainError):
        loewner_matrix(power(0.5), [-1.0, 1.0])


@pytest.mark.parametrize("f", MONOTONE, ids=lambda f: f.label)
def test_monotone_entries_pass_order_six(f):
    report = order_n_monotone(f, 6, 500, seed=11, tol=1e-9)
    assert report.passed and report.trials == 500
    assert FINITE_ORDER_CAVEAT in report.notes


def test_kernel_order_four():
    assert order_n_monotone(f_lambda(1.0), 4, 100, seed=0).passed
    assert order_n_monotone(affine(1.0, 2.0), 5, 50, seed=0).passed


@pytest.mark.parametrize("f", [t_squared(), power(3.0)], ids=lambda f: f.label)
def test_non_monotone_fail_at_order_two(f):
    report = order_n_monotone(f, 2, 200, seed=3, interval=(0.0, 10.0))
    assert report.failures
    assert "points" in report.failures[0]


def test_order_n_is_deterministic():
    a = order_n_monotone(power(0.5), 4, 20, seed=9).to_json()
    b = order_n_monotone(power(0.5), 4, 20, seed=9).to_json()
    assert a == b


def test_order_n_rejects_bad_arguments():
    with pytest.raises(ValueError):
        order_n_monotone(power(0.5), 0, 5, seed=0)


def test_midpoint_convexity_examples():
    cert = midpoint_convexity_check(t_squared(), np.diag([0.0, 2.0]), np.diag([2.0, 0.0]))
    assert cert.positive and cert.min_eigenvalue == pytest.approx(1.0)
    a = np.diag([1.0, 3.0])
    assert abs(midpoint_convexity_check(t_squared(), a, a).min_eigenvalue) < 1e-14
    rng = np.random.default_rng(0)
    for _ in range(50):
        assert midpoint_convexity_check(convex_kernel(1.0), random_psd(rng, 3), random_psd(rng, 3)).positive


def test_power_cubed_not_midpoint_convex():
    rng = np.random.default_rng(1)
    found = any(
        not midpoint_convexity_check(power(3.0), random_psd(rng, 2), random_psd(rng, 2)).positive
        for _ in range(200)
    )
    assert found


def test_pick_scan_examples():
    r = pick_scan(power(0.5))
    assert r.is_pick_on_grid and r.is_first_quadrant_on_grid
    r = pick_scan(power(0.8))
    assert r.is_pick_on_grid and not r.is_first_quadrant_on_grid
    r = pick_scan(constant(3.0))
    assert r.min_im == 0 and r.min_re == 3 and r.is_first_quadrant_on_grid
    assert not pick_scan(t_squared()).is_pick_on_grid


def test_grid_points_are_open_upper_half_plane():
    z = GridSpec(n_mod=5, n_arg=7).points()
    assert z.shape == (35,) and np.all(z.imag > 0)


@pytest.mark.parametrize("f", MONOTONE, ids=lambda f: f.label)
def test_pick_consistency(f):
    assert pick_scan(f).is_pick_on_grid


def test_first_quadrant_strictly_positive_for_nonconstant():
    for f in [power(p) for p in (0.1, 0.25, 0.5)] + [f_lambda(1.0), power(0.3)]:
        r = pick_scan(f)
        if r.is_first_quadrant_on_grid:
            assert r.min_re > 0


def test_composition_examples():
    r = composition_monotone_check(t_squared(), power(0.25), 4, 100, seed=1)
    assert r.passed and r.extras["first_quadrant"]
    r = composition_monotone_check(t_squared(), power(0.75), 2, 200, seed=1)
    assert not r.passed and not r.extras["first_quadrant"]
    for g in monotone_subset():
        assert composition_monotone_check(affine(0.0, 1.0), g, 4, 30, seed=2).passed


@pytest.mark.parametrize("p", [0.1, 0.25, 0.5])
def test_composition_first_quadrant_side(p):
    for f in convex_subset():
        r = composition_monotone_check(f, power(p), 4, 40, seed=5)
        assert r.passed and r.extras["first_quadrant"], f.label


@pytest.mark.parametrize("p", [0.6, 0.75, 0.9])
def test_composition_violating_side(p):
    r = composition_monotone_check(t_squared(), power(p), 2, 200, seed=5)
    assert r.failures and not r.extras["first_quadrant"]


def test_composition_checks_tags():
    with pytest.raises(HypothesisError):
        composition_monotone_check(power(0.5), power(0.5), 2, 5, seed=0)
    with pytest.raises(HypothesisError):
        composition_monotone_check(t_squared(), t_squared(), 2, 5, seed=0)
