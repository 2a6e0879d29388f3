import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opmonotone.catalog import affine, constant, convex_subset, f_lambda, log1p, monotone_subset, power, t_squared
from opmonotone.errors import HypothesisError
from opmonotone.hermitian import apply_function, eigh, psd_check, spectral_norm, symmetrized_product
from opmonotone.inequalities import (
    HANSEN_RATIO,
    LAMBDA_GRID,
    ContractionFamily,
    SpectralWindow,
    build_dilation,
    dilation_block_identity,
    f_lambda_defect,
    gustafson_bound,
    difference_of_squares_residual,
    subadditivity_tail,
    verify_gustafson,
    verify_hansen_type,
    verify_power_monotone,
    verify_power_split,
    verify_square_order,
    verify_subadditivity_converse,
    verify_subadditivity_forward,
    verify_tf_corollary,
    verify_weighted_corollary,
    verify_window_subadditivity,
)
from opmonotone.sampler import InstanceSpec, generate, random_isometry

SQ2 = math.sqrt(2.0)
A0 = np.array([[1.0, 0.0], [0.0, 0.0]])
B0 = np.array([[1.0, 1.0], [1.0, 1.0]])
seeds = st.integers(0, 2**63)
dims = st.integers(2, 6)


def draw(kind, dim, seed, **params):
    return generate(InstanceSpec(dim, kind, seed, params))[0]


def margin(report, label):
    return next(r["min_eigenvalue"] for r in report.records if r["function"] == label)


# --- subadditivity ---------------------------------------------------------------


def test_forward_scalar_identity():
    r = verify_subadditivity_forward(np.eye(2), np.eye(2), [f_lambda(1.0)])
    assert r.passed and margin(r, "f_lambda:lam=1") == pytest.approx(1 / 3)


def test_forward_commuting_pair():
    r = verify_subadditivity_forward(np.diag([1.0, 2.0]), np.diag([2.0, 1.0]), [power(0.5)])
    assert r.passed and margin(r, "power:p=0.5") == pytest.approx(1 + SQ2 - math.sqrt(3))


def test_forward_random_pair_full_subset():
    a, b = draw("jordan_positive_pair", 4, 1)
    r = verify_subadditivity_forward(a, b)
    assert r.passed and len(r.records) == len(monotone_subset())


def test_forward_preconditions():
    with pytest.raises(HypothesisError):
        verify_subadditivity_forward(A0, B0)
    r = verify_subadditivity_forward(A0, B0, explore=True)
    assert r.out_of_hypothesis and r.in_hypothesis_failures == []


def test_forward_skips_untagged_functions():
    r = verify_subadditivity_forward(np.eye(2), np.eye(2), [t_squared(), power(0.5)])
    assert [x["function"] for x in r.records] == ["power:p=0.5"]
    assert any("t_squared" in n for n in r.notes)


def test_converse_counterexample_pair():
    assert psd_check(symmetrized_product(A0, B0)).min_eigenvalue == pytest.approx(1 - SQ2, abs=1e-12)
    r = verify_subadditivity_converse(A0, B0, [2.0**k for k in range(21)])
    assert r.passed and r.verdict == "violation_found"
    assert min(x["min_eigenvalue"] for x in r.records) < -1e-8


def test_converse_precondition():
    with pytest.raises(HypothesisError):
        verify_subadditivity_converse(np.eye(2), np.eye(2))


def test_converse_inconclusive_is_reported():
    # a grid that stops before any violation appears
    a, b = draw("jordan_indefinite_pair", 3, 0)
    r = verify_subadditivity_converse(a, b, [1e-9])
    assert r.verdict == "inconclusive" and not r.passed
    assert "defect_spectrum" in r.failures[0]


def test_tail_bound_and_decay():
    r = verify_subadditivity_converse(A0, B0)
    assert r.extras["tail_monotone_decay"] and r.extras["tail_within_bound"]
    lam = 2.0**20
    na, nb = spectral_norm(A0), spectral_norm(B0)
    assert spectral_norm(subadditivity_tail(A0, B0, lam)) <= (nb * nb * na + na * na * nb) / lam


def test_proof_identity():
    # (λ + A + B) defect (λ + A + B) = λ (S + B X B + A Y A)
    rng = np.random.default_rng(0)
    for lam in (0.5, 3.0, 100.0):
        a, b = draw("psd_pair", 3, int(rng.integers(2**32)))
        m = lam * np.eye(3) + a + b
        lhs = m @ f_lambda_defect(a, b, lam) @ m
        rhs = lam * (symmetrized_product(a, b) + subadditivity_tail(a, b, lam))
        assert np.linalg.norm(lhs - rhs) <= 1e-10 * (1 + np.linalg.norm(rhs))


def test_defect_matches_function_calculus():
    a, b = draw("psd_pair", 3, 5)
    f = f_lambda(2.0)
    direct = apply_function(f, a) + apply_function(f, b) - apply_function(f, a + b)
    assert np.allclose(f_lambda_defect(a, b, 2.0), direct, atol=1e-12)


@settings(max_examples=30)
@given(seeds, st.integers(2, 4))
def test_converse_sharpness(seed, dim):
    a, b = draw("jordan_indefinite_pair", dim, seed)
    assert psd_check(symmetrized_product(a, b), 0).min_eigenvalue < -1e-4 * spectral_norm(a) * spectral_norm(b)
    assert verify_subadditivity_converse(a, b, LAMBDA_GRID).verdict == "violation_found"


# --- windows -------------------------------------------------------------------


def test_gustafson_equality_and_counterexample_pair():
    w = SpectralWindow(1.0, 1.0)
    r = verify_gustafson(np.eye(2), np.eye(2), w, w)
    assert r.passed and abs(margin(r, "gustafson")) < 1e-14
    wa, wb = SpectralWindow(0.0, 1.0), SpectralWindow(0.0, 2.0)
    assert gustafson_bound(wa, wb) == -0.25
    r = verify_gustafson(A0, B0, wa, wb)
    assert r.passed and margin(r, "gustafson") == pytest.approx((1 - SQ2) / 2 + 0.25)


def test_gustafson_preconditions():
    with pytest.raises(HypothesisError):
        verify_gustafson(A0, B0, SpectralWindow(0.0, 1.0), SpectralWindow(0.0, 1.0))
    with pytest.raises(ValueError):
        SpectralWindow(2.0, 1.0)


def test_window_subadditivity_examples():
    w = SpectralWindow(1.0, 3.0)
    for seed in range(10):
        a = draw("psd_window", 3, seed, lo=1.0, hi=3.0)
        b = draw("psd_window", 3, seed + 100, lo=1.0, hi=3.0)
        assert verify_window_subadditivity(a, b, w, w).passed
    zero = SpectralWindow(0.0, 0.0)
    assert verify_window_subadditivity(np.zeros((2, 2)), A0, zero, SpectralWindow(0.0, 1.0)).passed
    wide = SpectralWindow(1.0, 1.0 + 2 * SQ2 + 0.1)
    assert verify_window_subadditivity(np.diag([1.0, 3.8]), np.eye(2), wide, SpectralWindow(1.0, 1.0)).passed
    with pytest.raises(HypothesisError):
        verify_window_subadditivity(A0, B0, SpectralWindow(0.0, 1.0), SpectralWindow(0.0, 2.0))


# --- power split ---------------------------------------------------------------


def test_power_split_equal_pair():
    a = draw("psd", 3, 2)
    r = verify_power_split(a, a, 0.3)
    assert r.passed and abs(margin(r, "S2")) < 1e-12


def test_power_split_diagonal():
    r = verify_power_split(np.eye(2), np.diag([4.0, 1.0]), 0.5, [power(0.5)])
    # S1 = diag(3/2, 1), S2 = diag(1/2, 0)
    want = min(math.sqrt(1.5) + math.sqrt(0.5) - math.sqrt(2.0), 0.0)
    assert r.passed and margin(r, "power:p=0.5") == pytest.approx(want, abs=1e-14)
    assert r.extras["identity_residual"] < 1e-14


def test_power_split_random():
    lo, hi = draw("ordered_pair_leq", 4, 3)
    r = verify_power_split(lo, hi, 0.3)
    assert r.passed and r.extras["identity_residual"] < 1e-12


def test_power_split_preconditions():
    with pytest.raises(HypothesisError):
        verify_power_split(np.eye(2), 2 * np.eye(2), 0.7)
    with pytest.raises(HypothesisError):
        verify_power_split(2 * np.eye(2), np.eye(2), 0.3)


# --- dilation and Hansen-type ----------------------------------------------------


def test_dilation_identity_isometry():
    u, v = build_dilation(np.eye(2))
    assert np.allclose(u, np.diag([1, 1, -1, -1]))
    assert np.allclose(v, np.eye(4))


def test_dilation_column_embedding():
    c = np.array([[1.0], [0.0]])
    u, _ = build_dilation(c)
    assert np.allclose(u[:2, 1:], np.diag([0.0, 1.0]))


def test_dilation_random_isometry():
    rng = np.random.default_rng(0)
    for rows, cols in ((4, 2), (3, 3), (6, 3)):
        c = random_isometry(rng, rows, cols)
        a = draw("psd", rows, int(rng.integers(2**32)))
        res = dilation_block_identity(a, c)
        assert max(res.values()) < 1e-10
    with pytest.raises(HypothesisError):
        build_dilation(2 * np.eye(2))


def test_dilation_square_with_equal_blocks():
    rng = np.random.default_rng(1)
    c = random_isometry(rng, 3, 3)
    a = draw("psd", 3, 4)
    res = dilation_block_identity(a, c, a2=a)
    assert max(res.values()) < 1e-9


def test_hansen_unitary_reduces_to_scalar_inequality():
    rng = np.random.default_rng(2)
    c = random_isometry(rng, 3, 3)
    a = draw("psd_window", 3, 9, lo=1.0, hi=HANSEN_RATIO)
    w = SpectralWindow(1.0, HANSEN_RATIO)
    f = power(0.5)
    r = verify_hansen_type(a, c, w, [f])
    lam = eigh(a).eigenvalues
    assert r.passed
    assert margin(r, "power:p=0.5") == pytest.approx(np.min(2 * f(lam / 2) - f(lam)), abs=1e-12)


def test_hansen_family_and_weights():
    w = SpectralWindow(2.0, 2.0 * HANSEN_RATIO)
    blocks = draw("resolution_of_identity", 3, 1, count=4)
    mats = [draw("psd_window", 3, s, lo=w.lo, hi=w.hi) for s in range(4)]
    assert verify_hansen_type(mats, ContractionFamily(blocks), w).passed
    r = verify_hansen_type(mats[0], ContractionFamily(blocks), w)
    assert r.passed and r.extras["literal_reading"].startswith("coincides")
    parts = [c.conj().T @ c for c in blocks]
    weights = [w.lo, w.hi, 3.0, 5.0]
    assert verify_weighted_corollary(weights, parts, w).passed


def test_hansen_window_hypothesis():
    w = SpectralWindow(1.0, 5.0)
    a = draw("psd_window", 4, 0, lo=1.0, hi=5.0)
    c = random_isometry(np.random.default_rng(0), 4, 2)
    with pytest.raises(HypothesisError):
        verify_hansen_type(a, c, w)
    r = verify_hansen_type(a, c, w, explore=True)
    assert r.out_of_hypothesis and r.in_hypothesis_failures == []
    with pytest.raises(HypothesisError):
        verify_hansen_type(5 * np.eye(4), c, SpectralWindow(1.0, 2.0))


# --- convex branch -------------------------------------------------------------


def test_square_order_forward_half():
    a = draw("psd", 3, 1)
    r = verify_square_order(a, a / 2)
    assert r.verdict == "forward" and r.passed
    assert r.extras["difference_of_squares_residual"] < 1e-12


def test_square_order_incomparable_diagonals():
    r = verify_square_order(np.diag([2.0, 1.0]), np.diag([1.0, 2.0]))
    assert r.verdict == "converse" and r.passed
    assert r.records[0]["min_eigenvalue"] == pytest.approx(-3.0)


def test_square_order_sampler_forward():
    for seed in range(30):
        a, b = draw("ordered_pair_sq_leq", 4, seed)
        assert verify_square_order(a, b).passed


@given(seeds, dims)
def test_difference_of_squares_identity(seed, dim):
    a, b = draw("psd_pair", dim, seed)
    assert difference_of_squares_residual(a, b) <= 1e-12


def test_power_monotone_examples():
    lo, hi = draw("ordered_pair_leq", 3, 0)
    r = verify_power_monotone(hi, lo, 0.5, [t_squared()])
    assert r.passed
    assert margin(r, "t_squared") == pytest.approx(psd_check(hi - lo).min_eigenvalue, abs=1e-12)
    r = verify_power_monotone(hi, lo, 0.0, [t_squared()])
    assert abs(margin(r, "t_squared")) < 1e-14
    with pytest.raises(HypothesisError):
        verify_power_monotone(lo, hi + np.eye(3), 0.4)


def test_tf_corollary_examples():
    lo, hi = draw("ordered_pair_leq", 3, 4)
    a, b = hi + 0.1 * np.eye(3), lo + 0.1 * np.eye(3)
    p = 0.3
    r = verify_tf_corollary(a, b, p, constant(1.0))
    assert r.passed
    pa, pb = apply_function(power(p), a), apply_function(power(p), b)
    assert margin(r, "(i) constant:c=1") == pytest.approx(psd_check(pa - pb, scale=1).min_eigenvalue, abs=1e-12)
    assert verify_tf_corollary(a, b, 0.5, power(0.5)).passed
    assert verify_tf_corollary(a, b, 0.5, log1p()).passed


def test_tf_corollary_preconditions():
    a = np.diag([1.0, 0.0])
    with pytest.raises(HypothesisError):
        verify_tf_corollary(a, a, 0.3, log1p())
    assert verify_tf_corollary(a, a, 0.3, log1p(), parts=("i",)).passed
    with pytest.raises(HypothesisError):
        verify_tf_corollary(np.eye(2), np.eye(2), 0.3, affine(0.0, 0.0), parts=("ii",))
    with pytest.raises(HypothesisError):
        verify_tf_corollary(np.eye(2), np.eye(2), 0.3, t_squared())


# --- hypothesis-conclusion soundness ----------------------------------------------


@settings(max_examples=25)
@given(seeds, dims, st.floats(0.0, 0.5))
def test_soundness_on_sampled_instances(seed, dim, p):
    a, b = draw("jordan_positive_pair", dim, seed)
    assert verify_subadditivity_forward(a, b).passed
    lo, hi = draw("ordered_pair_leq", dim, seed)
    assert verify_power_split(lo, hi, p).passed
    assert verify_power_monotone(hi, lo, p).passed
    shift = 0.05 * np.eye(dim)
    assert verify_tf_corollary(hi + shift, lo + shift, p, log1p()).passed
    a, b = draw("ordered_pair_sq_leq", dim, seed)
    assert verify_square_order(a, b).passed
    a, b = draw("sq_violating_pair", dim, seed)
    assert verify_square_order(a, b).verdict == "converse"
