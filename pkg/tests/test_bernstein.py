import math
import warnings

import numpy as np
import pytest

from malmquist.bernstein import (
    BernsteinReport, bernstein_trials, check_dyakonov, check_higher, derivative_operator_norm,
    dyakonov_bound, h2_derivative_norm, higher_bound, random_model_element, sharpening_exponent,
)
from malmquist.blaschke import MalmquistRep, Sigma, random_sigma


def test_bounds_closed_form():
    assert dyakonov_bound(4, 0.5) == pytest.approx(24.0)
    assert higher_bound(4, 0.5, 1) == pytest.approx(32.0)
    assert higher_bound(2, 0.0, 3) == pytest.approx(6 * 64 * 8)


def test_derivative_norm_of_monomials():
    # e_k = (-z)^k for sigma = {0}^n
    sigma = Sigma.one_point(0.0, 4)
    g = MalmquistRep(sigma, [0, 0, 0, 1])
    assert h2_derivative_norm(g, 1) == pytest.approx(3.0)
    assert h2_derivative_norm(g, 2) == pytest.approx(6.0)
    assert h2_derivative_norm(g, 4) == pytest.approx(0.0, abs=1e-12)


def test_derivative_norm_single_kernel():
    # e_1 = c / (1 - a z): ||e_1'||^2 = (1-a^2) sum j^2 a^(2j) = a^2 (1 + a^2) / (1 - a^2)^2
    a = 0.6
    g = MalmquistRep(Sigma.one_point(a, 1), [1.0])
    assert h2_derivative_norm(g, 1) == pytest.approx(a * math.sqrt(1 + a * a) / (1 - a * a), rel=1e-9)


def test_operator_norm_at_origin():
    # d/dz on span{1, ..., z^(n-1)} has norm n - 1
    val, rep = derivative_operator_norm(Sigma.one_point(0.0, 5), 1)
    assert val == pytest.approx(4.0)
    assert rep.norm() == pytest.approx(1.0)


def test_operator_norm_is_sup_of_ratios():
    sigma = Sigma(((0.5, 2), (-0.3j, 2)))
    val, rep = derivative_operator_norm(sigma, 1)
    assert h2_derivative_norm(rep, 1) == pytest.approx(val, rel=1e-8)
    rng = np.random.default_rng(0)
    for _ in range(20):
        g = random_model_element(sigma, rng)
        assert h2_derivative_norm(g, 1) / g.norm() <= val * (1 + 1e-9)


def test_report_margin():
    rep = BernsteinReport(ratio=1.0, bound=4.0, passed=True)
    assert rep.margin == pytest.approx(3.0)


def test_checks_pass_on_random_elements():
    rng = np.random.default_rng(9)
    for _ in range(40):
        n = int(rng.integers(1, 11))
        sigma = random_sigma(rng, n, float(rng.uniform(0, 0.95)), multiplicities=bool(rng.integers(2)))
        g = random_model_element(sigma, rng)
        assert check_dyakonov(sigma, g).passed
        for k in (1, 2, 3):
            rep = check_higher(sigma, g, k)
            assert rep.passed and rep.ratio <= rep.bound


def test_checks_reject_zero():
    sigma = Sigma.one_point(0.2, 2)
    g = MalmquistRep(sigma, [0, 0])
    with pytest.raises(ValueError):
        check_dyakonov(sigma, g)
    with pytest.raises(ValueError):
        check_higher(sigma, g, 2)


def test_trials_reproducible():
    a = bernstein_trials(4, 0.6, 5, k=2, seed=3)
    b = bernstein_trials(4, 0.6, 5, k=2, seed=3)
    assert a == b
    assert [row["trial"] for row in a] == list(range(5))
    assert all(row["ratio"] <= row["bound"] for row in a)


def test_sharpening_exponent_first_order():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        s = sharpening_exponent(1)
    assert 0.8 <= s <= 1.6


def test_derivative_of_constant_vanishes():
    g = MalmquistRep(Sigma.one_point(0.0, 1), [1.0])
    assert h2_derivative_norm(g, 1) == pytest.approx(0.0, abs=1e-15)
    assert h2_derivative_norm(MalmquistRep(Sigma.one_point(0.6, 3), [0, 1, 0]), 0) == pytest.approx(1.0)


def test_dyakonov_on_single_kernel():
    rep = check_dyakonov(Sigma.one_point(0.9, 1), MalmquistRep(Sigma.one_point(0.9, 1), [1.0]))
    assert rep.ratio == pytest.approx(0.9 * math.sqrt(1.81) / 0.19, rel=1e-9)
    assert rep.ratio == pytest.approx(6.373, abs=1e-3)
    assert rep.bound == pytest.approx(30.0)
    assert rep.passed


@pytest.mark.parametrize("n", [3, 6])
def test_top_monomial_ratios(n):
    # z^(n-1) = +-e_n for sigma = {0}^n
    sigma = Sigma.one_point(0.0, n)
    g = MalmquistRep(sigma, np.eye(n)[-1])
    assert check_dyakonov(sigma, g).ratio == pytest.approx(n - 1)
    assert check_higher(sigma, g, 2).ratio == pytest.approx((n - 1) * (n - 2))
    rep = check_higher(sigma, g, 0)
    assert rep.ratio == pytest.approx(1.0) and rep.bound == 1.0
