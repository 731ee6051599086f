import numpy as np
import pytest

from malmquist.blaschke import MalmquistRep, Sigma, project_kernel, random_sigma
from malmquist.interpolator import (
    default_grid, hermite_trace, interpolant_norm_ratio, phi, shifted_coeffs, sup_norm, trace_match,
)
from malmquist.spaces import HARDY, SpaceSpec, TaylorSeries, dual_norm, weighted_norm


def gauss(rng, m):
    return (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / np.sqrt(2)


def test_shifted_coeffs():
    # (1 + z)^3 about a = 1: 8 + 12 h + 6 h^2 + h^3
    assert np.allclose(shifted_coeffs([1, 3, 3, 1], 1.0, 5), [8, 12, 6, 1, 0])
    assert np.allclose(shifted_coeffs([], 0.3, 2), [0, 0])


def test_hermite_trace_order():
    f = TaylorSeries([0, 0, 1])
    sigma = Sigma(((0.5, 2), (0.1j, 1)))
    assert np.allclose(hermite_trace(f, sigma), [0.25, 1.0, -0.01])


def test_phi_of_low_degree_is_projection_identity():
    # polynomials of degree < n lie in K_B when sigma = {0}^n
    sigma = Sigma.one_point(0.0, 4)
    f = TaylorSeries([1, -2j, 0.5])
    g = phi(f, sigma)
    assert g.extended
    assert np.allclose(g.taylor(5).coeffs, [1, -2j, 0.5, 0, 0, 0], atol=1e-15)
    assert g.norm() == pytest.approx(np.sqrt(1 + 4 + 0.25))


def test_phi_zero_and_linearity():
    rng = np.random.default_rng(4)
    sigma = Sigma(((0.4, 2), (-0.7j, 1)))
    f1, f2 = TaylorSeries(gauss(rng, 8)), TaylorSeries(gauss(rng, 12))
    assert np.allclose(phi(TaylorSeries([0.0]), sigma).coords, 0)
    lhs = phi(f1 + f2 * 2j, sigma).coords
    rhs = phi(f1, sigma).coords + 2j * phi(f2, sigma).coords
    assert np.allclose(lhs.astype(complex), rhs.astype(complex), atol=1e-13)


@pytest.mark.parametrize("mult", [False, True])
def test_trace_correctness_random(mult):
    rng = np.random.default_rng(123 + mult)
    worst = 0.0
    for _ in range(40):
        n = int(rng.integers(1, 11))
        sigma = random_sigma(rng, n, float(rng.uniform(0, 0.9)), multiplicities=mult)
        f = TaylorSeries(gauss(rng, int(rng.integers(1, 52))))
        res = trace_match(f, phi(f, sigma), sigma)
        assert res.matched
        worst = max(worst, res.defect)
    assert worst <= 1e-8


def test_trace_match_detects_mismatch():
    sigma = Sigma.one_point(0.5, 2)
    f = TaylorSeries([0, 1])
    res = trace_match(f, TaylorSeries([0, 1, 1e-3]), sigma)
    assert not res.matched and res.defect == pytest.approx(1e-3, rel=1e-9)
    assert trace_match(f, f, sigma).defect == 0.0


def test_trace_high_multiplicity_near_circle():
    # a stress case for the coordinate representation
    rng = np.random.default_rng(40)
    sigma = Sigma(((0.9, 10),))
    f = TaylorSeries(gauss(rng, 51))
    assert trace_match(f, phi(f, sigma), sigma).defect <= 1e-8


def test_sup_norm_known_values():
    res = sup_norm(lambda z: 1 + z ** 3)
    assert res.grid <= res.refined
    assert res.refined == pytest.approx(2.0, abs=1e-12)
    # |1 + 0.5 z| peaks at theta = 0
    res = sup_norm(lambda z: 1 + 0.5 * z * np.exp(-0.123j), samples=64)
    assert res.refined == pytest.approx(1.5, abs=1e-10)
    assert res.theta == pytest.approx(0.123, abs=1e-5)


def test_default_grid():
    assert default_grid() == 4096
    assert default_grid(10, 0.95) == 64 * 10 * 20


def test_sup_norm_of_rep_dominates_h2_norm():
    sigma = Sigma.from_points([0.2, -0.5j, 0.6])
    g = MalmquistRep(sigma, [1.0, 1j, -0.5])
    assert sup_norm(g).refined >= g.norm() * (1 - 1e-12)


def test_interpolant_norm_ratio():
    sigma = Sigma.one_point(0.0, 3)
    f = TaylorSeries([1.0])
    assert interpolant_norm_ratio(f, sigma, HARDY) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        interpolant_norm_ratio(TaylorSeries([0.0]), sigma, SpaceSpec(1, 0))


# ---------------------------------------------------------------- closed forms and invariants

def test_phi_at_origin_is_constant_term():
    g = phi(TaylorSeries([2 - 1j, 5, 7]), Sigma.one_point(0.0, 1))
    assert np.allclose(g.coords.astype(complex), [2 - 1j])


def test_phi_fixes_model_space_elements():
    sigma = Sigma(((0.5, 2), (-0.3j, 1)))
    e1 = MalmquistRep(sigma, [1, 0, 0])
    g = phi(e1.taylor_for_tol(1e-15), sigma)
    assert np.allclose(g.coords.astype(complex), [1, 0, 0], atol=1e-12)


def test_phi_trace_at_single_point():
    g = phi(TaylorSeries([0, 1]), Sigma.one_point(0.5, 1))
    assert g(0.5) == pytest.approx(0.5)


def test_phi_kills_blaschke_multiples():
    sigma = Sigma(((0.4, 2), (-0.5j, 1)))
    # prod (z - lam_j) times a polynomial has zero trace
    poly = np.poly(sigma.expanded)[::-1]
    f = TaylorSeries(np.convolve(poly, [1.0, 0.5j, -2.0]))
    assert np.max(np.abs(phi(f, sigma).coords.astype(complex))) < 1e-12
    assert trace_match(f, MalmquistRep(sigma, np.zeros(3)), sigma).matched


def test_trace_defect_of_zero_against_one():
    sigma = Sigma.from_points([0.3])
    res = trace_match(TaylorSeries([1.0]), MalmquistRep(sigma, [0.0]), sigma)
    assert res.defect == pytest.approx(1.0)


@pytest.mark.parametrize("k", [0, 1, 5])
def test_sup_norm_monomial(k):
    assert sup_norm(lambda z: z ** k).refined == pytest.approx(1.0)


def test_sup_norm_dirichlet_and_kernel():
    n = 7
    res = sup_norm(lambda z: sum(z ** k for k in range(n)))
    assert res.refined == pytest.approx(n)
    assert min(res.theta, 2 * np.pi - res.theta) < 1e-6
    r = 0.8
    g = MalmquistRep(Sigma.one_point(r, 1), [1.0])
    assert sup_norm(g).refined == pytest.approx(np.sqrt((1 + r) / (1 - r)), rel=1e-12)


def test_ratio_at_origin_bounded_by_one():
    rng = np.random.default_rng(8)
    for X in (HARDY, SpaceSpec(1, -0.5), SpaceSpec(float("inf"), -1)):
        f = TaylorSeries(gauss(rng, 6))
        ratio = interpolant_norm_ratio(f, Sigma.one_point(0.0, 1), X)
        assert ratio == pytest.approx(abs(f.coeffs[0]) / weighted_norm(f, X))
        assert ratio <= 1 + 1e-12


def test_ratio_below_kernel_chain():
    rng = np.random.default_rng(9)
    n, r = 6, 0.8
    for _ in range(10):
        sigma = random_sigma(rng, n, r)
        f = TaylorSeries(gauss(rng, 20))
        assert interpolant_norm_ratio(f, sigma, HARDY) <= np.sqrt(2) * np.sqrt(2 * n / (1 - r))


def test_phi_idempotent():
    rng = np.random.default_rng(10)
    sigma = Sigma(((0.6, 2), (-0.4 + 0.2j, 2)))
    g = phi(TaylorSeries(gauss(rng, 15)), sigma)
    again = phi(g.taylor_for_tol(1e-12), sigma)
    assert np.allclose(again.coords.astype(complex), g.coords.astype(complex), atol=1e-10)


def test_difference_divisible_by_node_polynomial():
    rng = np.random.default_rng(11)
    sigma = Sigma(((0.3, 2), (-0.4j, 1), (0.2 + 0.2j, 1)))
    f = TaylorSeries(gauss(rng, 12))
    g = phi(f, sigma).taylor_for_tol(1e-15)
    d = (f - g).coeffs
    _, rem = np.polydiv(d[::-1], np.poly(sigma.expanded))
    assert np.max(np.abs(rem)) <= 1e-8 * weighted_norm(f, HARDY)


@pytest.mark.parametrize("N", [0, 1, 2])
def test_pointwise_dual_bound(N):
    rng = np.random.default_rng(20 + N)
    sigma = Sigma(((0.5, 2), (0.3j, 1)))
    X = SpaceSpec(2, -N)
    for _ in range(10):
        f = TaylorSeries(gauss(rng, 10))
        zeta = 0.9 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        k = project_kernel(sigma, zeta).taylor_for_tol(1e-15)
        lhs = abs(phi(f, sigma)(zeta))
        assert lhs <= weighted_norm(f, X) * dual_norm(np.conj(k.coeffs), X) * (1 + 1e-10)
