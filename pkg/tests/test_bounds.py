import math

import numpy as np
import pytest

from malmquist.bounds import (
    A_hilbert, A_one, BoundReport, K_constant, bound_report, chain_infinity, expected_exponent,
    fejer_kernel_coeffs, fejer_l1, fejer_m, fejer_quotient_lower, hilbert_N, hockey_stick,
    lower_certified, lower_lp, lower_onepoint_hilbert, onepoint_pullback_norm,
    onepoint_value_at_one, onepoint_witness, partial_binomial_sum, psi_one, upper_hilbert,
    upper_infinity, upper_one, upper_p,
)
from malmquist.errors import DomainError
from malmquist.spaces import BERGMAN, HARDY, SpaceSpec, TaylorSeries

INF = float("inf")


# ---------------------------------------------------------------- constants and chains

def test_K_constant_values():
    assert [K_constant(N) for N in range(5)] == [1.0, 2.0, 4.5, 27.0, 256.0]
    with pytest.raises(DomainError):
        K_constant(-1)


def test_chain_constants():
    assert A_hilbert(0) == pytest.approx(2.0)
    assert A_hilbert(1) == pytest.approx(2 * math.sqrt(2) * math.sqrt(17))
    assert A_one(0) == pytest.approx(2 * math.sqrt(2))
    assert A_one(1) == pytest.approx(8 * math.sqrt(2) * 2)


def test_chain_infinity_values():
    # N = 0, x = 2: pi (7 + 8 + 1) sqrt(4)
    assert chain_infinity(0, 2.0) == pytest.approx(32 * math.pi)
    assert chain_infinity(1, 1.0) == pytest.approx(355.4306350526693)


def test_upper_chains_frozen():
    assert upper_hilbert(4, 0.5, -0.5) == pytest.approx(38.63578244426269)
    assert upper_hilbert(4, 0.5, -0.25) == pytest.approx(14.783673092377636)
    assert upper_one(3, 0.0, 0.0) == pytest.approx(2 * math.sqrt(2) * math.sqrt(3))
    assert upper_infinity(2, 0.0, 0.0) == pytest.approx(chain_infinity(0, 2.0))


def test_upper_theta_interpolates_between_integers():
    lo, mid, hi = (upper_hilbert(5, 0.3, a) for a in (0.0, -0.25, -0.5))
    assert lo < mid < hi
    assert mid == pytest.approx(math.sqrt(lo * hi), rel=1e-12)


def test_upper_grows_in_n_and_r():
    for X in (HARDY, BERGMAN, SpaceSpec(1, 0), SpaceSpec(INF, -1), SpaceSpec(3, -0.5)):
        assert upper_p(4, 0.5, X)[0] < upper_p(8, 0.5, X)[0] < upper_p(8, 0.9, X)[0]


@pytest.mark.parametrize("X,value,route", [
    (SpaceSpec(1.5, -0.5), 45.71441142770715, "interp(l1,l2;theta=0.666667)"),
    (SpaceSpec(4, -0.5), 489.80961975137984, "interp(l2,linf;theta=0.5)"),
    (SpaceSpec(INF, -1), 52904.420286452114, "sup-chain"),
    (SpaceSpec(2, -0.5), 38.63578244426269, "hilbert-chain"),
    (SpaceSpec(1, -0.5), None, "l1-chain"),
])
def test_upper_p_routes(X, value, route):
    v, r = upper_p(4, 0.5, X)
    assert r == route
    if value is not None:
        assert v == pytest.approx(value)


def test_upper_domain_errors():
    with pytest.raises(DomainError):
        upper_hilbert(0, 0.5, 0)
    with pytest.raises(DomainError):
        upper_hilbert(3, 1.0, 0)
    with pytest.raises(DomainError):
        upper_one(3, 0.5, 0.5)


def test_expected_exponent():
    assert expected_exponent(HARDY) == 0.5
    assert expected_exponent(BERGMAN) == 1.0
    assert expected_exponent(SpaceSpec(INF, 0)) == 1.5
    assert expected_exponent(SpaceSpec(4, -1)) == 2.0


# ---------------------------------------------------------------- Fejer kernel

def test_fejer_m():
    assert [fejer_m(n) for n in (1, 2, 3, 4, 7, 8)] == [1, 1, 2, 2, 4, 4]
    with pytest.raises(DomainError):
        fejer_m(0)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 11, 64, 255])
def test_fejer_clamp(n):
    j, fh = fejer_kernel_coeffs(n)
    assert np.all(fh[j >= n] == 0)
    assert np.all(fh >= 0)
    assert fh[j == 0][0] == pytest.approx(1 + 1 - fejer_m(n) / (fejer_m(n) + 1.0))
    _, raw = fejer_kernel_coeffs(n, clamp=False)
    assert raw[j == n][0] > 0


def test_fejer_l1_below_two():
    vals = [fejer_l1(n) for n in range(1, 257)]
    assert max(vals) < 2.0
    assert max(vals) == pytest.approx(1.878417713285519, rel=1e-9)


def test_fejer_quotient_lower_examples():
    # constant 1: quotient norm 1, certificate 1.5 / 2 at n = 1
    assert fejer_quotient_lower(TaylorSeries([1.0]), 1) == pytest.approx(0.75)
    # high coefficients are invisible modulo z^n
    g = TaylorSeries([1.0, 0.0, 0.0, 0.0, 100.0])
    assert fejer_quotient_lower(g, 4) == pytest.approx(fejer_quotient_lower(TaylorSeries([1.0]), 4))
    # never exceeds the sup norm of any representative
    g = TaylorSeries([1.0, 0.5j, -0.25])
    assert fejer_quotient_lower(g, 3) <= 1.75


# ---------------------------------------------------------------- witnesses

@pytest.mark.parametrize("N", [1, 2, 3, 5])
@pytest.mark.parametrize("m", [0, 1, 4, 10])
def test_hockey_stick(N, m):
    assert partial_binomial_sum(N, m) == hockey_stick(N, m)


def test_psi_one():
    assert np.allclose(psi_one(4, 0.5).coeffs, [1, 1.5, 1.5, 1.5, 0.5])
    assert np.allclose(psi_one(1, 0.0).coeffs, [1, 0])


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 5, 16])
@pytest.mark.parametrize("r", [0.0, 0.5, 0.9])
def test_witness_positive_with_closed_form_value(N, n, r):
    c = onepoint_witness(n, r, N).coeffs
    assert c.size == n * N + 1
    assert np.all(c.real >= 0) and np.all(c.imag == 0)
    ref = onepoint_value_at_one(n, r, N)
    assert c.real.sum() == pytest.approx(ref, rel=1e-12)


def test_witness_domain():
    with pytest.raises(DomainError):
        onepoint_witness(3, 0.5, 0)
    with pytest.raises(DomainError):
        onepoint_witness(3, 1.0, 1)


def test_pullback_norm_hardy_is_exact():
    # N = 1: Psi = n^(-1/2) sum e_k has H^2 norm exactly 1
    for n, r in ((1, 0.0), (4, 0.5), (7, 0.9)):
        assert onepoint_pullback_norm(n, r, 1) == pytest.approx(1.0, abs=1e-11)


@pytest.mark.parametrize("n,lam,N,value,norm", [
    (4, 0.5, 1, 1.8282758524338154, 1.0),
    (4, 0.5, 2, 3.254179364898016, 0.8877472827867389),
    (8, 0.9, 3, 169.41684809651952, 0.5639469826463572),
    (1, 0.0, 1, 0.75, 1.0),
    (3, 0.6j, 2, 3.866534211093387, 0.8944271909999157),
])
def test_onepoint_certificate_frozen(n, lam, N, value, norm):
    c = lower_onepoint_hilbert(n, lam, N)
    assert c.value == pytest.approx(value, rel=1e-9)
    assert c.witness_norm == pytest.approx(norm, rel=1e-9)
    assert c.note.startswith(f"onepoint(N={N},")


def test_onepoint_certificate_below_upper():
    for N, alpha in ((1, 0.0), (2, -0.5), (3, -1.0)):
        for n in (1, 3, 8):
            for r in (0.0, 0.5, 0.9):
                assert lower_onepoint_hilbert(n, r, N).value <= upper_hilbert(n, r, alpha)


@pytest.mark.parametrize("n,p,alpha,value", [
    (1, 2, 0, 0.5), (2, 2, 0, 0.7071067811865476), (5, 2, 0, 0.8944271909999159),
    (8, 2, 0, 0.8838834764831844), (5, 1, -1, 1.0), (8, 1, -1, 0.9375),
    (2, INF, 0, 1.0), (8, INF, 0, 2.5),
])
def test_lower_lp_frozen(n, p, alpha, value):
    c = lower_lp(n, p, alpha)
    assert c.value == pytest.approx(value)
    assert c.witness_norm == 1.0


def test_hilbert_N():
    assert hilbert_N(0.0) == 1
    assert hilbert_N(-0.5) == 2
    assert hilbert_N(-0.25) is None


# ---------------------------------------------------------------- report

def test_lower_certified_picks_best():
    c = lower_certified(8, 0.9, BERGMAN)
    assert c.note.startswith("onepoint")
    assert lower_certified(8, 0.9, SpaceSpec(3, 0)).note.startswith("lp-witness")


def test_bound_report_consistent_with_oracle():
    rep = bound_report(4, 0.5, HARDY, oracle=True)
    assert rep.oracle_estimate == pytest.approx(2.414610530853506, rel=1e-8)
    assert rep.consistent
    row = rep.as_row()
    assert row["lower"] <= row["oracle"] <= row["upper"]
    assert row["upper_route"] == "hilbert-chain"
    assert "oracle_route" in rep.extra


def test_bound_report_inconsistency_flagged():
    rep = BoundReport(2, 0.0, HARDY, 5.0, "x", 1.0, "y")
    assert not rep.consistent


# ---------------------------------------------------------------- closed-form examples

def test_small_closed_forms():
    assert upper_hilbert(1, 0.0, 0.0) == pytest.approx(2.0)
    assert upper_hilbert(1, 0.0, -1.0) == pytest.approx(2 * math.sqrt(2) * math.sqrt(17))
    assert upper_p(1, 0.0, SpaceSpec(1, 0))[0] == pytest.approx(2 * math.sqrt(2))
    assert upper_p(7, 0.3, HARDY)[0] == upper_hilbert(7, 0.3, 0.0)
    assert lower_lp(4, 1, -1).value == pytest.approx(0.75)
    assert lower_lp(2, 2, 0).value == pytest.approx(2 ** -0.5)


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_fejer_constant_function(n):
    m = fejer_m(n)
    assert fejer_quotient_lower(TaylorSeries([1.0]), n) == pytest.approx(0.5 * (1 + 1 / (m + 1)))


@pytest.mark.parametrize("n", [1, 3, 6])
def test_fejer_ignores_multiples_of_zn(n):
    g = TaylorSeries(np.concatenate([np.zeros(n), [1.0, -2j, 0.5]]))
    assert fejer_quotient_lower(g, n) == 0.0


def test_fejer_positive_coefficients_dominate_partial_sum():
    for n in (2, 5, 9):
        psi = onepoint_witness(n, 0.5, 2)
        m = fejer_m(n)
        assert fejer_quotient_lower(psi, n) >= 0.5 * psi.coeffs[: min(m, n - 1) + 1].real.sum() - 1e-12


def test_hockey_stick_full_range():
    for N in range(1, 7):
        for m in range(65):
            assert partial_binomial_sum(N, m) == hockey_stick(N, m)
    assert hockey_stick(2, 3) == 10


@pytest.mark.parametrize("n", [1, 4, 8])
def test_onepoint_origin_hardy(n):
    # N = 1, lam = 0: psi = n^(-1/2) (1 + ... + z^(n-1)), norm 1
    c = lower_onepoint_hilbert(n, 0.0, 1)
    assert np.allclose(c.witness.coeffs[:n], n ** -0.5)
    assert c.witness_norm == pytest.approx(1.0, abs=1e-11)
    m = min(fejer_m(n), n - 1)
    assert c.value >= 0.5 * n ** -0.5 * (m + 1) - 1e-12


@pytest.mark.parametrize("X", [HARDY, BERGMAN, SpaceSpec(2, -1)])
def test_lower_monotone_in_r(X):
    for n in (2, 4, 8):
        vals = [lower_certified(n, r, X).value for r in (0.0, 0.5, 0.9)]
        assert vals == sorted(vals)


def test_bound_report_single_point_at_origin():
    rep = bound_report(1, 0.0, HARDY, oracle=True)
    assert rep.oracle_estimate == pytest.approx(1.0)
    assert rep.lower_certified <= 1.0 <= rep.upper_certified


def test_two_point_exponent_bergman():
    a = bound_report(4, 0.9, BERGMAN, oracle=True).oracle_estimate
    b = bound_report(8, 0.9, BERGMAN, oracle=True).oracle_estimate
    assert 0.6 <= math.log(b / a) / math.log(2) <= 1.4
