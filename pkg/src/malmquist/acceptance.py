"""The acceptance suite: ten numbered criteria with fixed random generators.

Each criterion returns a :class:`CriterionResult`; :func:`run_suite` runs all
of them from one master seed. ``quick`` shrinks sample counts (not
tolerances) so the whole suite fits in about half a minute.
"""
from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np

from malmquist.bernstein import check_dyakonov, check_higher, random_model_element
from malmquist.blaschke import MalmquistBasis, Sigma, random_sigma
from malmquist.bounds import (lower_lp, lower_onepoint_hilbert, onepoint_value_at_one,
                              onepoint_witness, upper_hilbert)
from malmquist.errors import ConditioningWarning
from malmquist.interpolator import hermite_trace, phi, trace_match
from malmquist.oracle import interp_constant_estimate, min_norm, pick_min_norm, von_neumann_check
from malmquist.spaces import SpaceSpec, TaylorSeries, binomial_norm, weighted_norm


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None

    def line(self, timing: bool = False) -> str:
        tag = "PASS" if self.passed else "FAIL"
        t = f"  [{self.seconds:.1f}s]" if timing else ""
        return f"criterion {self.number:2d} {tag}  {self.name}: {self.detail}{t}"


def _complex_gauss(rng: np.random.Generator, size: int) -> np.ndarray:
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)


def _rng(seed: int, number: int) -> np.random.Generator:
    return np.random.default_rng([seed, number])


def criterion_1(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Trace of phi(f) matches f on sigma."""
    rng = _rng(seed, 1)
    trials = 25 if quick else 100
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 11))
        sigma = random_sigma(rng, n, float(rng.uniform(0.0, 0.9)), multiplicities=bool(rng.integers(2)))
        f = TaylorSeries(_complex_gauss(rng, int(rng.integers(0, 51)) + 1))
        worst = max(worst, trace_match(f, phi(f, sigma), sigma, tol=1e-8).defect)
    return CriterionResult(1, "trace correctness", worst <= 1e-8,
                           f"{trials} instances, max defect {worst:.2e} <= 1e-8", limit=20.0)


def criterion_2(seed: int = 0, quick: bool = False) -> CriterionResult:
    """lower certificate <= oracle <= upper chain on one-point sets."""
    ns = (1, 2, 4) if quick else (1, 2, 4, 8)
    lams = (0.0, 0.5, 0.9, 0.6j)
    bad = 0
    cases = 0
    margin = math.inf
    for alpha in (0.0, -0.5, -1.0):
        N = int(round(1 - 2 * alpha))
        X = SpaceSpec(2.0, alpha)
        for n in ns:
            for lam in lams:
                est = interp_constant_estimate(Sigma.one_point(lam, n), X, seed=seed).value
                lo1 = lower_onepoint_hilbert(n, lam, N).value
                lo2 = lower_lp(n, 2.0, alpha).value
                up = upper_hilbert(n, abs(lam), alpha)
                cases += 1
                if not (lo1 <= est + 1e-6 and lo2 <= est + 1e-6 and est <= up + 1e-6):
                    bad += 1
                margin = min(margin, est / max(lo1, lo2), up / est)
    return CriterionResult(2, "Hilbert sandwich", bad == 0,
                           f"{cases - bad}/{cases} cases ordered, min ratio gap {margin:.3f}", limit=180.0)


def criterion_3(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Fitted growth exponent of the oracle estimate."""
    ns = (2, 4, 8) if quick else (2, 4, 8, 16)
    parts = []
    ok = True
    for alpha in (0.0, -0.5, -1.0):
        X = SpaceSpec(2.0, alpha)
        x, y = [], []
        for n in ns:
            for r in (0.0, 0.5, 0.9):
                est = interp_constant_estimate(Sigma.one_point(r, n), X, seed=seed).value
                x.append(math.log(n / (1.0 - r)))
                y.append(math.log(est))
        slope = float(np.polyfit(x, y, 1)[0])
        target = (1.0 - 2.0 * alpha) / 2.0
        ok &= abs(slope - target) <= 0.35
        parts.append(f"{slope:.3f} vs {target:g}")
    return CriterionResult(3, "growth exponent", ok, "slopes " + ", ".join(parts), limit=600.0)


def criterion_4(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Bernstein inequalities on random model-space elements."""
    rng = _rng(seed, 4)
    trials = 50 if quick else 200
    viol = 0
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 11))
        sigma = random_sigma(rng, n, float(rng.uniform(0.0, 0.95)), multiplicities=bool(rng.integers(2)))
        g = random_model_element(sigma, rng)
        reps = [check_dyakonov(sigma, g)] + [check_higher(sigma, g, k) for k in (1, 2, 3)]
        viol += sum(not rep.passed for rep in reps)
        worst = max(worst, max(rep.ratio / rep.bound for rep in reps))
    return CriterionResult(4, "Bernstein suite", viol == 0,
                           f"{trials} pairs x 4 checks, {viol} violations, max ratio/bound {worst:.3f}", limit=60.0)


def criterion_5(seed: int = 0, quick: bool = False) -> CriterionResult:
    """sum_k |e_k(zeta)|^2 <= 2n/(1-r)."""
    rng = _rng(seed, 5)
    trials = 50 if quick else 200
    viol = 0
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 11))
        sigma = random_sigma(rng, n, float(rng.uniform(0.0, 0.95)), multiplicities=bool(rng.integers(2)))
        zeta = math.sqrt(rng.uniform(0.0, 0.999 ** 2)) * np.exp(2j * np.pi * rng.random())
        s = float(np.sum(np.abs(MalmquistBasis(sigma)(np.array([zeta]))) ** 2))
        bound = 2.0 * sigma.n / (1.0 - sigma.r)
        viol += s > bound
        worst = max(worst, s / bound)
    return CriterionResult(5, "projection bound", viol == 0,
                           f"{trials} pairs, {viol} violations, max ratio {worst:.3f}")


def criterion_6(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Compressed-shift and Pick routes agree on distinct nodes."""
    rng = _rng(seed, 6)
    trials = 20 if quick else 50
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        sigma = random_sigma(rng, n, float(rng.uniform(0.0, 0.9)))
        w = _complex_gauss(rng, n)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConditioningWarning)
            a = min_norm(sigma, w)
        b = pick_min_norm(sigma, w)
        worst = max(worst, abs(a - b) / (1.0 + a))
    return CriterionResult(6, "oracle cross-validation", worst <= 1e-7,
                           f"{trials} instances, max |delta|/(1+value) {worst:.2e}")


def criterion_7(seed: int = 0, quick: bool = False) -> CriterionResult:
    """von Neumann inequality on sampled contractions; model operator attains."""
    rng = _rng(seed, 7)
    sigmas = 4 if quick else 10
    trials = 40 if quick else 100
    viol = 0
    gap = 0.0
    for i in range(sigmas):
        n = int(rng.integers(1, 7))
        sigma = random_sigma(rng, n, float(rng.uniform(0.0, 0.9)), multiplicities=bool(rng.integers(2)))
        f = TaylorSeries(_complex_gauss(rng, int(rng.integers(1, 11))))
        rep = von_neumann_check(sigma, f, trials=trials, seed=int(rng.integers(1 << 31)))
        viol += rep.violations
        gap = max(gap, rep.model_gap)
    ok = viol == 0 and gap <= 1e-8
    return CriterionResult(7, "von Neumann", ok,
                           f"{sigmas} sigma x {trials} contractions, {viol} violations, model gap {gap:.1e}")


def criterion_8(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Aronszajn-deBranges: ||f^N||^2 in the binomial norm <= ||f||^(2N)."""
    rng = _rng(seed, 8)
    trials = 30 if quick else 100
    worst = -math.inf
    for _ in range(trials):
        f = TaylorSeries(_complex_gauss(rng, int(rng.integers(1, 22))))
        f = f * (float(rng.uniform(0.1, 1.0)) / weighted_norm(f, SpaceSpec(2.0, 0.0)))
        h2 = weighted_norm(f, SpaceSpec(2.0, 0.0)) ** 2
        for N in (1, 2, 3):
            worst = max(worst, binomial_norm(f ** N, N) ** 2 - h2**N)
    return CriterionResult(8, "Aronszajn-deBranges", worst <= 1e-9,
                           f"{trials} f x N in 1..3, max excess {worst:.2e}")


def criterion_9(seed: int = 0, quick: bool = False) -> CriterionResult:
    """lp certificate <= oracle at the origin."""
    parts = []
    ok = True
    for alpha in (0.0, -0.5, -1.0):
        for n in (2, 4, 8):
            lo = lower_lp(n, 2.0, alpha).value
            est = interp_constant_estimate(Sigma.one_point(0.0, n), SpaceSpec(2.0, alpha), seed=seed).value
            ok &= lo <= est + 1e-6
            parts.append(est / lo)
    return CriterionResult(9, "lp certificate vs oracle", ok,
                           f"9 cases, min oracle/certificate {min(parts):.3f}")


def criterion_10(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Witness positivity and the closed form of psi(1)."""
    neg = 0
    worst = 0.0
    for N in (1, 2, 3):
        for n in range(2, 17):
            for r in (0.0, 0.5, 0.9):
                c = onepoint_witness(n, r, N).coeffs
                neg += int(np.any(c.real < 0) or np.any(c.imag != 0))
                ref = onepoint_value_at_one(n, r, N)
                worst = max(worst, abs(float(c.real.sum()) - ref) / ref)
    return CriterionResult(10, "witness positivity and value", neg == 0 and worst <= 1e-10,
                           f"135 witnesses, {neg} with negative coefficients, max rel error {worst:.1e}")


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_criterion(number: int, seed: int = 0, quick: bool = False) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[number - 1](seed, quick)
    res.seconds = time.perf_counter() - t0
    if res.limit is not None and not quick and res.seconds > res.limit:
        res.passed = False
        res.detail += f"; runtime {res.seconds:.1f}s over {res.limit:g}s"
    return res


def run_suite(seed: int = 0, quick: bool = False) -> list[CriterionResult]:
    return [run_criterion(k, seed, quick) for k in range(1, len(CRITERIA) + 1)]
