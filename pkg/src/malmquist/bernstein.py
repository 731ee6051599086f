"""Numerical checks of Bernstein-type inequalities on model spaces.

For g in K_B with B of degree n and r = max |lam|:

    ||g'||_{H^2}     <= 3 n / (1 - r) ||g||_{H^2}
    ||g^(k)||_{H^2}  <= k! 4^k (n / (1 - r))^k ||g||_{H^2}

H^2 norms of derivatives are computed from Taylor coefficients truncated at a
degree where a Cauchy-estimate majorant certifies the remainder.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from malmquist.blaschke import MalmquistBasis, MalmquistRep, Sigma, random_sigma


def _log_falling_sq(k: int):
    def lw(j: np.ndarray) -> np.ndarray:
        out = np.full(j.shape, -np.inf)
        ok = j >= k
        out[ok] = 2.0 * (gammaln(j[ok] + 1.0) - gammaln(j[ok] - k + 1.0))
        return out
    return lw


def _falling(j: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros(j.shape)
    ok = j >= k
    out[ok] = np.exp(gammaln(j[ok] + 1.0) - gammaln(j[ok] - k + 1.0))
    return out


def h2_derivative_norm(g: MalmquistRep, k: int, tol: float = 1e-10) -> float:
    """||g^(k)||_{H^2}, with certified truncation tail below ``tol``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return g.norm()
    D = g.basis.degree_for(tol, g.coords, _log_falling_sq(k))
    c = g.taylor(D).coeffs
    return float(np.linalg.norm(c * _falling(np.arange(c.size), k)))


def derivative_operator_norm(sigma: Sigma, k: int, tol: float = 1e-10) -> tuple[float, MalmquistRep]:
    """max ||g^(k)|| / ||g|| over K_B, and a maximiser."""
    basis = MalmquistBasis(sigma)
    D = basis.degree_for(tol, None, _log_falling_sq(k))
    A = basis.taylor(D) * _falling(np.arange(D + 1), k)
    G = np.conj(A) @ A.T
    w, V = np.linalg.eigh(G)
    # ||sum c_k e_k^(k)||^2 = c^H G c, so the top eigenvector is the coordinate vector
    return float(math.sqrt(max(w[-1], 0.0))), MalmquistRep(sigma, V[:, -1])


@dataclass(frozen=True)
class BernsteinReport:
    ratio: float
    bound: float
    passed: bool

    @property
    def margin(self) -> float:
        return self.bound - self.ratio


def dyakonov_bound(n: int, r: float) -> float:
    return 3.0 * n / (1.0 - r)


def higher_bound(n: int, r: float, k: int) -> float:
    return math.factorial(k) * 4.0**k * (n / (1.0 - r)) ** k


def check_dyakonov(sigma: Sigma, g: MalmquistRep) -> BernsteinReport:
    """First-derivative inequality with constant 3 n / (1 - r)."""
    ng = g.norm()
    if ng == 0:
        raise ValueError("g must be nonzero")
    ratio = h2_derivative_norm(g, 1) / ng
    bound = dyakonov_bound(sigma.n, sigma.r)
    return BernsteinReport(ratio, bound, ratio <= bound)


def check_higher(sigma: Sigma, g: MalmquistRep, k: int) -> BernsteinReport:
    """k-th derivative inequality with constant k! 4^k (n / (1 - r))^k."""
    ng = g.norm()
    if ng == 0:
        raise ValueError("g must be nonzero")
    ratio = h2_derivative_norm(g, k) / ng
    bound = higher_bound(sigma.n, sigma.r, k)
    return BernsteinReport(ratio, bound, ratio <= bound)


def random_model_element(sigma: Sigma, rng: np.random.Generator) -> MalmquistRep:
    """Complex-Gaussian coordinates normalised to ||g|| = 1."""
    c = rng.standard_normal(sigma.n) + 1j * rng.standard_normal(sigma.n)
    return MalmquistRep(sigma, c / np.linalg.norm(c))


def bernstein_trials(n: int, r: float, trials: int, k: int = 1, seed: int = 0) -> list[dict]:
    """Monte-Carlo rows (trial, ratio, bound, margin) over random sigma and g.

    Each trial draws n distinct points with max modulus r from its own seed,
    spawned from ``seed``; k = 1 uses the 3 n / (1 - r) constant.
    """
    rows = []
    for t, ss in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(ss)
        sigma = random_sigma(rng, n, r)
        g = random_model_element(sigma, rng)
        rep = check_dyakonov(sigma, g) if k == 1 else check_higher(sigma, g, k)
        rows.append({"trial": t, "ratio": rep.ratio, "bound": rep.bound, "margin": rep.margin})
    return rows


def sharpening_exponent(k: int, ns=(4, 8, 16), rs=(0.0, 0.5, 0.8)) -> float:
    """Fitted exponent of max ||g^(k)||/||g|| against n/(1-r) on one-point sigma.

    Warns (does not raise) when the exponent falls below 0.8 k. Sizes with
    n <= k are skipped: at r = 0 the k-th derivative of K_B vanishes.
    """
    x, y = [], []
    for n in (n for n in ns if n > k):
        for r in rs:
            val, _ = derivative_operator_norm(Sigma.one_point(r, n), k)
            x.append(math.log(n / (1.0 - r)))
            y.append(math.log(val))
    slope = float(np.polyfit(x, y, 1)[0])
    if slope < 0.8 * k:
        warnings.warn(f"derivative growth exponent {slope:.3f} below {0.8 * k:.2f}", RuntimeWarning)
    return slope
