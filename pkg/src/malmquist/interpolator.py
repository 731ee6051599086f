"""The linear interpolant Phi(f) = sum_k <f, e_k> e_k and its verification.

Phi maps a polynomial f to the element of the model space K_B whose Hermite
data on sigma agree with those of f. Its sup norm on the circle, compared with
||f||_X, is the quantity bounded by the upper-bound chains in
:mod:`malmquist.bounds`.
"""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
from scipy.signal import lfilter

from malmquist.blaschke import MalmquistBasis, MalmquistRep, Sigma
from malmquist.spaces import SpaceSpec, TaylorSeries, weighted_norm


def phi(f: TaylorSeries, sigma: Sigma) -> MalmquistRep:
    """Coordinates <f, e_k>; exact because f is a polynomial.

    The pairing is accumulated in long double and the coordinates are kept at
    that precision (see :class:`MalmquistRep`).
    """
    T = MalmquistBasis(sigma).taylor(len(f) - 1, extended=True)
    return MalmquistRep(sigma, np.conj(T) @ f.coeffs.astype(np.clongdouble))


def shifted_coeffs(coeffs, a: complex, m: int) -> np.ndarray:
    """Taylor coefficients of a polynomial about ``a``: f^(j)(a) / j!, j < m.

    Repeated synthetic division by (z - a).
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    out = np.zeros(m, dtype=np.complex128)
    for j in range(m):
        if c.size == 0:
            break
        y = lfilter([1.0], [1.0, -a], c[::-1])
        out[j] = y[-1]
        c = y[:-1][::-1]
    return out


def hermite_trace(f: TaylorSeries, sigma: Sigma) -> np.ndarray:
    """Vector of f^(j)(lam) / j!, j < mult(lam), in sigma's expanded order."""
    return np.concatenate([shifted_coeffs(f.coeffs, lam, m) for lam, m in sigma.points])


class TraceCheck(NamedTuple):
    matched: bool
    defect: float


def trace_match(f: TaylorSeries, g, sigma: Sigma, tol: float = 1e-8) -> TraceCheck:
    """Compare derivatives 0..m-1 of f and g at every point of multiplicity m.

    ``g`` may be a :class:`MalmquistRep` (differentiated through its rational
    form) or a :class:`TaylorSeries`.
    """
    defect = 0.0
    for lam, m in sigma.points:
        lf = shifted_coeffs(f.coeffs, lam, m)
        if isinstance(g, MalmquistRep):
            lg = g.local_taylor(lam, m)
        else:
            lg = shifted_coeffs(g.coeffs, lam, m)
        defect = max(defect, float(np.max(np.abs(lf - lg))))
    return TraceCheck(defect <= tol, defect)


class SupNorm(NamedTuple):
    grid: float       # max over the grid; always a lower bound for the sup
    refined: float    # after golden-section search around the best node
    theta: float      # argument where ``refined`` was found


def default_grid(n: int = 1, r: float = 0.0) -> int:
    return max(4096, 64 * n * math.ceil(1.0 / (1.0 - r)))


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(h: Callable[[float], float], a: float, b: float, steps: int) -> tuple[float, float]:
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    hc, hd = h(c), h(d)
    for _ in range(steps):
        if hc > hd:
            b, d, hd = d, c, hc
            c = b - _INVPHI * (b - a)
            hc = h(c)
        else:
            a, c, hc = c, d, hd
            d = a + _INVPHI * (b - a)
            hd = h(d)
    return (hc, c) if hc > hd else (hd, d)


def sup_norm(g: Callable, samples: int | None = None, refine_steps: int = 40) -> SupNorm:
    """Estimate max |g| on the unit circle.

    ``g`` must accept arrays of complex points. The grid defaults to
    max(4096, 64 n ceil(1/(1-r))) nodes for a :class:`MalmquistRep`.
    """
    if samples is None:
        if isinstance(g, MalmquistRep):
            samples = default_grid(g.sigma.n, g.sigma.r)
        else:
            samples = 4096
    theta = 2.0 * np.pi * np.arange(samples) / samples
    vals = np.abs(g(np.exp(1j * theta)))
    i = int(np.argmax(vals))
    grid = float(vals[i])
    h = lambda t: float(np.abs(g(np.exp(1j * np.array([t]))))[0])
    step = 2.0 * np.pi / samples
    best, arg = grid, float(theta[i])
    for a, b in ((theta[i] - step, theta[i]), (theta[i], theta[i] + step)):
        v, t = _golden_max(h, a, b, refine_steps)
        if v > best:
            best, arg = v, t
    return SupNorm(grid, best, arg % (2.0 * np.pi))


def interpolant_norm_ratio(f: TaylorSeries, sigma: Sigma, X: SpaceSpec) -> float:
    """||Phi(f)||_inf / ||f||_X for one sample f."""
    nf = weighted_norm(f, X)
    if nf == 0:
        raise ValueError("f must be nonzero")
    return sup_norm(phi(f, sigma)).refined / nf
