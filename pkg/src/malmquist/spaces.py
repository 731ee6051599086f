"""Weighted coefficient spaces l_a^p(alpha) of analytic functions on the disc.

A function f = sum_k f_k z^k is carried by its Taylor coefficients
(:class:`TaylorSeries`). The space l_a^p(alpha), alpha <= 0, is normed by

    ||f||^p = sum_k |f_k|^p (k + 1)^(p * alpha),

with the sup norm for p = inf. For p = 2 the spaces are reproducing kernel
Hilbert spaces; alpha = 0 is the Hardy space H^2 and alpha = -1/2 the Bergman
space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import binom

from malmquist.errors import DomainError, UnsupportedSpaceError


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """Finite Taylor coefficient vector f_0, ..., f_D (complex128, read-only)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("Taylor coefficients must be finite")
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "TaylorSeries":
        a = np.zeros(k + 1, dtype=np.complex128)
        a[k] = c
        return cls(a)

    @classmethod
    def zero(cls) -> "TaylorSeries":
        return cls(np.zeros(1))

    def __len__(self) -> int:
        return self.coeffs.size

    def degree(self) -> int:
        """Largest index with a nonzero coefficient; -1 for the zero series."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -1

    def is_zero(self) -> bool:
        return self.degree() < 0

    def __call__(self, z):
        return npoly.polyval(z, self.coeffs)

    def padded(self, length: int) -> np.ndarray:
        """Coefficient copy cut or zero-padded to ``length`` entries."""
        out = np.zeros(length, dtype=np.complex128)
        m = min(length, self.coeffs.size)
        out[:m] = self.coeffs[:m]
        return out

    def truncate(self, degree: int) -> "TaylorSeries":
        return TaylorSeries(self.padded(degree + 1))

    def derivative(self, k: int = 1) -> "TaylorSeries":
        if k == 0:
            return self
        if self.coeffs.size <= k:
            return TaylorSeries.zero()
        return TaylorSeries(npoly.polyder(self.coeffs, k))

    def __add__(self, other):
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        L = max(len(self), len(other))
        return TaylorSeries(self.padded(L) + other.padded(L))

    def __sub__(self, other):
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        return self + (-1.0) * other

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return TaylorSeries(np.convolve(self.coeffs, other.coeffs))
        if np.isscalar(other):
            return TaylorSeries(self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, N: int) -> "TaylorSeries":
        if N < 0:
            raise ValueError("only nonnegative integer powers")
        out = np.ones(1, dtype=np.complex128)
        for _ in range(N):
            out = np.convolve(out, self.coeffs)
        return TaylorSeries(out)

    def to_json(self) -> list:
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "TaylorSeries":
        """Accepts a list of [re, im] pairs or of plain real numbers."""
        vals = []
        for item in data:
            if isinstance(item, (list, tuple)):
                if len(item) != 2:
                    raise ValueError(f"expected [re, im] pair, got {item!r}")
                vals.append(complex(float(item[0]), float(item[1])))
            else:
                vals.append(complex(float(item)))
        if not vals:
            raise ValueError("empty coefficient list")
        return cls(np.array(vals))

    def __repr__(self):
        return f"TaylorSeries(degree={self.degree()}, coeffs={self.coeffs!r})"


@dataclass(frozen=True)
class SpaceSpec:
    """The space l_a^p(alpha): 1 <= p <= inf, alpha <= 0."""

    p: float
    alpha: float

    def __post_init__(self):
        p, a = float(self.p), float(self.alpha)
        if math.isnan(p) or p < 1:
            raise DomainError(f"p must lie in [1, inf], got {self.p}")
        if math.isnan(a) or a > 0:
            raise DomainError(f"alpha must be <= 0, got {self.alpha}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "alpha", a)

    @classmethod
    def parse(cls, text: str) -> "SpaceSpec":
        """Parse ``"p,alpha"``, e.g. ``"2,-0.5"`` or ``"inf,0"``."""
        parts = [s.strip() for s in text.replace("−", "-").split(",")]
        if len(parts) != 2:
            raise ValueError(f"space must be 'p,alpha', got {text!r}")
        return cls(float(parts[0]), float(parts[1]))

    @property
    def is_hilbert(self) -> bool:
        return self.p == 2.0

    @property
    def dual_exponent(self) -> float:
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def beta(self) -> float:
        if not self.is_hilbert:
            raise UnsupportedSpaceError("the Bergman exponent is defined for p = 2 only")
        return alpha_to_beta(self.alpha)

    def weights(self, length: int) -> np.ndarray:
        """(k + 1)^alpha for k < length."""
        return (np.arange(length) + 1.0) ** self.alpha

    def __str__(self):
        p = "inf" if math.isinf(self.p) else f"{self.p:g}"
        return f"l^{p}({self.alpha:g})"


HARDY = SpaceSpec(2.0, 0.0)
BERGMAN = SpaceSpec(2.0, -0.5)


def _pnorm(a: np.ndarray, p: float) -> float:
    """l^p norm of a nonnegative vector, scaled against overflow."""
    if a.size == 0:
        return 0.0
    top = float(np.max(a))
    if top == 0.0:
        return 0.0
    if math.isinf(p):
        return top
    if p == 2.0:
        return float(np.linalg.norm(a))
    return top * float(np.sum((a / top) ** p)) ** (1.0 / p)


def weighted_norm(f: TaylorSeries, X: SpaceSpec) -> float:
    """||f|| in l_a^p(alpha); exact for a finite series."""
    return _pnorm(np.abs(f.coeffs) * X.weights(len(f)), X.p)


def weighted_inner(f: TaylorSeries, g: TaylorSeries, alpha: float) -> complex:
    """Scalar product of l_a^2(alpha): sum f_k conj(g_k) (k + 1)^(2 alpha)."""
    L = min(len(f), len(g))
    w = (np.arange(L) + 1.0) ** (2.0 * alpha)
    return complex(np.sum(f.coeffs[:L] * np.conj(g.coeffs[:L]) * w))


def cauchy_pairing(h: TaylorSeries, g: TaylorSeries) -> complex:
    """Unweighted sesquilinear pairing sum h_k conj(g_k)."""
    L = min(len(h), len(g))
    return complex(np.vdot(g.coeffs[:L], h.coeffs[:L]))


def dual_norm(a: np.ndarray, X: SpaceSpec) -> float:
    """Norm of the functional f -> sum_k f_k a_k on l_a^p(alpha).

    Equals the l^{p'} norm of a_k (k + 1)^(-alpha) where 1/p + 1/p' = 1.
    """
    a = np.asarray(a)
    return _pnorm(np.abs(a) * X.weights(a.size) ** -1.0, X.dual_exponent)


def holder_extremal(a: np.ndarray, X: SpaceSpec) -> tuple[np.ndarray, float]:
    """Unit-norm coefficients f maximising Re sum_k f_k a_k over l_a^p(alpha).

    Returns ``(f, value)`` with ``value == dual_norm(a, X)`` and
    ``weighted_norm(f, X) == 1``.
    """
    a = np.asarray(a, dtype=np.complex128)
    K = a.size
    inv_w = X.weights(K) ** -1.0
    g = np.abs(a) * inv_w
    phase = np.ones(K, dtype=np.complex128)
    nz = g > 0
    phase[nz] = np.exp(-1j * np.angle(a[nz]))  # conj(a)/|a| overflows for subnormal a
    f = np.zeros(K, dtype=np.complex128)
    top = float(np.max(g)) if K else 0.0
    if top == 0.0:
        f[0] = 1.0
        return f, 0.0
    q = X.dual_exponent
    if math.isinf(q):
        k = int(np.argmax(g))
        f[k] = phase[k] * inv_w[k]
        return f, top
    if q == 1.0:
        f[nz] = phase[nz] * inv_w[nz]
        if not np.any(nz):
            f[0] = 1.0
        return f, float(np.sum(g))
    G = _pnorm(g, q)
    f = phase * inv_w * (g / G) ** (q - 1.0)
    return f, G


def eval_functional_norm(t: float, X: SpaceSpec, tol: float = 1e-12) -> float:
    """Norm of the evaluation functional f -> f(t) on l_a^p(alpha), 0 <= t < 1.

    The dual series sum_k (t^k (k+1)^(-alpha))^{p'} is summed until a
    geometric bound on the remainder falls below ``tol`` times the partial sum.
    """
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise DomainError(f"evaluation point must lie in [0, 1), got {t}")
    if t == 0.0:
        return 1.0
    s = -X.alpha
    q = X.dual_exponent
    if math.isinf(q):
        # log-concave in k: maximum near k* = s / log(1/t) - 1
        kstar = max(0.0, s / math.log(1.0 / t) - 1.0)
        ks = np.arange(max(0, int(kstar) - 1), int(kstar) + 3, dtype=float)
        return float(np.max(t**ks * (ks + 1.0) ** s))
    total = 0.0
    start = 0
    chunk = 256
    while True:
        k = np.arange(start, start + chunk, dtype=float)
        terms = np.exp(q * (k * math.log(t) + s * np.log1p(k)))
        total += float(np.sum(terms))
        K = k[-1]
        ratio = t**q * ((K + 2.0) / (K + 1.0)) ** (s * q)
        if ratio < 1.0:
            tail = terms[-1] * ratio / (1.0 - ratio)
            if tail <= tol * total:
                break
        start += chunk
        chunk *= 2
    return total ** (1.0 / q)


def reproducing_kernel(lam: complex, X: SpaceSpec, degree: int) -> TaylorSeries:
    """Kernel of l_a^2(alpha) at lam, truncated: conj(lam)^k (k+1)^(-2 alpha)."""
    if not X.is_hilbert:
        raise UnsupportedSpaceError("reproducing kernels exist for p = 2 only")
    if abs(lam) >= 1:
        raise DomainError(f"kernel point must lie in the open disc, got {lam}")
    k = np.arange(degree + 1)
    return TaylorSeries(np.conj(lam) ** k * (k + 1.0) ** (-2.0 * X.alpha))


def _binomial_weights(N: int, length: int) -> np.ndarray:
    k = np.arange(length)
    return 1.0 / binom(k + N - 1, k)


def binomial_norm(f: TaylorSeries, N: int) -> float:
    """Norm of the space with kernel (1 - conj(lam) z)^(-N)."""
    if N < 1:
        raise DomainError("N must be a positive integer")
    w = _binomial_weights(N, len(f))
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 * w)))


def binomial_equivalence_bracket(N: int, degree: int) -> tuple[float, float]:
    """Constants c1 <= c2 with c1 <= binomial_norm(f, N) / ||f||_{l^2((1-N)/2)} <= c2.

    Valid for every f of degree <= ``degree``; obtained from the extreme
    coefficientwise weight ratios (k+1)^(N-1) / binom(k+N-1, k).
    """
    k = np.arange(degree + 1)
    ratio = (k + 1.0) ** (N - 1) * _binomial_weights(N, degree + 1)
    return float(np.sqrt(ratio.min())), float(np.sqrt(ratio.max()))


def alpha_to_beta(alpha: float) -> float:
    if not alpha < 0:
        raise DomainError("alpha must be < 0 (beta = -1 is excluded)")
    return -2.0 * alpha - 1.0


def beta_to_alpha(beta: float) -> float:
    if not beta > -1:
        raise DomainError("beta must be > -1")
    return -(beta + 1.0) / 2.0
