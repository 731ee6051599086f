"""Certified upper and lower bounds for interpolation constants.

Upper bounds are explicit chains of the form A * x^e with x = n / (1 - r);
non-integer alpha and intermediate p are handled by the log-convex
combination C <= C_1^(1 - theta) C_2^theta of endpoint bounds.

Lower bounds come from explicit test functions f: any g matching f on sigma
has ||g||_inf >= (quotient-norm certificate), so the certificate divided by
||f||_X bounds c(sigma, X, H^inf) from below. Quotient norms modulo z^n H^inf
are certified by convolution against a kernel whose Fourier coefficients
vanish from index n on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from malmquist.blaschke import MalmquistBasis, Sigma, _candidate_radii, tail_degree
from malmquist.errors import DomainError
from malmquist.interpolator import sup_norm
from malmquist.spaces import SpaceSpec, TaylorSeries

# ---------------------------------------------------------------- upper chains


def K_constant(N: int) -> float:
    """K_N = max(N^N, (N+1)^N / N!), with K_0 = 1."""
    if N < 0:
        raise DomainError("N must be >= 0")
    if N == 0:
        return 1.0
    return max(float(N) ** N, (N + 1.0) ** N / math.factorial(N))


def A_hilbert(N: int) -> float:
    """sqrt(2) K_N (1 + (N!)^2 4^(2N))^(1/2)."""
    return math.sqrt(2.0) * K_constant(N) * math.sqrt(1.0 + math.factorial(N) ** 2 * 4.0 ** (2 * N))


def A_one(N: int) -> float:
    """2 sqrt(2) N! 4^N K_N."""
    return 2.0 * math.sqrt(2.0) * math.factorial(N) * 4.0**N * K_constant(N)


def chain_infinity(N: int, x: float) -> float:
    """Sup-norm chain K_N pi (3x + 1 + (N+1)! (4x)^(N+1) + N! (4x)^N) sqrt(2x)."""
    poly = 3.0 * x + 1.0 + math.factorial(N + 1) * (4.0 * x) ** (N + 1) + math.factorial(N) * (4.0 * x) ** N
    return K_constant(N) * math.pi * poly * math.sqrt(2.0 * x)


def _integer_split(alpha: float) -> tuple[int, float]:
    """(N, theta) with -alpha = N - 1 + theta, theta in (0, 1]; theta = 1 means integer."""
    a = -alpha
    N = int(round(a))
    if abs(a - N) < 1e-12:
        return N, 1.0
    N = math.floor(a) + 1
    return N, 1.0 - alpha - N


def _theta_product(fn, alpha: float) -> float:
    N, theta = _integer_split(alpha)
    if theta == 1.0:
        return fn(N)
    return fn(N - 1) ** (1.0 - theta) * fn(N) ** theta


def _x(n: int, r: float) -> float:
    if n < 1 or not 0 <= r < 1:
        raise DomainError("need n >= 1 and 0 <= r < 1")
    return n / (1.0 - r)


def upper_hilbert(n: int, r: float, alpha: float) -> float:
    """A(alpha) (n/(1-r))^((1-2 alpha)/2) for X = l^2_a(alpha)."""
    if alpha > 0:
        raise DomainError("alpha must be <= 0")
    return _theta_product(A_hilbert, alpha) * _x(n, r) ** ((1.0 - 2.0 * alpha) / 2.0)


def upper_one(n: int, r: float, alpha: float) -> float:
    """A_1(alpha) (n/(1-r))^((1-2 alpha)/2) for X = l^1_a(alpha)."""
    if alpha > 0:
        raise DomainError("alpha must be <= 0")
    return _theta_product(A_one, alpha) * _x(n, r) ** ((1.0 - 2.0 * alpha) / 2.0)


def upper_infinity(n: int, r: float, alpha: float) -> float:
    """Sup-norm chain, growing like (n/(1-r))^(3/2 - alpha)."""
    if alpha > 0:
        raise DomainError("alpha must be <= 0")
    x = _x(n, r)
    return _theta_product(lambda N: chain_infinity(N, x), alpha)


def expected_exponent(X: SpaceSpec) -> float:
    """Growth exponent of the upper chain in n/(1-r)."""
    if X.p <= 2:
        return (1.0 - 2.0 * X.alpha) / 2.0
    return 1.5 - X.alpha - 2.0 / X.p


def upper_p(n: int, r: float, X: SpaceSpec) -> tuple[float, str]:
    """Certified upper bound for C_{n,r}(X, H^inf) and a route label."""
    p, a = X.p, X.alpha
    if p == 2:
        return upper_hilbert(n, r, a), "hilbert-chain"
    if p < 2:
        t = 2.0 - 2.0 / p
        if p == 1:
            return upper_one(n, r, a), "l1-chain"
        return upper_one(n, r, a) ** (1 - t) * upper_hilbert(n, r, a) ** t, f"interp(l1,l2;theta={t:.6g})"
    t = 1.0 if math.isinf(p) else 1.0 - 2.0 / p
    if t == 1.0:
        return upper_infinity(n, r, a), "sup-chain"
    return upper_hilbert(n, r, a) ** (1 - t) * upper_infinity(n, r, a) ** t, f"interp(l2,linf;theta={t:.6g})"


# ---------------------------------------------------------------- Fejer certificate


def fejer_m(n: int) -> int:
    """m with 2m = n (n even) or 2m - 1 = n (n odd)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return n // 2 if n % 2 == 0 else (n + 1) // 2


def fejer_kernel_coeffs(n: int, clamp: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Fourier coefficients of F_n = Phi_m + z^m Phi_m.

    Returns (j, F_hat(j)) for j = -m .. 2m. With ``clamp`` the coefficients at
    j >= n are zeroed; unclamped, F_hat(n) is nonzero for every n.
    """
    m = fejer_m(n)
    j = np.arange(-m, 2 * m + 1)
    fh = np.maximum(0.0, 1.0 - np.abs(j) / (m + 1.0)) + np.maximum(0.0, 1.0 - np.abs(j - m) / (m + 1.0))
    if clamp:
        fh[j >= n] = 0.0
    return j, fh


def fejer_l1(n: int, clamp: bool = True, nodes: int | None = None) -> float:
    """||F_n||_{L^1} by the trapezoid rule (normalised measure)."""
    j, fh = fejer_kernel_coeffs(n, clamp)
    L = nodes or max(1 << 14, 64 * j.size)
    spec = np.zeros(L, dtype=np.complex128)
    spec[j % L] = fh
    vals = np.fft.ifft(spec) * L
    return float(np.mean(np.abs(vals)))


def fejer_quotient_lower(g: TaylorSeries, n: int) -> float:
    """Lower bound for ||g||_{H^inf / z^n H^inf}.

    Uses ||k||_inf ||F||_1 >= ||k * F||_inf for every k = g + z^n h, where F is
    the clamped kernel, so only g_hat(0..n-1) enter. The divisor is
    max(2, ||F||_1), which equals 2 for every n tested.
    """
    _, fh = fejer_kernel_coeffs(n)
    m = fejer_m(n)
    weights = fh[m:]  # j = 0 .. 2m
    c = g.padded(max(len(g), n))[:n]
    h = TaylorSeries(c * weights[:n])
    best = sup_norm(h).refined
    return best / max(2.0, fejer_l1(n))


# ---------------------------------------------------------------- lower witnesses


@dataclass(frozen=True)
class Certificate:
    value: float
    witness: TaylorSeries
    note: str
    partial_sum: float = 0.0
    witness_norm: float = 1.0


def partial_binomial_sum(N: int, m: int) -> int:
    """sum_{j<=m} binom(N-1+j, j), by direct summation."""
    return sum(math.comb(N - 1 + j, j) for j in range(m + 1))


def hockey_stick(N: int, m: int) -> int:
    """Closed form binom(N+m, m) of :func:`partial_binomial_sum`."""
    return math.comb(N + m, m)


def psi_one(n: int, r: float) -> TaylorSeries:
    """1 + (1+r) sum_{k=1}^{n-1} z^k + r z^n; positive coefficients for r >= 0."""
    c = np.zeros(n + 1)
    c[0] = 1.0
    c[1:n] = 1.0 + r
    c[n] += r
    return TaylorSeries(c)


def onepoint_witness(n: int, r: float, N: int) -> TaylorSeries:
    """psi = n^(-N/2) (1 - r^2)^(-N/2) psi_1^N, of degree nN."""
    if N < 1:
        raise DomainError("N must be >= 1")
    if not 0 <= r < 1:
        raise DomainError("need 0 <= r < 1")
    p1 = psi_one(n, r).coeffs.real
    out = np.array([1.0])
    for _ in range(N):
        out = np.convolve(out, p1)
    return TaylorSeries(out * (n ** (-N / 2.0) * (1.0 - r * r) ** (-N / 2.0)))


def onepoint_value_at_one(n: int, r: float, N: int) -> float:
    """Closed form of psi(1) = b ((1+r) n)^N (1-r^2)^(-N/2), b = n^(-N/2)."""
    return n ** (-N / 2.0) * ((1.0 + r) * n) ** N * (1.0 - r * r) ** (-N / 2.0)


def onepoint_pullback_norm(n: int, r: float, N: int, tol: float = 1e-12) -> float:
    """Upper bound on ||Psi||_{l^2_a((1-N)/2)}, Psi = n^(-N/2) Q^N.

    Q = sum_k e_k for the n-fold point -r, so that Psi composed with the disc
    automorphism exchanging 0 and -r is the witness psi. The Taylor series is
    exact up to degree D; the remainder is bounded by a Cauchy estimate.
    """
    sigma = Sigma.one_point(-r, n)
    basis = MalmquistBasis(sigma)
    b = n ** (-N / 2.0)
    lw = lambda j: (1.0 - N) * np.log(j + 1.0)
    best_D = None
    for R in _candidate_radii(r):
        bound = b * float(basis.majorants(R).sum()) ** N
        D = tail_degree(bound, R, tol, lw)
        best_D = D if best_D is None else min(best_D, D)
    D = max(best_D, n * N)
    q = basis.taylor(D).sum(axis=0)
    psi = np.array([1.0 + 0j])
    for _ in range(N):
        psi = fftconvolve(psi, q)[: D + 1]
    psi *= b
    w = (np.arange(psi.size) + 1.0) ** ((1.0 - N) / 2.0)
    s = float(np.linalg.norm(psi * w))
    return math.sqrt(s * s + tol * tol)


def lower_onepoint_hilbert(n: int, lam: complex, N: int) -> Certificate:
    """Certified lower bound for c(sigma_{n,lam}, l^2_a((1-N)/2), H^inf).

    The test function is Psi (norm computed directly); its quotient norm
    modulo B H^inf equals that of the positive-coefficient polynomial psi
    modulo z^n H^inf by conformal invariance, bounded below via
    :func:`fejer_quotient_lower`.
    """
    if N < 1:
        raise DomainError("N must be a positive integer")
    if n < 1:
        raise DomainError("n must be >= 1")
    r = abs(complex(lam))
    if r >= 1:
        raise DomainError("lam must lie in the open disc")
    psi = onepoint_witness(n, r, N)
    m = min(fejer_m(n), n - 1)
    partial = 0.5 * float(psi.coeffs[: m + 1].real.sum())
    quot = max(fejer_quotient_lower(psi, n), partial)
    nrm = onepoint_pullback_norm(n, r, N)
    note = f"onepoint(N={N},r={r:.6g})"
    return Certificate(quot / nrm, psi, note, partial, nrm)


def lower_lp(n: int, p: float, alpha: float) -> Certificate:
    """1/2 n^(-1/p) sum_{k<=m} (k+1)^(-alpha), valid for C_{n,r} at every r."""
    if n < 1:
        raise DomainError("n must be >= 1")
    X = SpaceSpec(p, alpha)
    pref = 1.0 if math.isinf(X.p) else n ** (-1.0 / X.p)
    k = np.arange(n, dtype=float)
    f = TaylorSeries(pref * (k + 1.0) ** (-alpha))
    m = min(fejer_m(n), n - 1)
    val = 0.5 * float(f.coeffs[: m + 1].real.sum())
    return Certificate(val, f, f"lp-witness(n={n})", val, 1.0)


def hilbert_N(alpha: float) -> int | None:
    """N = 1 - 2 alpha when it is a positive integer, else None."""
    N = 1.0 - 2.0 * alpha
    Ni = int(round(N))
    return Ni if abs(N - Ni) < 1e-12 and Ni >= 1 else None


# ---------------------------------------------------------------- report


@dataclass
class BoundReport:
    n: int
    r: float
    X: SpaceSpec
    lower_certified: float
    lower_witness: str
    upper_certified: float
    upper_route: str
    oracle_estimate: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        ok = self.lower_certified <= self.upper_certified + 1e-6
        if self.oracle_estimate is not None:
            ok = ok and self.lower_certified <= self.oracle_estimate + 1e-6
            ok = ok and self.oracle_estimate <= self.upper_certified + 1e-6
        return ok

    def as_row(self) -> dict:
        return {
            "n": self.n, "r": self.r, "p": self.X.p, "alpha": self.X.alpha,
            "lower": self.lower_certified,
            "oracle": self.oracle_estimate,
            "upper": self.upper_certified,
            "lower_witness": self.lower_witness,
            "upper_route": self.upper_route,
            "exponent_expected": expected_exponent(self.X),
        }


def lower_certified(n: int, r: float, X: SpaceSpec) -> Certificate:
    """Best available certificate: lp witness, or the one-point witness at lam = r."""
    best = lower_lp(n, X.p, X.alpha)
    N = hilbert_N(X.alpha) if X.is_hilbert else None
    if N is not None:
        one = lower_onepoint_hilbert(n, r, N)
        if one.value > best.value:
            best = one
    return best


def bound_report(n: int, r: float, X: SpaceSpec, oracle: bool = False,
                 seed: int = 0, restarts: int = 16) -> BoundReport:
    """Assemble lower, upper and (optionally) the oracle estimate at sigma_{n,r}."""
    low = lower_certified(n, r, X)
    up, route = upper_p(n, r, X)
    rep = BoundReport(n, r, X, low.value, low.note, up, route)
    if oracle:
        from malmquist.oracle import interp_constant_estimate

        est = interp_constant_estimate(Sigma.one_point(r, n), X, restarts=restarts, seed=seed)
        rep.oracle_estimate = est.value
        rep.extra["oracle_route"] = est.route
    return rep
