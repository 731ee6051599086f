"""Minimal-norm H^inf interpolation and estimates of interpolation constants.

The minimal sup norm of a bounded interpolant of Hermite data on sigma equals
||p(M)||, where p is any polynomial carrying the data and M is the compressed
shift on K_B. For distinct nodes the Pick matrix gives an independent route.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular
from scipy.optimize import minimize

from malmquist.blaschke import MalmquistBasis, Sigma, compressed_shift
from malmquist.errors import ConditioningWarning, UnsupportedSpaceError
from malmquist.interpolator import hermite_trace
from malmquist.spaces import SpaceSpec, TaylorSeries, holder_extremal, weighted_norm

# ---------------------------------------------------------------- Hermite data


def _groups(sigma: Sigma) -> np.ndarray:
    return np.repeat(np.arange(len(sigma.points)), [m for _, m in sigma.points])


def _split_trace(sigma: Sigma, trace) -> list[np.ndarray]:
    trace = np.asarray(trace, dtype=np.complex128).ravel()
    if trace.size != sigma.n:
        raise ValueError(f"trace must have length {sigma.n}, got {trace.size}")
    cuts = np.cumsum([m for _, m in sigma.points])[:-1]
    return np.split(trace, cuts)


def newton_coefficients(sigma: Sigma, trace) -> np.ndarray:
    """Divided differences of the Hermite data on the expanded nodes.

    ``trace`` lists f^(j)(lam) / j!, j < mult(lam), point by point; repeated
    nodes use these values directly (confluent divided differences).
    """
    local = _split_trace(sigma, trace)
    z = sigma.expanded
    grp = _groups(sigma)
    n = z.size
    dd = np.array([local[g][0] for g in grp], dtype=np.complex128)
    coef = np.empty(n, dtype=np.complex128)
    coef[0] = dd[0]
    for k in range(1, n):
        new = dd.copy()
        for i in range(n - 1, k - 1, -1):
            if grp[i] == grp[i - k]:
                new[i] = local[grp[i]][k]
            else:
                new[i] = (dd[i] - dd[i - 1]) / (z[i] - z[i - k])
        dd = new
        coef[k] = dd[k]
    return coef


def newton_to_monomial(sigma: Sigma, coef) -> TaylorSeries:
    """Expand the Newton form sum_k coef[k] prod_{j<k} (z - z_j)."""
    z = sigma.expanded
    out = np.array([coef[-1]], dtype=np.complex128)
    for k in range(z.size - 2, -1, -1):
        out = np.convolve(out, [-z[k], 1.0])
        out[0] += coef[k]
    return TaylorSeries(out)


def hermite_polynomial(sigma: Sigma, trace) -> TaylorSeries:
    """Polynomial of degree < n carrying the Hermite data."""
    return newton_to_monomial(sigma, newton_coefficients(sigma, trace))


def newton_at_matrix(sigma: Sigma, coef, A: np.ndarray) -> np.ndarray:
    """Newton form evaluated at a square matrix by nested multiplication."""
    z = sigma.expanded
    n = A.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    P = coef[-1] * eye
    for k in range(z.size - 2, -1, -1):
        P = P @ (A - z[k] * eye) + coef[k] * eye
    return P


def poly_at_matrix(f: TaylorSeries, A: np.ndarray) -> np.ndarray:
    """f(A) by Horner's rule."""
    eye = np.eye(A.shape[0], dtype=np.complex128)
    P = np.zeros_like(eye)
    for c in f.coeffs[::-1]:
        P = P @ A + c * eye
    return P


def _opnorm(A: np.ndarray) -> float:
    return float(np.linalg.norm(A, 2))


# ---------------------------------------------------------------- minimal norms


def min_norm(sigma: Sigma, trace, M: np.ndarray | None = None, rtol: float = 1e-8) -> float:
    """inf ||g||_inf over g in H^inf with the given Hermite data on sigma.

    Emits :class:`ConditioningWarning` when the interpolating polynomial
    reproduces the data with relative residual above ``rtol``.
    """
    trace = np.asarray(trace, dtype=np.complex128).ravel()
    coef = newton_coefficients(sigma, trace)
    p = newton_to_monomial(sigma, coef)
    resid = float(np.max(np.abs(hermite_trace(p, sigma) - trace))) if trace.size else 0.0
    scale = 1.0 + float(np.max(np.abs(trace)))
    growth = float(np.max(np.abs(coef))) / scale
    if resid > rtol * scale or growth > 1e10:
        warnings.warn(f"ill-conditioned Hermite data: divided-difference growth {growth:.3g}, "
                      f"residual {resid:.3g}", ConditioningWarning)
    if M is None:
        M = compressed_shift(sigma)
    return _opnorm(newton_at_matrix(sigma, coef, M))


def min_norm_of(f: TaylorSeries, sigma: Sigma, M: np.ndarray | None = None) -> float:
    """Minimal interpolant norm for the trace of a polynomial f, via f(M)."""
    if M is None:
        M = compressed_shift(sigma)
    return _opnorm(poly_at_matrix(f, M))


def pick_min_norm(sigma: Sigma, w, atol: float = 1e-10) -> float:
    """Minimal norm for values w at distinct nodes, by Pick-matrix bisection.

    Feasibility of c is positive semidefiniteness of
    P(c) = [(c^2 - w_i conj(w_j)) / (1 - lam_i conj(lam_j))]. The Szego Gram
    matrix C factors exactly as E E^H with E[i, k] = e_k(lam_i), which is lower
    triangular; the congruence by E^-1 turns the test into c^2 I - H H^H >= 0
    with H = E^-1 diag(w) E, avoiding a numerical Cholesky of C.
    """
    if any(m > 1 for _, m in sigma.points):
        raise UnsupportedSpaceError("Pick route needs distinct nodes; use min_norm")
    lam = sigma.expanded
    w = np.asarray(w, dtype=np.complex128).ravel()
    if w.size != lam.size:
        raise ValueError("need one value per node")
    E = MalmquistBasis(sigma)(lam).T
    H = solve_triangular(E, w[:, None] * E, lower=True)
    G = H @ H.conj().T
    G = 0.5 * (G + G.conj().T)
    eye = np.eye(lam.size)
    scale = max(1.0, float(np.abs(w).max()) ** 2)

    def feasible(c: float) -> bool:
        return float(np.linalg.eigvalsh(c * c * eye - G)[0]) >= -1e-12 * max(scale, c * c)

    lo = float(np.abs(w).max())
    hi = max(lo, 1.0)
    while not feasible(hi):
        lo, hi = hi, 2.0 * hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= atol or not lo < mid < hi:
            break
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------- constant estimate


@dataclass
class OracleEstimate:
    """Outcome of :func:`interp_constant_estimate`.

    ``value`` is ||f(M)|| / ||f||_X recomputed for the returned witness f, so
    it is a lower bound for c(sigma, X, H^inf) regardless of convergence.
    """
    value: float
    witness: TaylorSeries
    route: str
    crosscheck_delta: float
    truncation: int
    sensitivity: float | None = None
    history: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "witness_coeffs": self.witness.to_json(),
            "route": self.route,
            "crosscheck_delta": self.crosscheck_delta,
            "truncation": self.truncation,
            "sensitivity": self.sensitivity,
        }


def _power_stack(M: np.ndarray, alpha: float, n: int, eps: float = 1e-16, cap: int = 1 << 16) -> np.ndarray:
    """Weighted powers (k+1)^(-alpha) M^k until they are negligible."""
    P = [np.eye(n, dtype=np.complex128)]
    k = 0
    while True:
        k += 1
        P.append(P[-1] @ M)
        if k > n and (k + 1.0) ** (-alpha) * np.linalg.norm(P[-1]) < eps:
            break
        if k >= cap:
            break
    P = np.array(P)
    return P * ((np.arange(P.shape[0]) + 1.0) ** (-alpha))[:, None, None]


def _top_pair(T: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    U, s, Vh = np.linalg.svd(T)
    return Vh[0].conj(), U[:, 0], float(s[0])


def _ascend(B: np.ndarray, y: np.ndarray, iters: int, tol: float) -> tuple[np.ndarray, float, int]:
    """Alternate top singular pair / coefficient update in the reduced space."""
    val = 0.0
    it = 0
    for it in range(1, iters + 1):
        u, v, _ = _top_pair(np.tensordot(y, B, 1))
        b = np.einsum("i,kij,j->k", v.conj(), B, u)
        nb = float(np.linalg.norm(b))
        if nb == 0.0:
            break
        y = b.conj() / nb
        if nb - val < tol:
            val = max(val, nb)
            break
        val = nb
    return y, val, it


def _polish(B: np.ndarray, y: np.ndarray, val: float) -> tuple[np.ndarray, float]:
    """BFGS on the sphere for max ||sum_i y_i B_i||; alternation alone is sublinear near flat maxima."""
    r = B.shape[0]

    def fg(x):
        yy = x[:r] + 1j * x[r:]
        ny = np.linalg.norm(yy)
        u, v, sv = _top_pair(np.tensordot(yy, B, 1))
        b = np.einsum("i,kij,j->k", v.conj(), B, u)
        g = np.concatenate([b.real, -b.imag])
        return -sv / ny, -(g / ny - sv * x / ny**3)

    res = minimize(fg, np.concatenate([y.real, y.imag]), jac=True, method="BFGS",
                   options={"gtol": 1e-14, "maxiter": 2000})
    if np.all(np.isfinite(res.x)) and -res.fun > val:
        y2 = res.x[:r] + 1j * res.x[r:]
        return y2 / np.linalg.norm(y2), float(-res.fun)
    return y, val


def _ascend_coeffs(Pw: np.ndarray, X: SpaceSpec, f: np.ndarray, iters: int, tol: float) -> tuple[np.ndarray, float]:
    """Same ascent in the coefficient domain; Pw holds the plain powers M^k."""
    val = 0.0
    for _ in range(iters):
        u, v, _ = _top_pair(np.tensordot(f, Pw, 1))
        a = np.einsum("i,kij,j->k", v.conj(), Pw, u)
        f, nv = holder_extremal(a, X)
        if nv - val < tol:
            val = max(val, nv)
            break
        val = nv
    return f, val


def _warm_starts(sigma: Sigma, X: SpaceSpec, K: int) -> list[np.ndarray]:
    """Coefficient vectors of length K: lp witness, and b (sum e_k)^N when N = 1 - 2 alpha is integral."""
    from malmquist.bounds import hilbert_N, lower_lp

    n = sigma.n
    starts = [lower_lp(n, X.p, X.alpha).witness.padded(K)[:K]]
    N = hilbert_N(X.alpha)
    if N is not None:
        q = MalmquistBasis(sigma).taylor(K - 1).sum(axis=0)
        s = np.array([1.0 + 0j])
        for _ in range(N):
            s = np.convolve(s, q)[:K]
        starts.append(n ** (-N / 2.0) * np.pad(s, (0, K - s.size)))
    return starts


def _random_unit(rng: np.random.Generator, K: int) -> np.ndarray:
    x = rng.standard_normal(K) + 1j * rng.standard_normal(K)
    return x / np.linalg.norm(x)


def _certify(f: TaylorSeries, X: SpaceSpec, M: np.ndarray) -> float:
    nf = weighted_norm(f, X)
    return min_norm_of(f, None, M) / nf if nf > 0 else 0.0


def interp_constant_estimate(sigma: Sigma, X: SpaceSpec, restarts: int = 16, iters: int = 200,
                             seed: int = 0, tol: float = 1e-10, M: np.ndarray | None = None,
                             degree_cap: int | None = None, sensitivity: bool = True) -> OracleEstimate:
    """Lower estimate of c(sigma, X, H^inf) = sup_{||f||_X <= 1} ||f(M)||.

    For p = 2 the search runs in the (at most n-dimensional) range of the
    weighted power map k -> (k+1)^(-alpha) M^k, which is an exact reduction.
    Otherwise f ranges over polynomials of degree <= max(4n, 64) and the run
    is repeated at twice the degree to report a sensitivity.
    """
    n = sigma.n
    if M is None:
        M = compressed_shift(sigma)
    rng = np.random.default_rng(seed)
    if X.is_hilbert:
        P = _power_stack(M, X.alpha, n)
        K = P.shape[0]
        V = P.reshape(K, -1).T
        U, S, Wh = np.linalg.svd(V, full_matrices=False)
        rank = max(1, int(np.sum(S > S[0] * 1e-13)))
        B = (U[:, :rank] * S[:rank]).T.reshape(rank, n, n)
        kw = (np.arange(K) + 1.0) ** X.alpha  # x_k = f_k (k+1)^alpha
        inits = []
        for f0 in _warm_starts(sigma, X, K):
            y = Wh[:rank] @ (f0 * kw)
            if np.linalg.norm(y) > 0:
                inits.append(y / np.linalg.norm(y))
        while len(inits) < max(restarts, 1):
            inits.append(_random_unit(rng, rank))
        best_y, best = None, -1.0
        for y0 in inits[:max(restarts, len(inits))]:
            y, val, _ = _ascend(B, y0, iters, tol)
            if val > best:
                best, best_y = val, y
        best_y, best = _polish(B, best_y, best)
        x = Wh[:rank].conj().T @ best_y
        f = TaylorSeries(x * (np.arange(K) + 1.0) ** (-X.alpha))
        route = f"hilbert-reduced(rank={rank},K={K})"
        trunc, sens = K, None
    else:
        D = degree_cap or max(4 * n, 64)
        f, best = _coeff_search(sigma, X, M, D, restarts, iters, tol, rng)
        route = f"coefficient-domain(D={D})"
        trunc = D
        sens = None
        if sensitivity:
            f2, best2 = _coeff_search(sigma, X, M, 2 * D, restarts, iters, tol, np.random.default_rng(seed))
            sens = _certify(f2, X, M) - _certify(f, X, M)
            if sens > 0:
                f = f2
    value = _certify(f, X, M)
    Mt = compressed_shift(sigma, method="taylor")
    delta = abs(_certify(f, X, Mt) - value)
    return OracleEstimate(value, f, route, delta, trunc, sens)


def _coeff_search(sigma: Sigma, X: SpaceSpec, M: np.ndarray, D: int, restarts: int, iters: int,
                  tol: float, rng: np.random.Generator) -> tuple[TaylorSeries, float]:
    n = sigma.n
    eye = np.eye(n, dtype=np.complex128)
    Pw = [eye]
    for _ in range(D):
        Pw.append(Pw[-1] @ M)
    Pw = np.array(Pw)
    K = D + 1
    inits = [f0 / weighted_norm(TaylorSeries(f0), X) for f0 in _warm_starts(sigma, X, K)
             if weighted_norm(TaylorSeries(f0), X) > 0]
    while len(inits) < max(restarts, 1):
        x = _random_unit(rng, K)
        inits.append(x / weighted_norm(TaylorSeries(x), X))
    best_f, best = None, -1.0
    for f0 in inits[:max(restarts, len(inits))]:
        f, val = _ascend_coeffs(Pw, X, f0, iters, tol)
        if val > best:
            best, best_f = val, f
    best_f, best = _ascend_coeffs(Pw, X, best_f, 10 * iters, 1e-15)
    return TaylorSeries(best_f), best


# ---------------------------------------------------------------- von Neumann


def sample_contraction(sigma: Sigma, rng: np.random.Generator, steps: int = 30) -> np.ndarray:
    """Upper-triangular A with diagonal sigma and ||A|| <= 1.

    The strictly upper part is complex Gaussian, scaled by the largest factor
    (found by bisection) that keeps the operator norm at most 1.
    """
    n = sigma.n
    D = np.diag(sigma.expanded.astype(np.complex128))
    N = np.triu(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)), 1)
    if n == 1 or not np.any(N):
        return D
    lo, hi = 0.0, 1.0
    while _opnorm(D + hi * N) <= 1.0:
        lo, hi = hi, 2.0 * hi
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if _opnorm(D + mid * N) <= 1.0:
            lo = mid
        else:
            hi = mid
    return D + lo * N


@dataclass
class VonNeumannReport:
    trials: int
    violations: int
    max_excess: float          # max of ||f(A)|| - min_norm over samples
    best_contraction: float    # largest ||f(A)|| seen among samples
    min_norm: float
    model_gap: float           # | ||f(M)|| via Horner - min_norm via Newton form |
    upper_bound: float | None = None
    upper_violations: int = 0

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.model_gap <= 1e-8 and self.upper_violations == 0


def von_neumann_check(sigma: Sigma, f: TaylorSeries, trials: int = 100, seed: int = 0,
                      X: SpaceSpec | None = None, atol: float = 1e-8) -> VonNeumannReport:
    """Sample contractions with spectrum sigma and compare ||f(A)|| to min_norm.

    ||f(A)|| only depends on the trace of f, so it is computed from the
    Hermite polynomial. With ``X`` the chain bound upper_hilbert ||f||_X is
    checked as well.
    """
    from malmquist.bounds import upper_p

    trace = hermite_trace(f, sigma)
    coef = newton_coefficients(sigma, trace)
    M = compressed_shift(sigma)
    mn = _opnorm(newton_at_matrix(sigma, coef, M))
    model_gap = abs(min_norm_of(f, sigma, M) - mn)
    ub = None
    if X is not None:
        ub = upper_p(sigma.n, sigma.r, X)[0] * weighted_norm(f, X)
    rng = np.random.default_rng(seed)
    viol = uviol = 0
    excess, best = -math.inf, 0.0
    for _ in range(trials):
        A = sample_contraction(sigma, rng)
        val = _opnorm(newton_at_matrix(sigma, coef, A))
        best = max(best, val)
        excess = max(excess, val - mn)
        if val > mn + atol:
            viol += 1
        if ub is not None and val > ub + 1e-6:
            uviol += 1
    return VonNeumannReport(trials, viol, excess, best, mn, model_gap, ub, uviol)
