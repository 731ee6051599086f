"""Finite Blaschke products, the Malmquist basis of the model space K_B,
kernel projections and the compressed shift.

For sigma = (lam_1, ..., lam_n) in the disc, B = prod_j b_{lam_j} with
b_lam(z) = (lam - z) / (1 - conj(lam) z). The model space K_B = H^2 minus B H^2
has the orthonormal basis

    e_k = (prod_{j<k} b_{lam_j}) * sqrt(1 - |lam_k|^2) / (1 - conj(lam_k) z).
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from malmquist import kernels
from malmquist.errors import DomainError, PoleError
from malmquist.spaces import TaylorSeries


@dataclass(frozen=True)
class Sigma:
    """Finite multiset of disc points, kept as ``((lam, mult), ...)``.

    Repeated points are merged into their first occurrence, so the expanded
    order lists each distinct point's copies consecutively, in insertion order.
    """

    points: tuple

    def __post_init__(self):
        merged: list[list] = []
        for item in self.points:
            lam, mult = item
            lam = complex(lam)
            mult = int(mult)
            if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
                raise DomainError(f"point {lam} is not finite")
            if abs(lam) >= 1:
                raise DomainError(f"point {lam} is not in the open unit disc")
            if mult < 1:
                raise DomainError(f"multiplicity must be >= 1, got {mult}")
            for entry in merged:
                if entry[0] == lam:
                    entry[1] += mult
                    break
            else:
                merged.append([lam, mult])
        if not merged:
            raise DomainError("sigma must contain at least one point")
        object.__setattr__(self, "points", tuple((lam, m) for lam, m in merged))

    @classmethod
    def from_points(cls, pts: Iterable[complex]) -> "Sigma":
        return cls(tuple((p, 1) for p in pts))

    @classmethod
    def one_point(cls, lam: complex, n: int) -> "Sigma":
        return cls(((lam, n),))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.points)

    @property
    def r(self) -> float:
        return max(abs(lam) for lam, _ in self.points)

    @property
    def expanded(self) -> np.ndarray:
        return np.array([lam for lam, m in self.points for _ in range(m)], dtype=np.complex128)

    @property
    def distinct(self) -> list[tuple[complex, int]]:
        return list(self.points)

    def rotated(self, theta: float) -> "Sigma":
        w = np.exp(1j * theta)
        return Sigma(tuple((lam * w, m) for lam, m in self.points))

    def reordered(self, order: Sequence[int]) -> "Sigma":
        return Sigma(tuple(self.points[i] for i in order))

    def to_json(self) -> list[dict]:
        return [{"re": lam.real, "im": lam.imag, "mult": m} for lam, m in self.points]

    @classmethod
    def from_json(cls, data) -> "Sigma":
        if not isinstance(data, list):
            raise ValueError("sigma JSON must be a list of {re, im, mult} objects")
        pts = []
        for item in data:
            if not isinstance(item, dict) or "re" not in item:
                raise ValueError(f"bad sigma entry {item!r}")
            pts.append((complex(float(item["re"]), float(item.get("im", 0.0))),
                        int(item.get("mult", 1))))
        return cls(tuple(pts))

    @classmethod
    def parse(cls, text: str) -> "Sigma":
        """Shorthand ``"0.5^3;-0.2+0.1i^1"``; ``^mult`` may be omitted."""
        tokens = [t.strip() for t in text.replace("−", "-").split(";") if t.strip()]
        if not tokens:
            raise ValueError("empty sigma")
        pts = []
        for tok in tokens:
            body, _, mult = tok.partition("^")
            body = body.replace(" ", "").replace("i", "j")
            if body.endswith("j") and (len(body) == 1 or body[-2] in "+-"):
                body = body[:-1] + "1j"
            try:
                lam = complex(body)
                m = int(mult) if mult else 1
            except ValueError as exc:
                raise ValueError(f"cannot parse sigma token {tok!r}") from exc
            pts.append((lam, m))
        return cls(tuple(pts))

    @classmethod
    def load(cls, spec: str) -> "Sigma":
        """Read sigma from a JSON file path, inline JSON, or shorthand."""
        if os.path.isfile(spec):
            with open(spec) as fh:
                return cls.from_json(json.load(fh))
        if spec.lstrip().startswith("["):
            return cls.from_json(json.loads(spec))
        return cls.parse(spec)

    def __str__(self):
        def fmt(lam):
            if lam.imag == 0:
                return f"{lam.real:g}"
            return f"{lam.real:g}{lam.imag:+g}i"
        return ";".join(f"{fmt(lam)}^{m}" for lam, m in self.points)


def blaschke_factor(lam: complex, z):
    """b_lam(z) = (lam - z) / (1 - conj(lam) z)."""
    if abs(lam) >= 1:
        raise DomainError(f"{lam} is not in the open unit disc")
    z = np.asarray(z, dtype=np.complex128)
    den = 1.0 - np.conj(lam) * z
    if np.any(den == 0):
        raise PoleError(f"b_{lam} has a pole at {1 / np.conj(lam)}")
    out = (lam - z) / den
    return complex(out) if out.ndim == 0 else out


def blaschke_product(sigma: Sigma, z):
    """B_sigma(z), the product of the Blaschke factors of sigma."""
    z = np.asarray(z, dtype=np.complex128)
    flat = z.ravel()
    outside = flat[np.abs(flat) > 1]
    if outside.size:
        for lam, _ in sigma.points:
            if np.any(1.0 - np.conj(lam) * outside == 0):
                raise PoleError(f"B_sigma has a pole at {1 / np.conj(lam)}")
    out = kernels.blaschke_eval(sigma.expanded, flat).reshape(z.shape)
    return complex(out) if out.ndim == 0 else out


def _candidate_radii(r: float) -> list[float]:
    if r == 0:
        return [2.0, 4.0, 8.0, 16.0]
    return [r ** (-s) for s in (0.2, 0.35, 0.5, 0.65, 0.8)]


def tail_degree(bound: float, R: float, tol: float,
                log_weight: Callable[[np.ndarray], np.ndarray] | None = None,
                max_degree: int = 1 << 21) -> int:
    """Smallest D with bound^2 * sum_{j>D} weight(j) R^(-2j) <= tol^2.

    ``bound`` majorises |g| on the circle |z| = R > 1 so that Cauchy's estimate
    gives |g_j| <= bound * R^(-j); ``log_weight`` is the log of a weight with
    eventually decreasing ratio (polynomial growth or decay).
    """
    if bound == 0.0:
        return 0
    if R <= 1.0:
        raise ValueError("majorant radius must exceed 1")
    lw = log_weight or (lambda j: np.zeros(j.shape))
    lb = 2.0 * math.log(bound)
    lR = math.log(R)
    target = 2.0 * math.log(tol)
    J = 1024
    while True:
        j = np.arange(J, dtype=float)
        lt = lb + lw(j) - 2.0 * j * lR
        step = lt[-1] - lt[-2]
        if step < 0:
            rho = math.exp(step)
            rem = lt[-1] + math.log(rho / (1.0 - rho))
            if rem < target - 2.0:
                break
        if J >= max_degree:
            raise RuntimeError("series tail does not decay within max_degree terms")
        J *= 2
    # suffix log-sum-exp: suffix[D] = log sum_{j >= D} terms (plus remainder)
    suffix = np.logaddexp.accumulate(np.append(lt, rem)[::-1])[::-1]
    ok = np.flatnonzero(suffix[1:] <= target)
    return int(ok[0]) if ok.size else J


class MalmquistBasis:
    """Orthonormal Malmquist basis e_1..e_n of K_B for a fixed sigma."""

    def __init__(self, sigma: Sigma):
        self.sigma = sigma
        self.points = sigma.expanded
        self.n = sigma.n

    def __call__(self, z) -> np.ndarray:
        """Values as an array of shape (n,) + shape(z)."""
        z = np.asarray(z, dtype=np.complex128)
        vals = kernels.basis_eval(self.points, z.ravel())
        return vals.reshape((self.n,) + z.shape)

    def taylor(self, degree: int, extended: bool = False) -> np.ndarray:
        """(n, degree + 1) Taylor coefficient matrix; entries are exact.

        ``extended`` runs the recurrences in long double (clongdouble result).
        """
        if extended:
            return kernels.malmquist_taylor_ext(self.points, degree)
        return kernels.malmquist_taylor(self.points, degree)

    def majorants(self, R: float) -> np.ndarray:
        """Upper bounds for max_{|z|=R} |e_k(z)|, valid for R < 1/r."""
        a = np.abs(self.points)
        den = 1.0 - a * R
        if np.any(den <= 0):
            raise DomainError(f"radius {R} reaches a pole")
        kern = np.sqrt(1.0 - a**2) / den
        fac = (a + R) / den
        pref = np.concatenate(([1.0], np.cumprod(fac[:-1])))
        return kern * pref

    def degree_for(self, tol: float, coords=None,
                   log_weight: Callable[[np.ndarray], np.ndarray] | None = None) -> int:
        """Truncation degree whose (weighted) l^2 coefficient tail is below tol.

        With ``coords`` the bound applies to sum_k coords[k] e_k, otherwise to
        every basis element at once.
        """
        best = None
        for R in _candidate_radii(self.sigma.r):
            m = self.majorants(R)
            bound = float(np.abs(coords) @ m) if coords is not None else float(m.max())
            D = tail_degree(bound, R, tol, log_weight)
            best = D if best is None else min(best, D)
        return max(best, self.n)

    def local_expansion(self, a: complex, m: int, dtype=np.complex128) -> np.ndarray:
        """Coefficients of e_k(a + h) in powers of h, orders 0..m-1; shape (n, m).

        Products of the factors' local series; ``dtype=np.clongdouble`` keeps
        long double precision throughout.
        """
        one = dtype(1)
        a = dtype(a)
        out = np.empty((self.n, m), dtype=dtype)
        pref = np.zeros(m, dtype=dtype)
        pref[0] = one
        j = np.arange(m)
        for k, lam in enumerate(self.points):
            lam = dtype(lam)
            lamc = np.conj(lam)
            d = one - lamc * a
            kern = (lamc / d) ** j / d
            c = np.sqrt(one.real - (lam.real * lam.real + lam.imag * lam.imag))
            out[k] = c * np.convolve(pref, kern)[:m]
            num = np.zeros(m, dtype=dtype)
            num[0] = lam - a
            if m > 1:
                num[1] = -one
            pref = np.convolve(pref, np.convolve(num, kern)[:m])[:m]
        return out


def malmquist_basis(sigma: Sigma) -> MalmquistBasis:
    return MalmquistBasis(sigma)


@dataclass(frozen=True, eq=False)
class MalmquistRep:
    """Element sum_k coords[k] e_k of the model space K_B.

    Coordinates are complex128, or clongdouble when supplied that way; the
    extra precision is kept for derivative traces, where the basis elements'
    local Taylor data can exceed the function's own by many orders.
    """

    sigma: Sigma
    coords: np.ndarray

    def __post_init__(self):
        dt = np.clongdouble if np.asarray(self.coords).dtype == np.clongdouble else np.complex128
        c = np.array(self.coords, dtype=dt).ravel()
        if c.size != self.sigma.n:
            raise ValueError(f"need {self.sigma.n} coordinates, got {c.size}")
        c.flags.writeable = False
        object.__setattr__(self, "coords", c)

    @property
    def basis(self) -> MalmquistBasis:
        return MalmquistBasis(self.sigma)

    @property
    def extended(self) -> bool:
        return self.coords.dtype == np.clongdouble

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        c = self.coords.astype(np.complex128)
        out = kernels.combination_eval(self.sigma.expanded, c, z.ravel()).reshape(z.shape)
        return complex(out) if out.ndim == 0 else out

    def norm(self) -> float:
        """H^2 norm (Parseval in the orthonormal basis)."""
        return float(np.sqrt(np.sum(np.abs(self.coords) ** 2)))

    def taylor(self, degree: int) -> TaylorSeries:
        return TaylorSeries(self.coords.astype(np.complex128) @ self.basis.taylor(degree))

    def taylor_for_tol(self, tol: float = 1e-12) -> TaylorSeries:
        """Truncated Taylor series with l^2 tail below ``tol``."""
        return self.taylor(self.basis.degree_for(tol, self.coords))

    def local_taylor(self, a: complex, m: int) -> np.ndarray:
        """g^(j)(a) / j! for j < m, from the rational form (long double inside)."""
        E = self.basis.local_expansion(a, m, dtype=np.clongdouble)
        return (self.coords.astype(np.clongdouble) @ E).astype(np.complex128)

    def __add__(self, other):
        if not isinstance(other, MalmquistRep) or other.sigma != self.sigma:
            return NotImplemented
        return MalmquistRep(self.sigma, self.coords + other.coords)

    def __mul__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        return MalmquistRep(self.sigma, self.coords * c)

    __rmul__ = __mul__


def project_kernel(sigma: Sigma, zeta: complex) -> MalmquistRep:
    """Projection of the Szego kernel k_zeta onto K_B: coords conj(e_k(zeta))."""
    if abs(zeta) >= 1:
        raise DomainError(f"{zeta} is not in the open unit disc")
    vals = MalmquistBasis(sigma)(np.array([zeta]))[:, 0]
    return MalmquistRep(sigma, np.conj(vals))


def compressed_shift(sigma: Sigma, method: str = "quadrature", nodes: int | None = None) -> np.ndarray:
    """Matrix of z -> P_B(z g) on K_B in the Malmquist basis.

    Entry (i, k) is (z e_k, e_i)_{H^2}. The default uses the trapezoid rule on
    the circle (at least 4096 nodes, more when the aliasing bound requires);
    ``method="taylor"`` pairs truncated Taylor expansions instead.
    """
    basis = MalmquistBasis(sigma)
    if method == "quadrature":
        if nodes is None:
            D = basis.degree_for(1e-17)
            nodes = max(4096, 1 << int(math.ceil(math.log2(2 * (D + 2)))))
        z = np.exp(2j * np.pi * np.arange(nodes) / nodes)
        E = basis(z)
        return (np.conj(E) @ (z * E).T) / nodes
    if method == "taylor":
        D = basis.degree_for(1e-16)
        T = basis.taylor(D + 1)
        return np.conj(T[:, 1:]) @ T[:, :-1].T
    raise ValueError(f"unknown method {method!r}")


def random_sigma(rng: np.random.Generator, n: int, r: float,
                 multiplicities: bool = False, min_sep: float = 0.02) -> Sigma:
    """Random sigma with total count n and max modulus exactly r.

    Points are area-uniform in the disc of radius r, with the outermost one
    pushed to |lam| = r, and pairwise separated by ``min_sep``. With
    ``multiplicities`` the count n is split randomly over fewer points.
    """
    if n < 1 or not 0 <= r < 1:
        raise DomainError("need n >= 1 and 0 <= r < 1")
    if multiplicities:
        k = int(rng.integers(1, n + 1))
        cuts = np.sort(rng.choice(np.arange(1, n), size=k - 1, replace=False)) if k > 1 else np.array([], int)
        mults = np.diff(np.concatenate(([0], cuts, [n]))).tolist()
    else:
        k, mults = n, [1] * n
    if r == 0:
        return Sigma(((0.0, n),))
    sep = min(min_sep, r / (2 * math.sqrt(k)))
    for _ in range(10_000):
        rad = r * np.sqrt(rng.random(k))
        pts = rad * np.exp(2j * np.pi * rng.random(k))
        i = int(np.argmax(rad))
        pts[i] = r * np.exp(1j * np.angle(pts[i]))
        d = np.abs(pts[:, None] - pts[None, :]) + np.eye(k) * 10.0
        if d.min() >= sep:
            return Sigma(tuple(zip(pts.tolist(), mults)))
    raise RuntimeError("could not place separated points")
