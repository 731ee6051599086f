"""Numpy/scipy implementations of the hot kernels.

Signatures and results match :mod:`malmquist._ckernels` exactly; this module
is used whenever the compiled extension is missing or ``MALMQUIST_PURE`` is set.
"""
from __future__ import annotations

import numpy as np
from scipy.signal import lfilter


def malmquist_taylor(points: np.ndarray, degree: int) -> np.ndarray:
    n = len(points)
    out = np.zeros((n, degree + 1), dtype=np.complex128)
    pref = np.zeros(degree + 1, dtype=np.complex128)
    pref[0] = 1.0
    for k, lam in enumerate(points):
        lamc = np.conj(lam)
        c = np.sqrt(1.0 - abs(lam) ** 2)
        out[k] = lfilter([c], [1.0, -lamc], pref)
        pref = lfilter([lam, -1.0], [1.0, -lamc], pref)
    return out


def malmquist_taylor_ext(points: np.ndarray, degree: int) -> np.ndarray:
    # scipy's lfilter has no long double path, so the recurrences run in Python
    n = len(points)
    L = degree + 1
    out = np.zeros((n, L), dtype=np.clongdouble)
    pref = [np.clongdouble(0)] * L
    pref[0] = np.clongdouble(1)
    for k in range(n):
        lam = np.clongdouble(points[k])
        lamc = np.conj(lam)
        c = np.sqrt(np.longdouble(1) - (lam.real * lam.real + lam.imag * lam.imag))
        h = np.clongdouble(0)
        row = out[k]
        for j in range(L):
            h = lamc * h + c * pref[j]
            row[j] = h
        h = prev = np.clongdouble(0)
        for j in range(L):
            cur = pref[j]
            h = lamc * h + lam * cur - prev
            prev = cur
            pref[j] = h
    return out


def basis_eval(points: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.empty((len(points), len(z)), dtype=np.complex128)
    pref = np.ones(len(z), dtype=np.complex128)
    for k, lam in enumerate(points):
        den = 1.0 - np.conj(lam) * z
        out[k] = pref * np.sqrt(1.0 - abs(lam) ** 2) / den
        pref = pref * (lam - z) / den
    return out


def combination_eval(points: np.ndarray, coords: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(z), dtype=np.complex128)
    pref = np.ones(len(z), dtype=np.complex128)
    for lam, c in zip(points, coords):
        den = 1.0 - np.conj(lam) * z
        acc += c * pref * np.sqrt(1.0 - abs(lam) ** 2) / den
        pref = pref * (lam - z) / den
    return acc


def blaschke_eval(points: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.ones(len(z), dtype=np.complex128)
    for lam in points:
        acc = acc * (lam - z) / (1.0 - np.conj(lam) * z)
    return acc
