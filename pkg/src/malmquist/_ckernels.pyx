# cython: language_level=3
"""Compiled inner loops for Malmquist-basis expansion and evaluation.

Every function here has a drop-in twin in :mod:`malmquist._pykernels`;
:mod:`malmquist.kernels` picks one at import time.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, sqrtl

cnp.import_array()

ctypedef double complex cplx


cdef inline double _abs2(cplx z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


def malmquist_taylor(const cplx[::1] points, Py_ssize_t degree):
    """Taylor coefficients 0..degree of every Malmquist basis element.

    Returns an (n, degree + 1) complex array; row k holds e_{k+1}.
    """
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t L = degree + 1
    out_arr = np.zeros((n, L), dtype=np.complex128)
    pref_arr = np.zeros(L, dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef cplx[::1] pref = pref_arr
    cdef Py_ssize_t k, j
    cdef cplx lam, lamc, h, prev_in, cur
    cdef double c
    pref[0] = 1.0
    with nogil:
        for k in range(n):
            lam = points[k]
            lamc = lam.conjugate()
            c = sqrt(1.0 - _abs2(lam))
            # e_k = c * pref / (1 - conj(lam) z)
            h = 0
            for j in range(L):
                h = lamc * h + c * pref[j]
                out[k, j] = h
            # pref <- pref * (lam - z) / (1 - conj(lam) z)
            h = 0
            prev_in = 0
            for j in range(L):
                cur = pref[j]
                h = lamc * h + lam * cur - prev_in
                prev_in = cur
                pref[j] = h
    return out_arr


ctypedef long double complex lcplx


def malmquist_taylor_ext(const cplx[::1] points, Py_ssize_t degree):
    """:func:`malmquist_taylor` carried out in long double precision."""
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t L = degree + 1
    out_arr = np.zeros((n, L), dtype=np.clongdouble)
    pref_arr = np.zeros(L, dtype=np.clongdouble)
    cdef lcplx[:, ::1] out = out_arr
    cdef lcplx[::1] pref = pref_arr
    cdef Py_ssize_t k, j
    cdef lcplx lam, lamc, h, prev_in, cur
    cdef long double c, re, im
    pref[0] = 1.0
    with nogil:
        for k in range(n):
            lam = points[k]
            lamc = lam.conjugate()
            re = lam.real
            im = lam.imag
            c = sqrtl(1.0 - (re * re + im * im))
            h = 0
            for j in range(L):
                h = lamc * h + c * pref[j]
                out[k, j] = h
            h = 0
            prev_in = 0
            for j in range(L):
                cur = pref[j]
                h = lamc * h + lam * cur - prev_in
                prev_in = cur
                pref[j] = h
    return out_arr


cdef inline cplx _inv(cplx d) noexcept nogil:
    # 1/d as conj(d)/|d|^2; d = 1 - conj(lam) z stays away from 0 on the closed disc
    cdef double a = 1.0 / _abs2(d)
    return d.conjugate() * a


def basis_eval(const cplx[::1] points, const cplx[::1] z):
    """Values e_k(z_i) as an (n, len(z)) array."""
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t m = z.shape[0]
    out_arr = np.empty((n, m), dtype=np.complex128)
    pref_arr = np.ones(m, dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef cplx[::1] pref = pref_arr
    cdef Py_ssize_t k, i
    cdef cplx lam, lamc, zi, r
    cdef double c
    with nogil:
        # k outer so every row of ``out`` is written contiguously
        for k in range(n):
            lam = points[k]
            lamc = lam.conjugate()
            c = sqrt(1.0 - _abs2(lam))
            for i in range(m):
                zi = z[i]
                r = _inv(1.0 - lamc * zi)
                out[k, i] = pref[i] * (c * r)
                pref[i] = pref[i] * (lam - zi) * r
    return out_arr


def combination_eval(const cplx[::1] points, const cplx[::1] coords,
                     const cplx[::1] z):
    """Values of sum_k coords[k] e_k at each z_i."""
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t m = z.shape[0]
    out_arr = np.zeros(m, dtype=np.complex128)
    pref_arr = np.ones(m, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef cplx[::1] pref = pref_arr
    cdef Py_ssize_t k, i
    cdef cplx lam, lamc, zi, r, w
    with nogil:
        for k in range(n):
            lam = points[k]
            lamc = lam.conjugate()
            w = coords[k] * sqrt(1.0 - _abs2(lam))
            for i in range(m):
                zi = z[i]
                r = _inv(1.0 - lamc * zi)
                out[i] = out[i] + w * pref[i] * r
                pref[i] = pref[i] * (lam - zi) * r
    return out_arr


def blaschke_eval(const cplx[::1] points, const cplx[::1] z):
    """Finite Blaschke product over ``points`` evaluated at each z_i."""
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t m = z.shape[0]
    out_arr = np.ones(m, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef Py_ssize_t k, i
    cdef cplx lam, lamc, zi
    with nogil:
        for k in range(n):
            lam = points[k]
            lamc = lam.conjugate()
            for i in range(m):
                zi = z[i]
                out[i] = out[i] * (lam - zi) * _inv(1.0 - lamc * zi)
    return out_arr
