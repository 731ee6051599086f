"""Backend selection for the hot kernels.

The compiled Cython module is used when it imports; otherwise, or when the
environment variable ``MALMQUIST_PURE`` is set to a non-empty value other than
``0``, the numpy fallback is used. ``BACKEND`` names the active choice.
"""
from __future__ import annotations

import os

import numpy as np

from malmquist import _pykernels

_impl = _pykernels
BACKEND = "python"

if os.environ.get("MALMQUIST_PURE", "") in ("", "0"):
    try:
        from malmquist import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass


def _c(a) -> np.ndarray:
    return np.ascontiguousarray(np.atleast_1d(np.asarray(a, dtype=np.complex128)))


def malmquist_taylor(points, degree: int) -> np.ndarray:
    """Taylor coefficients (rows e_1..e_n, columns 0..degree)."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    return _impl.malmquist_taylor(_c(points), int(degree))


def malmquist_taylor_ext(points, degree: int) -> np.ndarray:
    """As :func:`malmquist_taylor`, in long double (clongdouble result)."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    return _impl.malmquist_taylor_ext(_c(points), int(degree))


def basis_eval(points, z) -> np.ndarray:
    return _impl.basis_eval(_c(points), _c(z))


def combination_eval(points, coords, z) -> np.ndarray:
    return _impl.combination_eval(_c(points), _c(coords), _c(z))


def blaschke_eval(points, z) -> np.ndarray:
    return _impl.blaschke_eval(_c(points), _c(z))
