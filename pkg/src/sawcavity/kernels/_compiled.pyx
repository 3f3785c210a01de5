# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the numerical kernels.

Same algorithms, branch points, and coefficient tables as ``pure``;
scalar C loops instead of NumPy array expressions. See pure.py for the
algorithm notes.
"""

from libc.math cimport cos, exp, hypot, sin, sqrt

import numpy as np

from . import _tables

BACKEND_NAME = "compiled"

DEF MAX_COEFFS = 24

cdef double _PI = 3.141592653589793

cdef int _NC = 0
cdef double _P0[MAX_COEFFS]
cdef double _Q0[MAX_COEFFS]
cdef double _P1[MAX_COEFFS]
cdef double _Q1[MAX_COEFFS]


def _load_tables():
    global _NC
    if len(_tables.P0) > MAX_COEFFS:
        raise ImportError("coefficient table longer than the compiled buffer")
    _NC = len(_tables.P0)
    for i in range(_NC):
        _P0[i] = _tables.P0[i]
        _Q0[i] = _tables.Q0HAT[i]
        _P1[i] = _tables.P1[i]
        _Q1[i] = _tables.Q1HAT[i]


_load_tables()


cdef double _clenshaw(const double* c, int n, double t) noexcept nogil:
    cdef double b1 = 0.0, b2 = 0.0, tmp
    cdef int k
    for k in range(n - 1, 0, -1):
        tmp = 2.0 * t * b1 - b2 + c[k]
        b2 = b1
        b1 = tmp
    return t * b1 - b2 + c[0]


cdef double _j0_scalar(double x) noexcept nogil:
    cdef double ax = x if x >= 0 else -x
    cdef double q, term, total, w, t, chi
    cdef int m
    if ax < 8.0:
        q = 0.25 * ax * ax
        term = 1.0
        total = 1.0
        for m in range(1, 36):
            term = term * (-q) / (m * m)
            total += term
        return total
    w = (8.0 / ax) ** 2
    t = 2.0 * w - 1.0
    chi = ax - 0.25 * _PI
    return sqrt(2.0 / (_PI * ax)) * (
        _clenshaw(_P0, _NC, t) * cos(chi)
        - (8.0 / ax) * _clenshaw(_Q0, _NC, t) * sin(chi))


cdef double _j1_scalar(double x) noexcept nogil:
    cdef double ax = x if x >= 0 else -x
    cdef double sign = 1.0 if x > 0 else (-1.0 if x < 0 else 0.0)
    cdef double q, term, total, w, t, chi
    cdef int m
    if ax < 8.0:
        q = 0.25 * ax * ax
        term = 0.5
        total = 0.5
        for m in range(1, 36):
            term = term * (-q) / (m * (m + 1))
            total += term
        return sign * ax * total
    w = (8.0 / ax) ** 2
    t = 2.0 * w - 1.0
    chi = ax - 0.75 * _PI
    return sign * sqrt(2.0 / (_PI * ax)) * (
        _clenshaw(_P1, _NC, t) * cos(chi)
        - (8.0 / ax) * _clenshaw(_Q1, _NC, t) * sin(chi))


def j0(x):
    """Bessel function of the first kind, order zero."""
    arr = np.asarray(x, dtype=np.float64)
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = np.empty_like(flat)
    cdef double[::1] xv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _j0_scalar(xv[i])
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def j1(x):
    """Bessel function of the first kind, order one (odd in x)."""
    arr = np.asarray(x, dtype=np.float64)
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = np.empty_like(flat)
    cdef double[::1] xv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _j1_scalar(xv[i])
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def j0_zero(n):
    """n-th positive zero of J0 (n >= 1), via McMahon estimate plus Newton."""
    if n < 1:
        raise ValueError("zero index must be >= 1")
    cdef double b = (n - 0.25) * _PI
    cdef double x = (b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b ** 3)
                     + 3779.0 / (15360.0 * b ** 5))
    cdef int k
    for k in range(3):
        x = x + _j0_scalar(x) / _j1_scalar(x)
    return x


def mode_block(x_coords, z_coords, double k_m, double r_x, double r_z,
               double u0, out):
    """Row-block standing-wave synthesis; same contract as pure.mode_block."""
    xs = np.ascontiguousarray(x_coords, dtype=np.float64)
    zs = np.ascontiguousarray(z_coords, dtype=np.float64)
    cdef double[::1] xv = xs
    cdef double[::1] zv = zs
    cdef double[:, ::1] ov = out
    cdef double rbar = sqrt(r_x * r_z)
    cdef double sx = rbar / r_x, sz = rbar / r_z
    cdef Py_ssize_t i, j, nx = xv.shape[0], nz = zv.shape[0]
    cdef double gx, rho
    with nogil:
        for i in range(nx):
            gx = exp(-(xv[i] / r_x) * (xv[i] / r_x))
            for j in range(nz):
                rho = hypot(xv[i] * sx, zv[j] * sz)
                ov[i, j] = (u0 * gx * exp(-(zv[j] / r_z) * (zv[j] / r_z))
                            * _j0_scalar(k_m * rho))
