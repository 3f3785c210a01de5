"""NumPy reference implementation of the numerical kernels.

Provides Bessel functions J0 and J1, zeros of J0, and the gridded
standing-wave synthesis loop. The compiled backend in ``_compiled``
implements the same algorithms with identical branch points and
coefficient tables; either module satisfies the interface re-exported
by ``sawcavity.kernels``.

Algorithm: Maclaurin series for |x| < 8, phase-amplitude form with
Chebyshev-expanded amplitude functions for |x| >= 8 (see _tables for
the form and its verification), zeros by Newton refinement of McMahon
asymptotic estimates. Accuracy is a few 1e-14 absolute over the range
exercised here, well inside the 1e-12 target.
"""

import numpy as np

from . import _tables

BACKEND_NAME = "pure"

_SERIES_TERMS = 36  # alternating series at x = 8 is negligible beyond ~30 terms
_SERIES_CUTOFF = 8.0


def _clenshaw(t, coeffs):
    b1 = np.zeros_like(t)
    b2 = np.zeros_like(t)
    for c in coeffs[:0:-1]:
        b1, b2 = 2.0 * t * b1 - b2 + c, b1
    return t * b1 - b2 + coeffs[0]


def _j0_series(x):
    q = 0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for m in range(1, _SERIES_TERMS):
        term = term * (-q) / (m * m)
        total += term
    return total


def _j1_series(x):
    q = 0.25 * x * x
    term = np.full_like(x, 0.5)
    total = np.full_like(x, 0.5)
    for m in range(1, _SERIES_TERMS):
        term = term * (-q) / (m * (m + 1))
        total += term
    return x * total


def _j_asymptotic(x, order):
    # x >= 8 only; w spans (0, 1]
    w = (8.0 / x) ** 2
    t = 2.0 * w - 1.0
    if order == 0:
        p = _clenshaw(t, _tables.P0)
        qh = _clenshaw(t, _tables.Q0HAT)
        chi = x - 0.25 * np.pi
    else:
        p = _clenshaw(t, _tables.P1)
        qh = _clenshaw(t, _tables.Q1HAT)
        chi = x - 0.75 * np.pi
    amp = np.sqrt(2.0 / (np.pi * x))
    return amp * (p * np.cos(chi) - (8.0 / x) * qh * np.sin(chi))


def _piecewise(x, series_fn, order):
    ax = np.abs(x)
    small = ax < _SERIES_CUTOFF
    out = np.empty_like(ax)
    if small.any():
        out[small] = series_fn(ax[small])
    big = ~small
    if big.any():
        out[big] = _j_asymptotic(ax[big], order)
    return out


def j0(x):
    """Bessel function of the first kind, order zero."""
    arr = np.asarray(x, dtype=np.float64)
    out = _piecewise(np.atleast_1d(arr), _j0_series, 0)
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def j1(x):
    """Bessel function of the first kind, order one (odd in x)."""
    arr = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(arr)
    out = np.sign(flat) * _piecewise(flat, _j1_series, 1)
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def j0_zero(n):
    """n-th positive zero of J0 (n >= 1), via McMahon estimate plus Newton."""
    if n < 1:
        raise ValueError("zero index must be >= 1")
    b = (n - 0.25) * np.pi
    x = b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b**3) + 3779.0 / (15360.0 * b**5)
    for _ in range(3):
        # J0'(x) = -J1(x)
        x = x + j0(x) / j1(x)
    return float(x)


def mode_block(x_coords, z_coords, k_m, r_x, r_z, u0, out):
    """Fill ``out`` with the focused standing-wave amplitude on a row block.

    out[i, j] = u0 * J0(k_m * rho(i, j)) * exp(-(x_i/r_x)^2 - (z_j/r_z)^2)
    with rho the elliptically rescaled radius using the geometric-mean
    radius of (r_x, r_z). Rows are independent, so callers may split the
    x axis across threads with disjoint ``out`` views.
    """
    rbar = np.sqrt(r_x * r_z)
    xs = np.asarray(x_coords, dtype=np.float64)[:, None]
    zs = np.asarray(z_coords, dtype=np.float64)[None, :]
    rho = np.hypot(xs * (rbar / r_x), zs * (rbar / r_z))
    np.multiply(
        u0 * np.exp(-((xs / r_x) ** 2) - (zs / r_z) ** 2),
        j0(k_m * rho),
        out=out,
    )
