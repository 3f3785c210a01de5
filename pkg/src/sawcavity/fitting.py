"""Damped nonlinear least-squares engine and standard line-shape models.

One fitting machine serves the whole toolkit: resonance extraction
from RF traces, linewidth recovery from cavity-filtered spectra, and
the one-dimensional Gaussian profile fits of mode maps. It is a
Levenberg-Marquardt iteration with a numerically differenced Jacobian,
multiplicative damping adaptation, and deterministic behavior for
identical inputs.
"""

from dataclasses import dataclass

import numpy as np

from .errors import FitError

_DAMPING_START = 1e-3
_DAMPING_FACTOR = 10.0
_DAMPING_CEILING = 1e12
_REL_TOL = 1e-9
_MAX_ITER = 200


@dataclass(frozen=True)
class FitResult:
    """Converged parameter vector with diagnostics."""

    params: np.ndarray
    cost: float  # sum of squared residuals
    residual_rms: float
    iterations: int


def _jacobian(residual_fn, params, scales):
    """Central-difference Jacobian of the residual vector."""
    cols = []
    for j in range(params.size):
        h = 1e-6 * scales[j]
        left = params.copy()
        right = params.copy()
        left[j] -= h
        right[j] += h
        cols.append((np.asarray(residual_fn(right), dtype=float)
                     - np.asarray(residual_fn(left), dtype=float)) / (2.0 * h))
    return np.column_stack(cols)


def levenberg_marquardt(residual_fn, p0, scales=None, rel_tol=_REL_TOL,
                        max_iter=_MAX_ITER):
    """Minimize sum(residual_fn(p)**2) from the starting point p0.

    Parameters
    ----------
    residual_fn : callable mapping a parameter vector to a residual array.
    p0 : initial parameter vector.
    scales : typical magnitude per parameter, used for difference steps
        and the step-size convergence test. Defaults to |p0| with unity
        floor for zero entries.
    rel_tol : relative tolerance on cost decrease and step size.
    max_iter : iteration budget before the fit is declared failed.

    Raises
    ------
    FitError : when damping is exhausted without any cost reduction or
        the iteration budget runs out, with the residual rms attached.
    """
    p = np.asarray(p0, dtype=float).copy()
    if scales is None:
        scales = np.where(np.abs(p) > 0, np.abs(p), 1.0)
    else:
        scales = np.asarray(scales, dtype=float)
        if np.any(scales <= 0):
            raise ValueError("parameter scales must be positive")

    r = np.asarray(residual_fn(p), dtype=float)
    cost = float(r @ r)
    lam = _DAMPING_START
    n_pts = r.size

    for iteration in range(1, max_iter + 1):
        jac = _jacobian(residual_fn, p, scales)
        grad = jac.T @ r
        hess = jac.T @ jac
        diag = np.diag(hess).copy()
        diag[diag <= 0] = 1.0

        step = None
        cost_try = None
        while lam <= _DAMPING_CEILING:
            try:
                step = np.linalg.solve(hess + lam * np.diag(diag), -grad)
            except np.linalg.LinAlgError:
                lam *= _DAMPING_FACTOR
                continue
            r_try = np.asarray(residual_fn(p + step), dtype=float)
            c = float(r_try @ r_try)
            if np.isfinite(c) and c <= cost:
                cost_try = c
                break
            lam *= _DAMPING_FACTOR
        if cost_try is None:
            raise FitError("fit failed: no descent direction",
                           residual_rms=np.sqrt(cost / n_pts))

        rel_drop = (cost - cost_try) / max(cost, np.finfo(float).tiny)
        step_small = bool(np.all(np.abs(step) <= rel_tol * scales))
        p = p + step
        r_new = np.asarray(residual_fn(p), dtype=float)
        cost = float(r_new @ r_new)
        r = r_new
        lam = max(lam / _DAMPING_FACTOR, 1e-14)
        if rel_drop <= rel_tol or step_small:
            return FitResult(params=p, cost=cost,
                             residual_rms=float(np.sqrt(cost / n_pts)),
                             iterations=iteration)

    raise FitError(f"fit failed: no convergence in {max_iter} iterations",
                   residual_rms=float(np.sqrt(cost / n_pts)))


def fit_curve(model_fn, x, y, p0, scales=None):
    """Least-squares fit of y = model_fn(x, params) over the sample points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)

    def residuals(params):
        return model_fn(x, params) - y

    return levenberg_marquardt(residuals, p0, scales=scales)


def gaussian_offset(x, params):
    """a * exp(-((x - x0)/r)^2) + b with params (a, x0, r, b)."""
    a, x0, r, b = params
    return a * np.exp(-(((x - x0) / r) ** 2)) + b


def lorentzian_power(f, params):
    """Lorentzian peak on a flat background, params (a, f0, fwhm, b)."""
    a, f0, fwhm, b = params
    hw = 0.5 * fwhm
    return a * hw * hw / ((f - f0) ** 2 + hw * hw) + b


def fano_power(f, params):
    """Power of a resonant amplitude interfering with a direct path.

    params (a, f0, fwhm, d, theta): |d + a*e^{i theta}*L(f)|^2 with
    L(f) = (fwhm/2) / (i (f - f0) + fwhm/2). The direct amplitude d is
    real; the overall phase of the sum is unobservable in power.
    """
    a, f0, fwhm, d, theta = params
    hw = 0.5 * fwhm
    lineshape = hw / (1j * (f - f0) + hw)
    return np.abs(d + a * np.exp(1j * theta) * lineshape) ** 2
