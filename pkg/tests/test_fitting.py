"""Damped least-squares engine and the shared model functions."""

import math

import numpy as np
import pytest

from sawcavity.errors import FitError
from sawcavity.fitting import (FitResult, fano_power, fit_curve,
                               gaussian_offset, levenberg_marquardt,
                               lorentzian_power)


def test_linear_problem_in_one_step():
    x = np.linspace(0, 10, 50)
    y = 3.0 * x + 1.5

    def residual(p):
        return p[0] * x + p[1] - y

    result = levenberg_marquardt(residual, [0.0, 0.0])
    assert isinstance(result, FitResult)
    assert result.params[0] == pytest.approx(3.0, rel=1e-9)
    assert result.params[1] == pytest.approx(1.5, abs=1e-8)
    assert result.residual_rms < 1e-9


def test_gaussian_recovery_from_rough_start():
    x = np.linspace(-5, 5, 201)
    truth = (2.5, 0.3, 1.2, 0.4)
    y = gaussian_offset(x, truth)
    fit = fit_curve(gaussian_offset, x, y, (1.0, 0.0, 2.0, 0.0))
    assert np.allclose(fit.params, truth, rtol=1e-6)


def test_scales_handle_disparate_magnitudes():
    # frequency-sized and unit-sized parameters in one problem
    x = np.linspace(80e6, 93e6, 400)
    truth = (1.0, 86.4e6, 1.7e6, 0.05)
    y = lorentzian_power(x, truth)
    fit = fit_curve(lorentzian_power, x, y, (0.5, 85e6, 3e6, 0.0))
    assert fit.params[1] == pytest.approx(86.4e6, rel=1e-7)
    assert fit.params[2] == pytest.approx(1.7e6, rel=1e-6)


def test_divergence_reports_residual():
    # two iterations cannot reach a distant optimum
    x = np.linspace(-5, 5, 101)
    y = gaussian_offset(x, (2.5, 1.3, 0.7, 0.0))

    def residual(p):
        return gaussian_offset(x, (p[0], p[1], 0.7, 0.0)) - y

    with pytest.raises(FitError, match="fit failed"):
        levenberg_marquardt(residual, [0.01, -4.0], max_iter=2,
                            rel_tol=1e-300)


def test_lorentzian_model_shape():
    assert lorentzian_power(86.4e6, (1.0, 86.4e6, 1.7e6, 0.1)) \
        == pytest.approx(1.1)
    half = lorentzian_power(86.4e6 + 0.85e6, (1.0, 86.4e6, 1.7e6, 0.0))
    assert half == pytest.approx(0.5, rel=1e-12)


def test_gaussian_one_over_e_radius_meaning():
    val = gaussian_offset(1.2, (1.0, 0.0, 1.2, 0.0))
    assert val == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_fano_reduces_to_lorentzian_without_direct_path():
    f = np.linspace(80e6, 93e6, 301)
    fano = fano_power(f, (1.0, 86.4e6, 1.7e6, 0.0, 0.0))
    lor = lorentzian_power(f, (1.0, 86.4e6, 1.7e6, 0.0))
    assert np.allclose(fano, lor, rtol=1e-12)


def test_fano_asymmetry_with_direct_path():
    f0, lw = 86.4e6, 1.7e6
    p = (1.0, f0, lw, 0.3, 1.1)
    left = fano_power(f0 - lw, p)
    right = fano_power(f0 + lw, p)
    assert left != pytest.approx(right, rel=1e-3)
