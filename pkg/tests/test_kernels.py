"""Bessel kernel accuracy and backend equivalence.

scipy.special is the oracle for J0/J1 values and zeros. The in-house
evaluators must track it to near machine precision over the full
argument range the toolkit uses (mode grids reach k*rho of a few
hundred; zero indices reach a few hundred as well).
"""

import numpy as np
import pytest

scipy_special = pytest.importorskip("scipy.special")

from sawcavity import kernels
from sawcavity.kernels import pure


def test_j0_matches_scipy_dense():
    x = np.linspace(0.0, 400.0, 100001)
    assert np.abs(kernels.j0(x) - scipy_special.j0(x)).max() < 1e-13


def test_j1_matches_scipy_dense():
    x = np.linspace(0.0, 400.0, 100001)
    assert np.abs(kernels.j1(x) - scipy_special.j1(x)).max() < 1e-13


def test_seam_region_is_smooth():
    # the series/asymptotic handoff at |x| = 8 must not leave a step
    x = np.linspace(7.999999, 8.000001, 4001)
    assert np.abs(kernels.j0(x) - scipy_special.j0(x)).max() < 1e-13
    assert np.abs(kernels.j1(x) - scipy_special.j1(x)).max() < 1e-13


def test_negative_arguments():
    x = np.linspace(-50.0, 50.0, 10001)
    assert np.abs(kernels.j0(x) - scipy_special.j0(x)).max() < 1e-13
    assert np.abs(kernels.j1(x) - scipy_special.j1(x)).max() < 1e-13


def test_scalar_paths():
    assert kernels.j0(0.0) == 1.0
    assert kernels.j1(0.0) == 0.0
    assert isinstance(kernels.j0(1.5), float)
    assert abs(kernels.j0(1.5) - scipy_special.j0(1.5)) < 1e-14


def test_j0_zeros_match_scipy():
    ns = [1, 2, 3, 5, 10, 50, 100, 500]
    ref = scipy_special.jn_zeros(0, max(ns))
    for n in ns:
        assert kernels.j0_zero(n) == pytest.approx(ref[n - 1], rel=1e-12)


def test_j0_zero_rejects_bad_index():
    with pytest.raises(Exception):
        kernels.j0_zero(0)


def test_backends_agree_bitwise():
    x = np.linspace(0.0, 300.0, 50001)
    assert np.array_equal(kernels.j0(x), pure.j0(x))
    assert np.array_equal(kernels.j1(x), pure.j1(x))
    for n in (1, 7, 123):
        assert float(pure.j0_zero(n)) == float(kernels.j0_zero(n))


def test_mode_grid_thread_count_is_invisible():
    coords = (np.arange(256) - 128) * 1e-6
    kwargs = dict(k_m=2 * np.pi / 40e-6, r_x=100e-6, r_z=110e-6, u0=1e-12)
    base = kernels.mode_grid(coords, coords, threads=1, **kwargs)
    for threads in (2, 3, 8):
        other = kernels.mode_grid(coords, coords, threads=threads, **kwargs)
        assert np.array_equal(base, other)


def test_mode_grid_matches_direct_formula():
    x = (np.arange(96) - 48) * 2e-6
    z = (np.arange(96) - 48) * 2e-6
    k = 2 * np.pi / 40e-6
    r_x, r_z, u0 = 80e-6, 120e-6, 3e-12
    got = kernels.mode_grid(x, z, k, r_x, r_z, u0)
    rbar = np.sqrt(r_x * r_z)
    rho = np.hypot(x[:, None] * rbar / r_x, z[None, :] * rbar / r_z)
    want = u0 * scipy_special.j0(k * rho) * np.exp(
        -(x[:, None] / r_x) ** 2 - (z[None, :] / r_z) ** 2)
    assert np.abs(got - want).max() < 1e-13 * u0
