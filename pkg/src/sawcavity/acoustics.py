"""Focused standing-wave mode synthesis, mode areas, and zero-point motion.

The focusing resonator concentrates a standing SAW at its center. Its
amplitude follows a zeroth-order Bessel profile in elliptically
rescaled coordinates under a Gaussian envelope; the envelope 1/e radii
(r_x, r_z) set the effective mode area. This module synthesizes that
field on a grid, evaluates the closed-form Bessel mode areas, fits 1/e
radii from measured or synthetic maps, and converts mode properties to
zero-point displacement.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .constants import HBAR
from .errors import ValidationError
from .fitting import fit_curve, gaussian_offset


@dataclass(frozen=True)
class ModeArea:
    """Closed-form area measures of a circular focusing mode."""

    a_exact: float  # m^2, pi r^2 J1(alpha_0n)^2
    a_asymptotic: float  # m^2, lambda r / pi
    eta: float  # a_exact / (lambda r)
    n_nodes: int
    r_eff: float  # m


@dataclass(frozen=True, eq=False)
class ModeField:
    """Gridded standing-wave displacement amplitude.

    ``u_amplitude`` is the signed field u0 * J0(k_m rho) * envelope;
    ``envelope`` is the nonnegative Gaussian factor alone, whose 1/e
    radii are (r_x, r_z) by construction. x varies along axis 0, z
    along axis 1, and the origin is always a grid sample.
    """

    x: np.ndarray  # m, 1D
    z: np.ndarray  # m, 1D
    u_amplitude: np.ndarray  # m, 2D signed
    envelope: np.ndarray  # m, 2D nonnegative
    u0: float  # m
    k_m: float  # 1/m
    decay_depth: float  # m
    r_x: float  # m
    r_z: float  # m

    @property
    def grid_spacing(self):
        return float(self.x[1] - self.x[0])

    @property
    def lambda_saw(self):
        return 2.0 * math.pi / self.k_m


def bessel_mode_area(r_eff, lambda_saw):
    """Mode area of a circular standing-wave resonator of radius r_eff.

    The exact form integrates the Bessel intensity profile out to the
    n-th node pinned at the resonator edge; the asymptotic form
    lambda * r / pi is its large-n limit. eta = a_exact / (lambda r)
    converges to 1/pi from above as the node count grows.
    """
    if lambda_saw <= 0:
        raise ValidationError("invalid wavelength: must be positive")
    if r_eff <= 0.5 * lambda_saw:
        raise ValidationError(
            "sub-wavelength resonator: radius must exceed half a wavelength")
    n_nodes = int(round(2.0 * r_eff / lambda_saw))
    alpha = kernels.j0_zero(n_nodes)
    a_exact = math.pi * r_eff * r_eff * kernels.j1(alpha) ** 2
    a_asymptotic = lambda_saw * r_eff / math.pi
    eta = a_exact / (lambda_saw * r_eff)
    return ModeArea(a_exact=a_exact, a_asymptotic=a_asymptotic, eta=eta,
                    n_nodes=n_nodes, r_eff=r_eff)


def synthesize_mode_field(r_x, r_z, lambda_saw, u0, grid_extent, grid_points,
                          decay_depth=None, threads=1):
    """Sample the focused standing-wave mode on a square (x, z) grid.

    The grid spans [-grid_extent, grid_extent) with grid_points samples
    per axis, placing the origin exactly on a sample so the peak value
    is u0. decay_depth defaults to lambda_saw / (2 pi), the scale over
    which the surface displacement falls off into the substrate.
    """
    if min(r_x, r_z, lambda_saw, u0, grid_extent) <= 0:
        raise ValidationError("mode parameters must be positive")
    if grid_points < 64:
        raise ValidationError("grid must have at least 64 points per axis")
    if grid_extent < lambda_saw:
        raise ValidationError(
            "grid too small: extent must cover at least one wavelength")
    if decay_depth is None:
        decay_depth = lambda_saw / (2.0 * math.pi)
    elif decay_depth <= 0:
        raise ValidationError("decay depth must be positive")

    n = int(grid_points)
    spacing = 2.0 * grid_extent / n
    coords = (np.arange(n) - n // 2) * spacing
    k_m = 2.0 * math.pi / lambda_saw
    u = kernels.mode_grid(coords, coords, k_m, r_x, r_z, u0, threads=threads)
    envelope = u0 * np.exp(-((coords[:, None] / r_x) ** 2)
                           - (coords[None, :] / r_z) ** 2)
    return ModeField(x=coords, z=coords, u_amplitude=u, envelope=envelope,
                     u0=float(u0), k_m=k_m, decay_depth=float(decay_depth),
                     r_x=float(r_x), r_z=float(r_z))


def fit_mode_radii(map_values, x, z, axis):
    """1/e radius of a Gaussian fitted to a summed map profile.

    Sums the nonnegative 2D map along the orthogonal axis, then fits
    a * exp(-((c - c0)/R)^2) + b to the resulting profile by damped
    least squares and returns R in m. ``axis`` selects the profile
    direction: "x" sums over z and returns the radius along x, "z" the
    transpose. Initialization uses the peak position and the second
    moment of the background-subtracted profile.
    """
    values = np.asarray(map_values, dtype=float)
    if values.ndim != 2:
        raise ValidationError("map must be two-dimensional")
    if np.any(values < 0):
        raise ValidationError("map must be nonnegative")
    if not np.any(values > 0):
        raise ValidationError("map is identically zero")
    key = str(axis).lower()
    if key == "x":
        profile = values.sum(axis=1)
        coords = np.asarray(x, dtype=float)
    elif key == "z":
        profile = values.sum(axis=0)
        coords = np.asarray(z, dtype=float)
    else:
        raise ValidationError(f"axis must be 'x' or 'z', got {axis!r}")
    if profile.size != coords.size:
        raise ValidationError("coordinate vector does not match the map")
    if profile.size < 8:
        raise ValidationError("need at least 8 samples along the fit axis")

    background = float(profile.min())
    peak = float(profile.max())
    center = float(coords[int(np.argmax(profile))])
    weights = profile - background
    total = float(weights.sum())
    spacing = abs(float(coords[1] - coords[0]))
    if total > 0:
        sigma = math.sqrt(float(((coords - center) ** 2 * weights).sum())
                          / total)
    else:
        sigma = spacing
    sigma = max(sigma, spacing)

    span = float(coords[-1] - coords[0])
    amplitude = peak - background
    p0 = (amplitude, center, sigma, background)
    scales = (max(amplitude, 1e-30), abs(span), abs(span), max(amplitude,
                                                               1e-30))
    result = fit_curve(gaussian_offset, coords, profile, p0, scales=scales)
    return abs(float(result.params[2]))


def effective_area_from_radii(r_x, r_z):
    """Elliptical effective mode area pi * r_x * r_z in m^2."""
    if r_x <= 0 or r_z <= 0:
        raise ValidationError("radii must be positive")
    return math.pi * r_x * r_z


def zero_point_amplitude(material, area, f_m, decay_depth):
    """Zero-point displacement of the mode treated as one oscillator.

    The effective mass is density * area * decay_depth; the zero-point
    amplitude is sqrt(hbar / (2 m omega)) with omega = 2 pi f_m.
    """
    if min(area, f_m, decay_depth) <= 0:
        raise ValidationError("area, frequency, and depth must be positive")
    omega = 2.0 * math.pi * f_m
    mass = material.density * area * decay_depth
    return math.sqrt(HBAR / (2.0 * mass * omega))


def strain_to_amplitude(shear_strain, k_m):
    """Displacement amplitude U = strain / k_m for a surface shear strain.

    The standing wave's surface shear is k_m * U, so a measured or
    inferred shear strain converts directly to displacement.
    """
    if k_m <= 0:
        raise ValidationError("wavenumber must be positive")
    return shear_strain / k_m
