"""RF resonance traces, sideband spectra, and resonance fitting.

The SAW resonance appears in transmission as a sharp feature riding on
a direct crosstalk background, so its line shape is generally a Fano
profile rather than a bare Lorentzian. This module synthesizes those
traces, extracts (f0, linewidth, Q) by least squares, converts phase
modulation depths to single-sideband powers, and calibrates phonon
number and modulation depth from power measurements.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .constants import HBAR
from .errors import ComputationError, ValidationError
from .fitting import (fano_power, fit_curve, gaussian_offset,
                      lorentzian_power)

_MODELS = ("lorentzian", "fano", "gaussian")
_GAUSS_FWHM = 2.0 * math.sqrt(math.log(2.0))  # FWHM = this * 1/e radius


@dataclass(frozen=True, eq=False)
class RfTrace:
    """A swept-frequency trace: complex amplitudes or real linear power."""

    frequencies: np.ndarray  # Hz, strictly increasing
    values: np.ndarray  # complex amplitude, or real linear power

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        v = np.asarray(self.values)
        v = v.astype(complex) if np.iscomplexobj(v) else v.astype(float)
        if f.ndim != 1 or v.ndim != 1 or f.size != v.size:
            raise ValidationError("frequencies and values must be equal-length"
                                  " vectors")
        if f.size < 16:
            raise ValidationError("trace must have at least 16 points")
        if not np.all(np.diff(f) > 0):
            raise ValidationError("frequencies must be strictly increasing")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "values", v)

    @property
    def power(self):
        """Linear power samples regardless of input representation."""
        if np.iscomplexobj(self.values):
            return np.abs(self.values) ** 2
        return self.values


@dataclass(frozen=True)
class ResonanceFit:
    """Extracted resonance parameters; q is f0 over the FWHM linewidth."""

    f0: float  # Hz
    linewidth_fwhm: float  # Hz
    q: float
    amplitude: float
    background: float
    fano_phase: float  # rad, zero for non-Fano models
    residual_rms: float
    model: str


@dataclass(frozen=True, eq=False)
class SidebandSpectrum:
    """Sideband power versus drive frequency, normalized to its peak."""

    drive_frequencies: np.ndarray  # Hz
    sideband_power: np.ndarray  # dimensionless, in [0, 1]


def sideband_power_fraction(phi):
    """Single-sideband power fraction J1(phi)^2 of a phase-modulated carrier."""
    if abs(phi) >= 1.0:
        raise ValidationError(
            "modulation too deep for small-signal model: |phi| must be < 1")
    return kernels.j1(phi) ** 2


def s21_fano_model(f, f0, linewidth, direct, resonant_amp, fano_phase):
    """Complex transmission of a resonance interfering with a direct path.

    direct + resonant_amp * e^{i fano_phase} * (hw) / (i (f - f0) + hw)
    with hw = linewidth/2. Far from resonance the value tends to the
    direct term; with no direct term the magnitude is a Lorentzian.
    """
    if linewidth <= 0:
        raise ValidationError("linewidth must be positive")
    hw = 0.5 * linewidth
    f = np.asarray(f, dtype=float)
    response = direct + resonant_amp * np.exp(1j * fano_phase) * hw / (
        1j * (f - f0) + hw)
    return response if response.ndim else complex(response)


def _smooth5(y):
    padded = np.pad(y, 2, mode="edge")
    kernel = np.full(5, 0.2)
    return np.convolve(padded, kernel, mode="valid")


def _peak_seed(f, y):
    """Initial estimates plus a prominence gate against featureless input.

    Peak location runs on a 5-point boxcar of the power trace so a
    single hot sample cannot win. The noise scale is the RMS of the raw
    outer-eighth tails around a straight line through them; smoothing
    the peak but not the noise floor keeps the 3 sigma gate strict
    enough that pure noise, whose smoothed extremes sit near 1.7 raw
    sigma, stays below it.
    """
    smooth = _smooth5(y)
    n = f.size
    eighth = max(n // 8, 2)
    tail_idx = np.r_[0:eighth, n - eighth:n]
    slope, intercept = np.polyfit(f[tail_idx], y[tail_idx], 1)
    trend = slope * f + intercept
    tail_sigma = float(np.sqrt(np.mean((y[tail_idx]
                                        - trend[tail_idx]) ** 2)))
    deviation = smooth - trend
    idx = int(np.argmax(np.abs(deviation)))
    prominence = abs(float(deviation[idx]))
    if prominence <= 3.0 * tail_sigma or prominence == 0.0:
        raise ComputationError("no resonance found")

    half = prominence / 2.0
    lo = idx
    while lo > 0 and abs(deviation[lo]) > half:
        lo -= 1
    hi = idx
    while hi < n - 1 and abs(deviation[hi]) > half:
        hi += 1
    fwhm = f[hi] - f[lo]
    if fwhm <= 0:
        fwhm = (f[-1] - f[0]) / 10.0
    return float(f[idx]), float(fwhm), float(deviation[idx]), \
        float(trend[idx])


def fit_resonance(trace, model="lorentzian"):
    """Extract resonance parameters from a trace by damped least squares.

    Complex traces are fitted in linear power |value|^2; real traces
    are taken as linear power directly. The Fano model is tried from
    several interference-phase starts and the lowest-cost solution
    wins, keeping the result deterministic.
    """
    if model not in _MODELS:
        raise ValidationError(f"unknown model {model!r}; choose from "
                              f"{', '.join(_MODELS)}")
    f = trace.frequencies
    y = trace.power
    f0_seed, fwhm_seed, amp_seed, bg_seed = _peak_seed(f, y)
    span = float(f[-1] - f[0])

    if model == "lorentzian":
        p0 = (amp_seed, f0_seed, fwhm_seed, bg_seed)
        scales = (max(abs(amp_seed), 1e-30), span, span,
                  max(abs(amp_seed), 1e-30))
        res = fit_curve(lorentzian_power, f, y, p0, scales=scales)
        a, f0, fwhm, b = res.params
        return ResonanceFit(f0=float(f0), linewidth_fwhm=abs(float(fwhm)),
                            q=float(f0) / abs(float(fwhm)),
                            amplitude=float(a), background=float(b),
                            fano_phase=0.0, residual_rms=res.residual_rms,
                            model=model)

    if model == "gaussian":
        r_seed = fwhm_seed / _GAUSS_FWHM
        p0 = (amp_seed, f0_seed, r_seed, bg_seed)
        scales = (max(abs(amp_seed), 1e-30), span, span,
                  max(abs(amp_seed), 1e-30))
        res = fit_curve(gaussian_offset, f, y, p0, scales=scales)
        a, f0, radius, b = res.params
        fwhm = _GAUSS_FWHM * abs(float(radius))
        return ResonanceFit(f0=float(f0), linewidth_fwhm=fwhm,
                            q=float(f0) / fwhm, amplitude=float(a),
                            background=float(b), fano_phase=0.0,
                            residual_rms=res.residual_rms, model=model)

    # Fano: power of direct + resonant interference. The phase start
    # matters, so try a fixed fan of seeds and keep the best fit.
    direct_seed = math.sqrt(max(bg_seed, 0.0))
    peak_amp = math.sqrt(max(y[int(np.argmin(np.abs(f - f0_seed)))], 0.0))
    a_seed = peak_amp - direct_seed
    if a_seed == 0.0:
        a_seed = math.copysign(math.sqrt(abs(amp_seed)), amp_seed)
    amp_scale = max(abs(a_seed), abs(direct_seed), 1e-30)
    best = None
    for theta0 in (0.0, 0.5 * math.pi, -0.5 * math.pi):
        p0 = (a_seed, f0_seed, fwhm_seed, direct_seed, theta0)
        scales = (amp_scale, span, span, amp_scale, 1.0)
        try:
            res = fit_curve(fano_power, f, y, p0, scales=scales)
        except ComputationError:
            continue
        if best is None or res.cost < best.cost:
            best = res
    if best is None:
        raise ComputationError("fit failed: no interference-phase start "
                               "converged")
    a, f0, fwhm, d, theta = best.params
    return ResonanceFit(f0=float(f0), linewidth_fwhm=abs(float(fwhm)),
                        q=float(f0) / abs(float(fwhm)), amplitude=float(a),
                        background=float(d),
                        fano_phase=float(math.remainder(theta, math.tau)),
                        residual_rms=best.residual_rms, model=model)


def sideband_spectrum(f0, q, drive_frequencies, phi_on_resonance):
    """Sideband power versus drive frequency across the SAW resonance.

    The modulation depth follows the resonator's susceptibility
    |chi(f)| = 1 / sqrt(1 + (2 q (f - f0)/f0)^2), so the sideband power
    is J1(phi * |chi|)^2, normalized here to its peak.
    """
    f = np.asarray(drive_frequencies, dtype=float)
    if f.ndim != 1 or f.size < 2 or not np.all(np.diff(f) > 0):
        raise ValidationError("drive sweep must be strictly increasing")
    if f0 <= 0 or q <= 0:
        raise ValidationError("resonance parameters must be positive")
    if abs(phi_on_resonance) >= 1.0:
        raise ValidationError(
            "modulation too deep for small-signal model: |phi| must be < 1")
    chi = 1.0 / np.sqrt(1.0 + (2.0 * q * (f - f0) / f0) ** 2)
    power = kernels.j1(phi_on_resonance * chi) ** 2
    peak = power.max()
    if peak > 0:
        power = power / peak
    return SidebandSpectrum(drive_frequencies=f, sideband_power=power)


def phonon_number_from_reflection(p_in, s11_mag, f0, q):
    """Phonon occupation from the absorbed RF power.

    Power not reflected at the port, p_in * (1 - |s11|^2), is taken to
    feed the resonant mode; stored energy is absorbed power times Q
    over the angular frequency, and the phonon number divides out one
    quantum. This absorbed-power accounting is the toolkit's declared
    convention for a calibration the hardware cannot pin down better.
    """
    if not 0.0 <= s11_mag <= 1.0:
        raise ValidationError("nonphysical reflection: |s11| must lie in "
                              "[0, 1]")
    if p_in < 0:
        raise ValidationError("input power must be nonnegative")
    if f0 <= 0 or q <= 0:
        raise ValidationError("resonance parameters must be positive")
    omega = 2.0 * math.pi * f0
    p_abs = p_in * (1.0 - s11_mag**2)
    return p_abs * q / (HBAR * omega * omega)


def phase_from_sideband_calibration(p_sb, p_sb_ref, phi_ref):
    """Modulation depth from sideband power against a calibrated reference.

    In the small-modulation regime sideband power scales as phi^2, so
    the unknown depth is phi_ref * sqrt(p_sb / p_sb_ref).
    """
    if p_sb <= 0 or p_sb_ref <= 0 or phi_ref <= 0:
        raise ValidationError("powers and reference phase must be positive")
    if phi_ref >= 1.0:
        raise ValidationError(
            "modulation too deep for small-signal model: phi_ref must be < 1")
    return phi_ref * math.sqrt(p_sb / p_sb_ref)


def read_trace_csv(text):
    """Parse a swept trace from CSV text.

    Accepts header ``frequency_hz,value_re,value_im`` for complex
    amplitudes or ``frequency_hz,power`` for real linear power.
    """
    lines = [ln.strip() for ln in str(text).splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("empty trace file")
    header = [h.strip().lower() for h in lines[0].split(",")]
    if header == ["frequency_hz", "value_re", "value_im"]:
        complex_input = True
    elif header == ["frequency_hz", "power"]:
        complex_input = False
    else:
        raise ValidationError(f"unrecognized trace header: {lines[0]!r}")
    freqs, values = [], []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(header):
            raise ValidationError(f"malformed trace row: {ln!r}")
        try:
            nums = [float(p) for p in parts]
        except ValueError as exc:
            raise ValidationError(f"non-numeric trace row: {ln!r}") from exc
        freqs.append(nums[0])
        values.append(complex(nums[1], nums[2]) if complex_input
                      else nums[1])
    return RfTrace(frequencies=np.array(freqs),
                   values=np.array(values))
