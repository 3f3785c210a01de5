"""RF trace fitting, sideband spectra, and RF power calibrations."""

import math

import numpy as np
import pytest

from sawcavity.constants import HBAR
from sawcavity.errors import ComputationError, ValidationError
from sawcavity.fitting import gaussian_offset, lorentzian_power
from sawcavity.kernels import j1
from sawcavity.spectra import (RfTrace, fit_resonance,
                               phase_from_sideband_calibration,
                               phonon_number_from_reflection,
                               read_trace_csv, s21_fano_model,
                               sideband_power_fraction, sideband_spectrum)


def _sweep(n=801):
    return np.linspace(80e6, 93e6, n)


class TestSidebandFraction:
    def test_reference_values(self):
        assert sideband_power_fraction(0.0) == 0.0
        assert sideband_power_fraction(0.1) \
            == pytest.approx(2.4938e-3, rel=1e-4)

    def test_small_angle_quadratic(self):
        for phi in (0.01, 0.1, 0.3, 0.5):
            assert abs(sideband_power_fraction(phi) - phi * phi / 4) \
                <= phi**4 / 8
            assert sideband_power_fraction(-phi) \
                == sideband_power_fraction(phi)

    def test_doubling_rule(self):
        phi = 1e-4
        ratio = sideband_power_fraction(2 * phi) / sideband_power_fraction(phi)
        assert ratio == pytest.approx(4.0, rel=1e-6)

    def test_deep_modulation_rejected(self):
        with pytest.raises(ValidationError, match="modulation too deep"):
            sideband_power_fraction(1.0)


class TestFanoModel:
    def test_far_detuned_limit(self):
        val = s21_fano_model(86.4e6 + 1e12, 86.4e6, 1.7e6,
                             0.2 + 0.1j, 1.0, 0.5)
        assert val == pytest.approx(0.2 + 0.1j, rel=1e-5)

    def test_on_resonance_pure_path(self):
        val = s21_fano_model(86.4e6, 86.4e6, 1.7e6, 0.0, 0.7, 0.0)
        assert val == pytest.approx(0.7 + 0.0j, rel=1e-12)

    def test_vectorized(self):
        f = _sweep(101)
        vals = s21_fano_model(f, 86.4e6, 1.7e6, 0.05, 1.0, 0.6)
        assert vals.shape == f.shape
        assert np.iscomplexobj(vals)


class TestFitResonance:
    def test_fano_design_point(self):
        f = _sweep()
        trace = RfTrace(f, s21_fano_model(f, 86.4e6, 1.7e6, 0.05, 1.0, 0.6))
        fit = fit_resonance(trace, "fano")
        assert fit.f0 == pytest.approx(86.4e6, rel=1e-6)
        assert fit.linewidth_fwhm == pytest.approx(1.7e6, rel=1e-4)
        assert fit.q == pytest.approx(50.8, abs=0.5)

    def test_high_q_resonance(self):
        f = np.linspace(97.8e6, 98.8e6, 1001)
        lw = 98.3e6 / 450.0
        trace = RfTrace(f, s21_fano_model(f, 98.3e6, lw, 0.02, 0.8, -0.4))
        fit = fit_resonance(trace, "fano")
        assert fit.q == pytest.approx(450.0, rel=0.01)

    def test_lorentzian_and_gaussian_round_trip(self):
        f = _sweep()
        lor = RfTrace(f, lorentzian_power(f, (1.0, 86.4e6, 1.7e6, 0.05)))
        fit = fit_resonance(lor, "lorentzian")
        assert fit.f0 == pytest.approx(86.4e6, rel=1e-9)
        assert fit.linewidth_fwhm == pytest.approx(1.7e6, rel=1e-6)

        r = 1.7e6 / (2 * math.sqrt(math.log(2)))
        gau = RfTrace(f, gaussian_offset(f, (1.0, 86.4e6, r, 0.05)))
        gfit = fit_resonance(gau, "gaussian")
        assert gfit.linewidth_fwhm == pytest.approx(1.7e6, rel=1e-6)

    def test_q_linewidth_consistency(self):
        f = _sweep()
        trace = RfTrace(f, lorentzian_power(f, (1.0, 86.4e6, 1.7e6, 0.0)))
        fit = fit_resonance(trace, "lorentzian")
        assert fit.q * fit.linewidth_fwhm \
            == pytest.approx(fit.f0, rel=1e-9)

    def test_pure_noise_rejected(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            trace = RfTrace(_sweep(), 0.1 + rng.normal(0, 0.01, 801))
            with pytest.raises(ComputationError,
                               match="no resonance found"):
                fit_resonance(trace, "lorentzian")

    def test_dip_is_a_feature_too(self):
        f = _sweep()
        trace = RfTrace(f, lorentzian_power(f, (-0.8, 86.4e6, 1.7e6, 1.0)))
        fit = fit_resonance(trace, "lorentzian")
        assert fit.f0 == pytest.approx(86.4e6, rel=1e-6)
        assert fit.amplitude < 0

    def test_unknown_model(self):
        trace = RfTrace(_sweep(),
                        lorentzian_power(_sweep(), (1, 86.4e6, 1.7e6, 0)))
        with pytest.raises(ValidationError):
            fit_resonance(trace, "voigt")


class TestRfTrace:
    def test_shape_validation(self):
        with pytest.raises(ValidationError):
            RfTrace(np.array([1.0, 2.0]), np.array([1.0, 2.0]))  # too short
        f = _sweep(32)
        with pytest.raises(ValidationError):
            RfTrace(f[::-1], np.ones(32))  # not increasing
        with pytest.raises(ValidationError):
            RfTrace(f, np.ones(31))

    def test_power_of_complex_trace(self):
        f = _sweep(32)
        values = np.full(32, 0.3 + 0.4j)
        assert np.allclose(RfTrace(f, values).power, 0.25)


class TestSidebandSpectrum:
    def test_peak_at_resonance_and_normalization(self):
        f = _sweep()
        sb = sideband_spectrum(86.4e6, 50.8, f, 6.29e-5)
        assert sb.sideband_power.max() == pytest.approx(1.0)
        assert f[np.argmax(sb.sideband_power)] \
            == pytest.approx(86.4e6, abs=f[1] - f[0])
        assert sb.sideband_power.min() >= 0.0

    def test_width_matches_closed_form(self):
        # solve J1(phi chi)^2 = J1(phi)^2 / 2 for chi, then invert the
        # susceptibility to get the expected half width
        f0, q, phi = 86.4e6, 50.8, 0.2
        target = j1(phi) ** 2 / 2.0
        lo, hi = 0.0, 1.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if j1(phi * mid) ** 2 > target:
                hi = mid
            else:
                lo = mid
        chi_half = 0.5 * (lo + hi)
        expected_fwhm = (f0 / q) * math.sqrt(1.0 / chi_half**2 - 1.0)

        f = np.linspace(f0 - 8e6, f0 + 8e6, 160001)
        sb = sideband_spectrum(f0, q, f, phi)
        above = f[sb.sideband_power >= 0.5]
        measured = above[-1] - above[0]
        assert measured == pytest.approx(expected_fwhm, rel=1e-3)

    def test_power_ratio_300(self):
        f = _sweep()
        strong = sideband_spectrum(86.4e6, 50.8, f, 1e-3)
        weak = sideband_spectrum(86.4e6, 50.8, f, 1e-3 / math.sqrt(300))
        # normalization hides the scale; compare raw peak fractions
        ratio = sideband_power_fraction(1e-3) \
            / sideband_power_fraction(1e-3 / math.sqrt(300))
        assert ratio == pytest.approx(300.0, rel=1e-4)
        assert np.allclose(strong.sideband_power, weak.sideband_power,
                           rtol=1e-5)


class TestCalibrations:
    def test_phonon_number_design_point(self):
        # 1 pW absorbed at 87 MHz with q = 50
        p_in = 1e-12 / (1 - 0.8**2)
        n = phonon_number_from_reflection(p_in, 0.8, 87e6, 50.0)
        e_stored = 1e-12 * 50.0 / (2 * math.pi * 87e6)
        assert n == pytest.approx(e_stored / (HBAR * 2 * math.pi * 87e6),
                                  rel=1e-12)
        assert n == pytest.approx(1.587e6, rel=1e-3)

    def test_perfect_reflection_stores_nothing(self):
        assert phonon_number_from_reflection(1e-6, 1.0, 87e6, 50.0) == 0.0

    def test_linearity_and_round_trip(self):
        n1 = phonon_number_from_reflection(1e-6, 0.5, 87e6, 50.0)
        n2 = phonon_number_from_reflection(2e-6, 0.5, 87e6, 50.0)
        assert n2 == pytest.approx(2 * n1, rel=1e-12)
        # invert back to absorbed power
        p_abs = n1 * HBAR * (2 * math.pi * 87e6) ** 2 / 50.0
        assert p_abs == pytest.approx(1e-6 * 0.75, rel=1e-12)

    def test_nonphysical_reflection(self):
        with pytest.raises(ValidationError, match="nonphysical reflection"):
            phonon_number_from_reflection(1e-6, 1.2, 87e6, 50.0)

    def test_phase_calibration(self):
        assert phase_from_sideband_calibration(1e-9, 1e-9, 1e-3) \
            == pytest.approx(1e-3)
        assert phase_from_sideband_calibration(4e-9, 1e-9, 1e-3) \
            == pytest.approx(2e-3)

    def test_phase_calibration_consistency(self):
        phi_ref = 0.05
        phi = 0.1
        p_ratio = sideband_power_fraction(phi) \
            / sideband_power_fraction(phi_ref)
        got = phase_from_sideband_calibration(p_ratio, 1.0, phi_ref)
        # sqrt scaling ignores the J1 curvature, a ~0.1% effect here
        assert got == pytest.approx(phi, rel=2e-3)


class TestTraceCsv:
    def test_complex_trace(self):
        text = ("frequency_hz,value_re,value_im\n"
                + "\n".join(f"{80e6 + i * 1e5},0.5,{0.1 * (i % 3)}"
                            for i in range(32)))
        trace = read_trace_csv(text)
        assert trace.frequencies.size == 32
        assert np.iscomplexobj(trace.values)
        assert trace.values[1] == pytest.approx(0.5 + 0.1j)

    def test_power_trace(self):
        text = ("frequency_hz,power\n"
                + "\n".join(f"{80e6 + i * 1e5},{1.0 + i}"
                            for i in range(20)))
        trace = read_trace_csv(text)
        assert not np.iscomplexobj(trace.values)
        assert trace.values[3] == 4.0

    def test_bad_header(self):
        with pytest.raises(ValidationError):
            read_trace_csv("f,p\n1,2\n")
