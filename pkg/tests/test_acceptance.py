"""Acceptance checks for the toolkit's headline numbers.

Each test pins one advertised behavior at its stated tolerance and
prints a criterion line, so `pytest -v` reads as a checklist.
"""

import dataclasses
import json
import math

import numpy as np
import pytest

from sawcavity.acoustics import (bessel_mode_area, effective_area_from_radii,
                                 synthesize_mode_field, zero_point_amplitude)
from sawcavity.cavity import (CalibrationBundle, CavityParams,
                              ProspectParams, antistokes_response,
                              cooperativity, coupling_budget,
                              g0_from_modulation)
from sawcavity.cli import main
from sawcavity.fitting import gaussian_offset, lorentzian_power
from sawcavity.kernels import j0_zero
from sawcavity.materials import material_for_cut, resonance_frequency
from sawcavity.optoelastics import (integrated_phase_map,
                                    polarization_selectivity)
from sawcavity.spectra import RfTrace, fit_resonance, s21_fano_model

LAMBDA_SAW = 40e-6
LAMBDA_OPT = 1.064e-6


def _mode_field(decay_depth=None):
    return synthesize_mode_field(100e-6, 110e-6, LAMBDA_SAW, 1e-12,
                                 256e-6, 512, decay_depth=decay_depth)


def test_criterion_01_resonance_frequencies():
    f_y = resonance_frequency(material_for_cut("Y"), LAMBDA_SAW)
    f_128y = resonance_frequency(material_for_cut("128Y"), LAMBDA_SAW)
    assert abs(f_y - 87.2e6) / 87.2e6 <= 1e-3
    assert abs(f_128y - 99.9e6) / 99.9e6 <= 1e-3
    print(f"criterion 01: PASS - 40 um resonances {f_y / 1e6:.3f} and "
          f"{f_128y / 1e6:.3f} MHz, within 0.1% of 87.2 and 99.9 MHz")


def test_criterion_02_focusing_overlap_factor():
    target = 1.0 / math.pi
    for n in (50, 80, 120, 200):
        r = n * LAMBDA_SAW / 2.0
        area = bessel_mode_area(r, LAMBDA_SAW)
        assert area.n_nodes == n
        assert abs(area.eta - target) / target <= 0.01
    eta_50 = bessel_mode_area(25 * LAMBDA_SAW, LAMBDA_SAW).eta
    assert f"{eta_50:.2g}" == "0.32"
    print("criterion 02: PASS - area ratio eta within 1% of 1/pi for "
          f"n >= 50 nodes and prints as {eta_50:.2g}")


def test_criterion_03_confinement_gain_over_flat_transducer():
    area = bessel_mode_area(1e-3, LAMBDA_SAW)
    gain = math.pi * 1e-3**2 / area.a_exact
    assert abs(gain - 245.0) <= 1.0
    print(f"criterion 03: PASS - focused mode beats a flat 1 mm "
          f"transducer by {gain:.1f} in energy density, within 245 +- 1")


def test_criterion_04_measured_spot_area_ratio():
    ratio = math.pi * 1e-3**2 / effective_area_from_radii(100e-6, 110e-6)
    assert ratio == pytest.approx(90.9, rel=1e-3)
    print(f"criterion 04: PASS - flat 1 mm disc over the (100, 110) um "
          f"spot gives {ratio:.1f}, matching 90.9")


def test_criterion_05_zero_point_displacement_scale():
    area = effective_area_from_radii(100e-6, 110e-6)
    u = zero_point_amplitude(material_for_cut("Y"), area, 86.4e6,
                             LAMBDA_SAW / (2 * math.pi))
    assert abs(u - 1.0e-17) / 1.0e-17 <= 0.20
    print(f"criterion 05: PASS - zero-point displacement "
          f"{u * 1e15:.3g} fm, within 20% of 1.0e-2 fm")


def test_criterion_06_coupling_rate_for_both_cavities():
    g_long = g0_from_modulation(6.29e-11, LAMBDA_OPT, 50e-3).g0_over_2pi
    g_short = g0_from_modulation(6.29e-11, LAMBDA_OPT, 300e-6).g0_over_2pi
    assert abs(g_long - 0.060) <= 1e-3
    assert abs(g_short - 10.0) <= 0.2
    print(f"criterion 06: PASS - g0/2pi {g_long * 1e3:.2f} mHz at 50 mm "
          f"and {g_short:.2f} Hz at 300 um")


def test_criterion_07_fano_quality_factor():
    f = np.linspace(80e6, 93e6, 801)
    trace = RfTrace(f, s21_fano_model(f, 86.4e6, 1.7e6, 0.05, 1.0, 0.6))
    fit = fit_resonance(trace, "fano")
    assert abs(fit.q - 50.8) <= 0.5
    print(f"criterion 07: PASS - fitted Q {fit.q:.2f} for the "
          f"86.4 MHz / 1.7 MHz resonance, within 50.8 +- 0.5")


def test_criterion_08_fit_accuracy_with_and_without_noise():
    f = np.linspace(80e6, 93e6, 801)
    true_f0, true_fwhm = 86.4e6, 1.7e6
    r_gauss = true_fwhm / (2 * math.sqrt(math.log(2)))
    clean = {
        "fano": s21_fano_model(f, true_f0, true_fwhm, 0.05, 1.0, 0.6),
        "lorentzian": lorentzian_power(f, (1.0, true_f0, true_fwhm, 0.05)),
        "gaussian": gaussian_offset(f, (1.0, true_f0, r_gauss, 0.05)),
    }
    worst_clean = 0.0
    worst_noisy = 0.0
    for model, values in clean.items():
        fit = fit_resonance(RfTrace(f, values), model)
        err = max(abs(fit.f0 - true_f0) / true_f0,
                  abs(fit.linewidth_fwhm - true_fwhm) / true_fwhm)
        worst_clean = max(worst_clean, err)
        assert err <= 1e-3

        rng = np.random.default_rng(0)
        if np.iscomplexobj(values):
            noisy = values + rng.normal(0, 0.01, f.size) \
                + 1j * rng.normal(0, 0.01, f.size)
        else:
            noisy = values + rng.normal(0, 0.01, f.size)
        fit = fit_resonance(RfTrace(f, noisy), model)
        err = max(abs(fit.f0 - true_f0) / true_f0,
                  abs(fit.linewidth_fwhm - true_fwhm) / true_fwhm)
        worst_noisy = max(worst_noisy, err)
        assert err <= 0.02
    print(f"criterion 08: PASS - parameter errors {worst_clean:.2e} "
          f"noiseless (<= 0.1%) and {worst_noisy:.2e} at 1% noise "
          f"(<= 2%), all three models")


def test_criterion_09_filtered_sideband_linewidth():
    kappa = 3.6e6
    delta = np.linspace(-15e6, 15e6, 801)
    trace = RfTrace(delta, antistokes_response(delta, kappa))
    fit = fit_resonance(trace, "lorentzian")
    assert abs(fit.linewidth_fwhm - kappa) / kappa <= 5e-3
    print(f"criterion 09: PASS - up-shifted sideband FWHM "
          f"{fit.linewidth_fwhm / 1e6:.4f} MHz recovers kappa = 3.6 MHz "
          f"within 0.5%")


def test_criterion_10_polarization_selectivity_at_node():
    mode = _mode_field()
    material = material_for_cut("Y")
    k_m = 2 * math.pi / LAMBDA_SAW
    r_bar = math.sqrt(100e-6 * 110e-6)
    z_star = j0_zero(1) / k_m * (110e-6 / r_bar)
    result = polarization_selectivity(mode, material, (0.0, z_star),
                                      LAMBDA_OPT, 3.5e-6)
    assert result.power_ratio >= 100.0

    no_shear = dataclasses.replace(
        material, tensor=dataclasses.replace(material.tensor, p14=0.0))
    pmap = integrated_phase_map(mode, no_shear, "X", LAMBDA_OPT)
    i, j = np.unravel_index(int(np.argmax(pmap.phi**2)), pmap.phi.shape)
    assert pmap.x[i] == 0.0
    assert pmap.z[j] == 0.0
    print(f"criterion 10: PASS - X/Z power ratio {result.power_ratio:.0f} "
          f">= 100 at the first node, and the X response peaks on axis "
          f"once the shear term is removed")


def test_criterion_11_phase_map_depth_independence():
    material = material_for_cut("Y")
    d = LAMBDA_SAW / (2 * math.pi)
    map_d = integrated_phase_map(_mode_field(d), material, "Z", LAMBDA_OPT)
    map_2d = integrated_phase_map(_mode_field(2 * d), material, "Z",
                                  LAMBDA_OPT)
    scale = float(np.max(np.abs(map_d.phi)))
    diff = float(np.max(np.abs(map_d.phi - map_2d.phi)))
    assert diff <= 1e-12 * scale
    print(f"criterion 11: PASS - Z phase map shifts by {diff:.2e} rad "
          f"when the decay depth doubles, within 1e-12 relative")


def test_criterion_12_cooperativity_and_convention_note():
    c = cooperativity(1.59e6, 10.0, 983.0, 3.6e6)
    assert abs(c - 0.18) <= 0.01

    bundle = CalibrationBundle(
        p_in_rf=1.6994e-6, s11_mag=0.8, f0=86.4e6, q=50.8,
        p_sb=3.9564e-9, p_sb_ref=1e-6, phi_ref=1e-3,
        material=material_for_cut("Y"), r_x=100e-6, r_z=110e-6,
        lambda_saw=LAMBDA_SAW,
        cavity=CavityParams(length=50e-3, mirror_roc=25e-3,
                            reflectivity=0.995, lambda_opt=LAMBDA_OPT,
                            kappa_measured=3.6e6),
        p_in_opt=1e-3, detuning=86.4e6, kappa_ext=1.8e6,
        prospect=ProspectParams(cavity_length=300e-6, f_m=98.3e6,
                                mechanical_q=1e5, p_in_opt=10e-3,
                                detuning=98.3e6, kappa_ext=1.8e6))
    report = coupling_budget(bundle).to_dict()
    assert abs(report["prospect"]["cooperativity"] - 0.18) <= 0.01
    assert any("convention" in note for note in report["notes"])
    print(f"criterion 12: PASS - C = {c:.3f} within 0.18 +- 0.01 and the "
          f"report carries the drive-convention caveat")


_DETERMINISM_CONFIG = """
[material]
cut = "Y"

[layout]
lambda_saw_m = 40e-6
idt_pairs = 2
mirror_pairs = 1
inner_clear_radius_m = 500e-6
samples_per_contour = 64

[mode]
r_x_m = 100e-6
r_z_m = 110e-6
grid_extent_m = 128e-6
grid_points = 256

[optics]
lambda_opt_m = 1.064e-6
waist_m = 3.5e-6

[cavity]
length_m = 50e-3
mirror_roc_m = 25e-3
reflectivity = 0.995
lambda_opt_m = 1.064e-6
kappa_measured_hz = 3.6e6

[calibration]
p_in_rf_w = 1.6994e-6
s11_mag = 0.8
f0_hz = 86.4e6
q = 50.8
p_sb_w = 3.9564e-9
p_sb_ref_w = 1e-6
phi_ref_rad = 1e-3
p_in_opt_w = 1e-3
detuning_hz = 86.4e6
kappa_ext_hz = 1.8e6
"""


def test_criterion_13_byte_identical_reruns(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text(_DETERMINISM_CONFIG)

    def run(sub, out, threads="1"):
        assert main([sub, "--config", str(cfg), "--out",
                     str(tmp_path / out), "--threads", threads]) == 0
        return {p.name: p.read_bytes()
                for p in (tmp_path / out).iterdir()}

    assert run("budget", "b1") == run("budget", "b2")
    phase_once = run("phasemap", "p1", "1")
    assert phase_once == run("phasemap", "p2", "1")
    assert phase_once == run("phasemap", "p8", "8")

    g0 = json.loads((tmp_path / "b1" / "budget.json").read_text())
    assert g0["g0_over_2pi_hz"] == pytest.approx(0.060, abs=1e-3)
    print("criterion 13: PASS - budget and phase-map artifacts are "
          "byte-identical across reruns and across 1 vs 8 threads")
