"""Command-line front end: config in, artifacts plus manifest out.

Every run writes its requested artifacts and a manifest.json recording
the tool version, the sha256 of the config file, and a sha256 per
artifact. Artifacts are plain text with fixed formatting, so a rerun
with the same config is byte-identical and the manifest checksums can
serve as golden values.

Exit codes: 0 success, 1 validation or usage problem, 2 computation
failure (a fit that diverges, a spectrum with no resonance).
"""

import argparse
import hashlib
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .acoustics import (bessel_mode_area, effective_area_from_radii,
                        fit_mode_radii, synthesize_mode_field)
from .cavity import cavity_derived_params, coupling_budget
from .config import calibration_bundle, check_sections, parse_config, \
    required_sections
from .errors import ComputationError, ConfigError, ValidationError
from .fitting import gaussian_offset, lorentzian_power
from .layout import generate_focusing_circuit, geometry_to_csv, \
    geometry_to_svg
from .materials import resonance_frequency
from .optoelastics import BeamSpot, beam_sampled_phase, \
    integrated_phase_map, polarization_selectivity
from .render import heatmap_svg, line_plot_svg
from .spectra import (RfTrace, fit_resonance, read_trace_csv,
                      s21_fano_model, sideband_spectrum)

SUBCOMMANDS = ("material", "layout", "modemap", "phasemap", "selectivity",
               "spectrum", "cavity", "budget", "all")


class _Parser(argparse.ArgumentParser):
    # usage problems are validation errors: exit 1, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _json_bytes(obj):
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode()


def _csv_bytes(header, rows):
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue().encode()


def _fnum(v):
    return f"{v:.12g}"


def _grid_csv(x, z, values, value_name):
    rows = ([_fnum(xv), _fnum(zv), _fnum(values[i, j])]
            for i, xv in enumerate(x) for j, zv in enumerate(z))
    return _csv_bytes(f"x_m,z_m,{value_name}", rows)


def _finite_or_none(v):
    if v is None or not math.isfinite(v):
        return None
    return float(v)


# per-subcommand artifact builders; each returns [(filename, bytes)]

def _run_material(config, args):
    m = config.material
    t = m.tensor
    doc = {
        "cut": m.cut_name,
        "v_saw_m_s": m.v_saw,
        "n_e": m.n_e,
        "n_o": m.n_o,
        "density_kg_m3": m.density,
        "tensor": {name: getattr(t, name) for name in
                   ("p11", "p12", "p13", "p14", "p31", "p33", "p41", "p44")},
        "anisotropy": [[k, a] for k, a in m.anisotropy.fourier_coeffs],
    }
    return [("material.json", _json_bytes(doc))]


def _make_geometry(config):
    lay = config.layout
    return generate_focusing_circuit(
        config.material, lay.lambda_saw, lay.idt_pairs, lay.mirror_pairs,
        lay.inner_clear_radius, lay.samples_per_contour)


def _run_layout(config, args):
    geom = _make_geometry(config)
    doc = {
        "lambda_saw_m": geom.lambda_saw,
        "electrode_width_m": geom.electrode_width,
        "electrode_gap_m": geom.electrode_gap,
        "idt_pairs": geom.idt_pairs,
        "mirror_pairs": geom.mirror_pairs,
        "n_rings": geom.n_rings,
        "r_eff_m": geom.r_eff,
        "resonance_frequency_hz": resonance_frequency(config.material,
                                                      geom.lambda_saw),
    }
    return [("circuit.csv", geometry_to_csv(geom)),
            ("circuit.svg", geometry_to_svg(geom)),
            ("layout.json", _json_bytes(doc))]


def _make_mode(config, args):
    mode = config.mode
    return synthesize_mode_field(
        mode.r_x, mode.r_z, config.layout.lambda_saw, mode.u0,
        mode.grid_extent, mode.grid_points, decay_depth=mode.decay_depth,
        threads=args.threads)


def _run_modemap(config, args):
    mf = _make_mode(config, args)
    geom = _make_geometry(config)
    area = bessel_mode_area(geom.r_eff, geom.lambda_saw)
    doc = {
        "lambda_saw_m": mf.lambda_saw,
        "u0_m": mf.u0,
        "decay_depth_m": mf.decay_depth,
        "r_x_m": mf.r_x,
        "r_z_m": mf.r_z,
        "fitted_r_x_m": fit_mode_radii(mf.envelope, mf.x, mf.z, "x"),
        "fitted_r_z_m": fit_mode_radii(mf.envelope, mf.x, mf.z, "z"),
        "effective_area_m2": effective_area_from_radii(mf.r_x, mf.r_z),
        "resonator_r_eff_m": area.r_eff,
        "resonator_a_exact_m2": area.a_exact,
        "resonator_a_asymptotic_m2": area.a_asymptotic,
        "resonator_eta": area.eta,
        "resonator_n_nodes": area.n_nodes,
    }
    return [("mode.csv", _grid_csv(mf.x, mf.z, mf.u_amplitude, "u_m")),
            ("mode.svg", heatmap_svg(mf.u_amplitude, mf.x, mf.z,
                                     title="mode displacement",
                                     legend_label="u / m")),
            ("mode.json", _json_bytes(doc))]


def _run_phasemap(config, args):
    mf = _make_mode(config, args)
    lambda_opt = config.optics.lambda_opt
    artifacts = []
    doc = {"lambda_opt_m": lambda_opt}
    for pol in ("X", "Z"):
        pmap = integrated_phase_map(mf, config.material, pol, lambda_opt)
        # what a heterodyne scan sees: sideband power, proportional to
        # phi^2 in the small-modulation limit; normalized to its peak
        power = pmap.phi**2
        peak = float(power.max())
        if peak > 0:
            power = power / peak
        key = pol.lower()
        i, j = np.unravel_index(int(np.argmax(power)), power.shape)
        doc[f"phi_peak_rad_{key}"] = math.sqrt(peak)
        doc[f"argmax_x_m_{key}"] = float(pmap.x[i])
        doc[f"argmax_z_m_{key}"] = float(pmap.z[j])
        artifacts.append((f"phase_{key}.csv",
                          _grid_csv(pmap.x, pmap.z, pmap.phi, "phi_rad")))
        artifacts.append((f"power_{key}.svg",
                          heatmap_svg(power, pmap.x, pmap.z,
                                      title=f"sideband power, {pol} probe",
                                      legend_label="relative power")))
    artifacts.append(("phasemap.json", _json_bytes(doc)))
    return artifacts


def _run_selectivity(config, args):
    mf = _make_mode(config, args)
    optics = config.optics
    result = polarization_selectivity(
        mf, config.material, (optics.spot_x, optics.spot_z),
        optics.lambda_opt, optics.waist)
    doc = {
        "spot_x_m": optics.spot_x,
        "spot_z_m": optics.spot_z,
        "waist_m": optics.waist,
        "lambda_opt_m": optics.lambda_opt,
        "phi_x_eff_rad": result.phi_x_eff,
        "phi_z_eff_rad": result.phi_z_eff,
        "power_ratio": _finite_or_none(result.power_ratio),
        "z_response_zero": result.z_response_zero,
    }
    return [("selectivity.json", _json_bytes(doc))]


def _synthesize_trace(sp, seed):
    f = np.linspace(sp.f_start, sp.f_stop, sp.n_points)
    if sp.model == "fano":
        values = s21_fano_model(f, sp.f0, sp.linewidth, sp.direct,
                                sp.resonant_amp, sp.fano_phase)
    elif sp.model == "lorentzian":
        values = lorentzian_power(
            f, (sp.resonant_amp, sp.f0, sp.linewidth, sp.direct))
    else:
        r = sp.linewidth / (2.0 * math.sqrt(math.log(2.0)))
        values = gaussian_offset(
            f, (sp.resonant_amp, sp.f0, r, sp.direct))
    if sp.noise_rms > 0:
        rng = np.random.default_rng(seed)
        if np.iscomplexobj(values):
            values = values + rng.normal(0, sp.noise_rms, f.size) \
                + 1j * rng.normal(0, sp.noise_rms, f.size)
        else:
            values = values + rng.normal(0, sp.noise_rms, f.size)
    return RfTrace(frequencies=f, values=values)


def _run_spectrum(config, args):
    sp = config.spectrum
    if sp.input_csv is not None:
        path = sp.input_csv
        if not os.path.isabs(path):
            path = os.path.join(os.path.dirname(args.config) or ".", path)
        with open(path, encoding="utf-8") as fh:
            trace = read_trace_csv(fh.read())
    else:
        trace = _synthesize_trace(sp, args.seed)

    fit = fit_resonance(trace, sp.model)
    doc = {
        "model": fit.model,
        "f0_hz": fit.f0,
        "linewidth_fwhm_hz": fit.linewidth_fwhm,
        "q": fit.q,
        "amplitude": fit.amplitude,
        "background": fit.background,
        "fano_phase_rad": fit.fano_phase,
        "residual_rms": fit.residual_rms,
    }

    if np.iscomplexobj(trace.values):
        s21_csv = _csv_bytes(
            "frequency_hz,value_re,value_im",
            ([_fnum(fv), _fnum(v.real), _fnum(v.imag)]
             for fv, v in zip(trace.frequencies, trace.values)))
    else:
        s21_csv = _csv_bytes(
            "frequency_hz,power",
            ([_fnum(fv), _fnum(v)]
             for fv, v in zip(trace.frequencies, trace.values)))

    sb = sideband_spectrum(fit.f0, fit.q, trace.frequencies,
                           sp.phi_on_resonance)
    sb_csv = _csv_bytes(
        "drive_frequency_hz,relative_power",
        ([_fnum(fv), _fnum(p)] for fv, p in
         zip(sb.drive_frequencies, sb.sideband_power)))

    return [("s21.csv", s21_csv),
            ("s21.svg", line_plot_svg(trace.frequencies, trace.power,
                                      title="rf response",
                                      x_label="f / Hz",
                                      y_label="power")),
            ("spectrum_fit.json", _json_bytes(doc)),
            ("sideband.csv", sb_csv),
            ("sideband.svg", line_plot_svg(sb.drive_frequencies,
                                           sb.sideband_power,
                                           title="sideband power",
                                           x_label="f / Hz",
                                           y_label="relative power"))]


def _run_cavity(config, args):
    params = config.cavity
    derived = cavity_derived_params(params)
    doc = {
        "length_m": params.length,
        "mirror_roc_m": params.mirror_roc,
        "reflectivity": params.reflectivity,
        "lambda_opt_m": params.lambda_opt,
        "kappa_measured_hz": params.kappa_measured,
        "fsr_hz": derived.fsr,
        "finesse": derived.finesse,
        "kappa_hz": derived.kappa,
        "kappa_derived_hz": derived.kappa_derived,
        "waist_m": derived.waist,
        "stability_g": derived.stability_g,
        "stable": derived.stable,
    }
    return [("cavity.json", _json_bytes(doc))]


def _run_budget(config, args):
    budget = coupling_budget(calibration_bundle(config))
    return [("budget.json", _json_bytes(budget.to_dict()))]


_HANDLERS = {
    "material": _run_material,
    "layout": _run_layout,
    "modemap": _run_modemap,
    "phasemap": _run_phasemap,
    "selectivity": _run_selectivity,
    "spectrum": _run_spectrum,
    "cavity": _run_cavity,
    "budget": _run_budget,
}


def _run_all(config, args):
    artifacts = []
    ran_any = False
    for name in SUBCOMMANDS[:-1]:
        missing = [s for s in required_sections(name)
                   if getattr(config, s) is None]
        if missing:
            continue
        ran_any = True
        artifacts.extend(_HANDLERS[name](config, args))
    if not ran_any:
        raise ConfigError(["no section group matches any subcommand; "
                           "nothing to run"])
    return artifacts


def _build_parser():
    parser = _Parser(prog="sawcavity",
                     description="design and estimation toolkit for "
                                 "focusing acoustic resonators coupled to "
                                 "an optical cavity")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", metavar="subcommand")
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True,
                       help="TOML run configuration")
        p.add_argument("--out", default=None,
                       help="output directory, overrides [output] dir")
        p.add_argument("--format", action="append", dest="formats",
                       choices=("csv", "json", "svg"), default=None,
                       help="artifact format filter, repeatable")
        p.add_argument("--seed", type=int, default=0,
                       help="rng seed for synthetic noise")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for grid synthesis")
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        print("sawcavity: error: a subcommand is required", file=sys.stderr)
        return 1
    if args.threads < 1:
        print("sawcavity: error: --threads must be at least 1",
              file=sys.stderr)
        return 1

    try:
        with open(args.config, "rb") as fh:
            config_bytes = fh.read()
        config = parse_config(config_bytes)
        if args.subcommand != "all":
            check_sections(config, args.subcommand)
            artifacts = _HANDLERS[args.subcommand](config, args)
        else:
            artifacts = _run_all(config, args)
    except ConfigError as exc:
        for line in exc.field_errors:
            print(f"sawcavity: config error: {line}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"sawcavity: validation error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"sawcavity: computation error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"sawcavity: i/o error: {exc}", file=sys.stderr)
        return 1

    formats = tuple(args.formats) if args.formats \
        else config.output.formats
    artifacts = [(name, data) for name, data in artifacts
                 if name.rsplit(".", 1)[-1] in formats]

    out_dir = args.out if args.out is not None else config.output.directory
    try:
        os.makedirs(out_dir, exist_ok=True)
        checksums = {}
        for name, data in artifacts:
            with open(os.path.join(out_dir, name), "wb") as fh:
                fh.write(data)
            checksums[name] = hashlib.sha256(data).hexdigest()
        manifest = {
            "tool": "sawcavity",
            "version": __version__,
            "subcommand": args.subcommand,
            "config_sha256": hashlib.sha256(config_bytes).hexdigest(),
            "seed": args.seed,
            "artifacts": checksums,
        }
        with open(os.path.join(out_dir, "manifest.json"), "wb") as fh:
            fh.write(_json_bytes(manifest))
    except OSError as exc:
        print(f"sawcavity: i/o error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
