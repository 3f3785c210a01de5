"""TOML run-configuration parsing with strict field validation.

Every numeric key carries a unit suffix (_m, _hz, _w, _rad, _kg_m3,
_m_s) so a config file reads unambiguously. Unknown keys are rejected
rather than ignored; a key that differs from a known one only by its
suffix gets a pointed unit-suffix diagnostic instead of a generic
unknown-key error. All problems in a file are collected and reported
together.
"""

import dataclasses
import math
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .cavity import CalibrationBundle, CavityParams, ProspectParams
from .errors import ConfigError
from .materials import (AnisotropyProfile, MaterialProperties,
                        OptoelasticTensor, material_for_cut)

VALID_FORMATS = ("csv", "json", "svg")


@dataclass(frozen=True)
class LayoutConfig:
    lambda_saw: float
    idt_pairs: int
    mirror_pairs: int
    inner_clear_radius: float
    samples_per_contour: int = 720


@dataclass(frozen=True)
class ModeConfig:
    r_x: float
    r_z: float
    u0: float = 1e-12
    decay_depth: float = None  # defaults to lambda_saw/(2 pi) downstream
    grid_extent: float = 256e-6  # half-width, m
    grid_points: int = 512


@dataclass(frozen=True)
class OpticsConfig:
    lambda_opt: float = 1.064e-6
    waist: float = 3.5e-6
    spot_x: float = 0.0
    spot_z: float = 0.0


@dataclass(frozen=True)
class CalibrationConfig:
    p_in_rf: float
    s11_mag: float
    f0: float
    q: float
    p_sb: float
    p_sb_ref: float
    phi_ref: float
    p_in_opt: float
    detuning: float
    kappa_ext: float = None
    shear_strain_zpf: float = None


@dataclass(frozen=True)
class SpectrumConfig:
    model: str = "fano"
    input_csv: str = None
    f_start: float = 80e6
    f_stop: float = 95e6
    n_points: int = 801
    f0: float = 86.4e6
    linewidth: float = 1.7e6
    direct: float = 0.05
    resonant_amp: float = 1.0
    fano_phase: float = 0.6
    noise_rms: float = 0.0
    phi_on_resonance: float = 6.29e-5


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "out"
    formats: tuple = VALID_FORMATS


@dataclass(frozen=True)
class RunConfig:
    material: MaterialProperties = None
    layout: LayoutConfig = None
    mode: ModeConfig = None
    optics: OpticsConfig = None
    cavity: CavityParams = None
    calibration: CalibrationConfig = None
    prospect: ProspectParams = None
    spectrum: SpectrumConfig = None
    output: OutputConfig = OutputConfig()


class _Collector:
    """Accumulates field-level diagnostics for one parse."""

    def __init__(self):
        self.errors = []

    def add(self, section, key, message):
        where = f"[{section}] {key}" if key else f"[{section}]"
        self.errors.append(f"{where}: {message}")

    def raise_if_any(self):
        if self.errors:
            raise ConfigError(self.errors)


def _positive(value):
    return value > 0


def _fraction(value):
    return 0.0 <= value <= 1.0


# key -> (dataclass field, kind, required, constraint, constraint message)
_LAYOUT_KEYS = {
    "lambda_saw_m": ("lambda_saw", "float", True, _positive,
                     "invalid wavelength: must be positive"),
    "idt_pairs": ("idt_pairs", "int", True, lambda v: v >= 1,
                  "must be at least 1"),
    "mirror_pairs": ("mirror_pairs", "int", True, lambda v: v >= 1,
                     "must be at least 1"),
    "inner_clear_radius_m": ("inner_clear_radius", "float", True, _positive,
                             "must be positive"),
    "samples_per_contour": ("samples_per_contour", "int", False,
                            lambda v: v >= 64, "must be at least 64"),
}

_MODE_KEYS = {
    "r_x_m": ("r_x", "float", True, _positive, "must be positive"),
    "r_z_m": ("r_z", "float", True, _positive, "must be positive"),
    "u0_m": ("u0", "float", False, _positive, "must be positive"),
    "decay_depth_m": ("decay_depth", "float", False, _positive,
                      "must be positive"),
    "grid_extent_m": ("grid_extent", "float", False, _positive,
                      "must be positive"),
    "grid_points": ("grid_points", "int", False, lambda v: v >= 64,
                    "must be at least 64"),
}

_OPTICS_KEYS = {
    "lambda_opt_m": ("lambda_opt", "float", False, _positive,
                     "invalid wavelength: must be positive"),
    "waist_m": ("waist", "float", False, _positive, "must be positive"),
    "spot_x_m": ("spot_x", "float", False, None, None),
    "spot_z_m": ("spot_z", "float", False, None, None),
}

_CAVITY_KEYS = {
    "length_m": ("length", "float", True, _positive, "must be positive"),
    "mirror_roc_m": ("mirror_roc", "float", True, _positive,
                     "must be positive"),
    "reflectivity": ("reflectivity", "float", True,
                     lambda v: 0.0 < v < 1.0,
                     "must lie strictly in (0, 1)"),
    "lambda_opt_m": ("lambda_opt", "float", True, _positive,
                     "invalid wavelength: must be positive"),
    "kappa_measured_hz": ("kappa_measured", "float", False, _positive,
                          "must be positive"),
}

_CALIBRATION_KEYS = {
    "p_in_rf_w": ("p_in_rf", "float", True, _positive, "must be positive"),
    "s11_mag": ("s11_mag", "float", True, _fraction,
                "nonphysical reflection: must lie in [0, 1]"),
    "f0_hz": ("f0", "float", True, _positive, "must be positive"),
    "q": ("q", "float", True, _positive, "must be positive"),
    "p_sb_w": ("p_sb", "float", True, _positive, "must be positive"),
    "p_sb_ref_w": ("p_sb_ref", "float", True, _positive, "must be positive"),
    "phi_ref_rad": ("phi_ref", "float", True, _positive, "must be positive"),
    "p_in_opt_w": ("p_in_opt", "float", True, _positive, "must be positive"),
    "detuning_hz": ("detuning", "float", True, None, None),
    "kappa_ext_hz": ("kappa_ext", "float", False, _positive,
                     "must be positive"),
    "shear_strain_zpf": ("shear_strain_zpf", "float", False, _positive,
                         "must be positive"),
}

_PROSPECT_KEYS = {
    "cavity_length_m": ("cavity_length", "float", True, _positive,
                        "must be positive"),
    "f_m_hz": ("f_m", "float", True, _positive, "must be positive"),
    "mechanical_q": ("mechanical_q", "float", True, _positive,
                     "must be positive"),
    "p_in_opt_w": ("p_in_opt", "float", True, _positive, "must be positive"),
    "detuning_hz": ("detuning", "float", True, None, None),
    "kappa_ext_hz": ("kappa_ext", "float", False, _positive,
                     "must be positive"),
}

_SPECTRUM_KEYS = {
    "model": ("model", "str", False,
              lambda v: v in ("lorentzian", "fano", "gaussian"),
              "must be one of lorentzian, fano, gaussian"),
    "input_csv": ("input_csv", "str", False, None, None),
    "f_start_hz": ("f_start", "float", False, _positive, "must be positive"),
    "f_stop_hz": ("f_stop", "float", False, _positive, "must be positive"),
    "n_points": ("n_points", "int", False, lambda v: v >= 16,
                 "must be at least 16"),
    "f0_hz": ("f0", "float", False, _positive, "must be positive"),
    "linewidth_hz": ("linewidth", "float", False, _positive,
                     "must be positive"),
    "direct": ("direct", "float", False, None, None),
    "resonant_amp": ("resonant_amp", "float", False, None, None),
    "fano_phase_rad": ("fano_phase", "float", False, None, None),
    "noise_rms": ("noise_rms", "float", False, lambda v: v >= 0,
                  "must be nonnegative"),
    "phi_on_resonance_rad": ("phi_on_resonance", "float", False,
                             lambda v: 0 < abs(v) < 1,
                             "modulation too deep for small-signal model: "
                             "|phi| must be < 1"),
}

_MATERIAL_FLOAT_KEYS = {
    "v_saw_m_s": "v_saw",
    "n_e": "n_e",
    "n_o": "n_o",
    "density_kg_m3": "density",
    "p11": "p11", "p12": "p12", "p13": "p13", "p14": "p14",
    "p31": "p31", "p33": "p33", "p41": "p41", "p44": "p44",
}

_SECTION_KEYS = {
    "layout": _LAYOUT_KEYS,
    "mode": _MODE_KEYS,
    "optics": _OPTICS_KEYS,
    "cavity": _CAVITY_KEYS,
    "calibration": _CALIBRATION_KEYS,
    "prospect": _PROSPECT_KEYS,
    "spectrum": _SPECTRUM_KEYS,
}

_KNOWN_SECTIONS = ("material", "layout", "mode", "optics", "cavity",
                   "calibration", "prospect", "spectrum", "output")

_UNIT_SUFFIXES = ("_m_s", "_kg_m3", "_m", "_hz", "_w", "_rad")


def _strip_suffix(key):
    for suffix in _UNIT_SUFFIXES:
        if key.endswith(suffix):
            return key[: -len(suffix)]
    return key


def _unknown_key_message(key, known):
    base = _strip_suffix(key)
    for candidate in known:
        if candidate != key and _strip_suffix(candidate) == base:
            return (f"unit-suffix mismatch: got {key!r}, expected "
                    f"{candidate!r}")
    return "unknown key"


def _coerce(value, kind):
    """Typed extraction; bool is not a number here."""
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise TypeError("expected a number")
        value = float(value)
        if not math.isfinite(value):
            raise TypeError("expected a finite number")
        return value
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError("expected an integer")
        return value
    if kind == "str":
        if not isinstance(value, str):
            raise TypeError("expected a string")
        return value
    raise AssertionError(kind)


def _parse_section(name, raw, keys, collector):
    values = {}
    seen = set()
    for key, value in raw.items():
        if key not in keys:
            collector.add(name, key, _unknown_key_message(key, keys))
            continue
        seen.add(key)
        fieldname, kind, _required, constraint, message = keys[key]
        try:
            typed = _coerce(value, kind)
        except TypeError as exc:
            collector.add(name, key, str(exc))
            continue
        if constraint is not None and not constraint(typed):
            collector.add(name, key, message)
            continue
        values[fieldname] = typed
    for key, (_fieldname, _kind, required, _c, _m) in keys.items():
        if required and key not in seen:
            collector.add(name, key, "missing required key")
    return values


def _parse_material(raw, collector):
    known = ("cut", "anisotropy", *_MATERIAL_FLOAT_KEYS)
    errors_before = len(collector.errors)
    cut = raw.get("cut")
    custom = {k: v for k, v in raw.items() if k in _MATERIAL_FLOAT_KEYS}
    anisotropy = None

    for key in raw:
        if key not in known:
            collector.add("material", key, _unknown_key_message(key, known))
    if "anisotropy" in raw:
        anisotropy = _parse_anisotropy(raw["anisotropy"], collector)
    if cut is not None and not isinstance(cut, str):
        collector.add("material", "cut", "expected a string")
        return None
    if cut is not None and custom:
        collector.add("material", "cut", "a named cut cannot be combined "
                      "with custom constants (only anisotropy may be added)")
        return None
    if cut is None and not custom:
        collector.add("material", "cut", "missing required key")
        return None

    if cut is not None:
        try:
            material = material_for_cut(cut)
        except Exception as exc:
            collector.add("material", "cut", str(exc))
            return None
    else:
        values = {}
        for key, value in custom.items():
            try:
                values[_MATERIAL_FLOAT_KEYS[key]] = _coerce(value, "float")
            except TypeError as exc:
                collector.add("material", key, str(exc))
        for key in ("v_saw_m_s", "n_e", "n_o", "density_kg_m3"):
            if key not in custom:
                collector.add("material", key, "missing required key")
        if len(collector.errors) > errors_before:
            return None
        tensor_fields = {f.name for f in
                         dataclasses.fields(OptoelasticTensor)}
        tensor = OptoelasticTensor(**{k: v for k, v in values.items()
                                      if k in tensor_fields})
        material = MaterialProperties(cut_name="custom",
                                      v_saw=values["v_saw"],
                                      n_e=values["n_e"], n_o=values["n_o"],
                                      tensor=tensor,
                                      density=values["density"])

    if anisotropy is not None:
        try:
            profile = AnisotropyProfile(v0=material.v_saw,
                                        fourier_coeffs=anisotropy)
        except Exception as exc:
            collector.add("material", "anisotropy", str(exc))
            return None
        material = dataclasses.replace(material, anisotropy=profile)
    return material


def _parse_anisotropy(raw, collector):
    """[[k, a_k], ...] harmonic pairs; k a positive integer."""
    if not isinstance(raw, list):
        collector.add("material", "anisotropy",
                      "expected a list of [harmonic, coefficient] pairs")
        return None
    pairs = []
    for item in raw:
        ok = (isinstance(item, list) and len(item) == 2
              and isinstance(item[0], int) and not isinstance(item[0], bool)
              and isinstance(item[1], (int, float))
              and not isinstance(item[1], bool))
        if not ok or item[0] < 1:
            collector.add("material", "anisotropy",
                          "expected [harmonic >= 1, coefficient] pairs")
            return None
        pairs.append((item[0], float(item[1])))
    return tuple(pairs)


def _parse_output(raw, collector):
    known = ("dir", "formats")
    for key in raw:
        if key not in known:
            collector.add("output", key, _unknown_key_message(key, known))
    directory = raw.get("dir", "out")
    if not isinstance(directory, str) or not directory:
        collector.add("output", "dir", "expected a nonempty string")
        directory = "out"
    formats = raw.get("formats", list(VALID_FORMATS))
    if (not isinstance(formats, list) or not formats
            or any(f not in VALID_FORMATS for f in formats)):
        collector.add("output", "formats",
                      "expected a nonempty list drawn from csv, json, svg")
        formats = list(VALID_FORMATS)
    return OutputConfig(directory=directory, formats=tuple(formats))


_SECTION_TYPES = {
    "layout": LayoutConfig,
    "mode": ModeConfig,
    "optics": OpticsConfig,
    "cavity": CavityParams,
    "calibration": CalibrationConfig,
    "prospect": ProspectParams,
    "spectrum": SpectrumConfig,
}


def parse_config(text):
    """Parse TOML text (str or bytes) into a validated RunConfig.

    All field-level problems are gathered into one ConfigError so a
    config file can be fixed in a single pass.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([f"not valid TOML: {exc}"]) from exc

    collector = _Collector()
    sections = {}
    for name, raw in doc.items():
        if name not in _KNOWN_SECTIONS:
            collector.add(name, "", "unknown section")
            continue
        if not isinstance(raw, dict):
            collector.add(name, "", "expected a section, not a value")
            continue
        if name == "material":
            sections["material"] = _parse_material(raw, collector)
        elif name == "output":
            sections["output"] = _parse_output(raw, collector)
        else:
            values = _parse_section(name, raw, _SECTION_KEYS[name],
                                    collector)
            sections[name] = values

    collector.raise_if_any()

    built = {}
    for name, values in sections.items():
        if name in ("material", "output"):
            built[name] = values
        else:
            try:
                built[name] = _SECTION_TYPES[name](**values)
            except Exception as exc:  # dataclass-level validation
                collector.add(name, "", str(exc))
    collector.raise_if_any()

    if (built.get("spectrum") is not None
            and built["spectrum"].input_csv is None
            and built["spectrum"].f_start >= built["spectrum"].f_stop):
        collector.add("spectrum", "f_start_hz",
                      "must be below f_stop_hz for a synthetic sweep")
    collector.raise_if_any()

    return RunConfig(**built)


_SUBCOMMAND_SECTIONS = {
    "material": ("material",),
    "layout": ("material", "layout"),
    "modemap": ("material", "layout", "mode"),
    "phasemap": ("material", "layout", "mode", "optics"),
    "selectivity": ("material", "layout", "mode", "optics"),
    "spectrum": ("spectrum",),
    "cavity": ("cavity",),
    "budget": ("material", "layout", "mode", "cavity", "calibration"),
}


def required_sections(subcommand):
    """Config sections a subcommand cannot run without."""
    return _SUBCOMMAND_SECTIONS[subcommand]


def check_sections(config, subcommand):
    """Raise ConfigError naming every missing required section."""
    missing = [name for name in required_sections(subcommand)
               if getattr(config, name) is None]
    if missing:
        raise ConfigError([f"[{name}]: section required by "
                           f"{subcommand!r} is missing"
                           for name in missing])


def calibration_bundle(config):
    """Assemble the coupling-budget inputs from a parsed config."""
    cal = config.calibration
    mode = config.mode
    return CalibrationBundle(
        p_in_rf=cal.p_in_rf, s11_mag=cal.s11_mag, f0=cal.f0, q=cal.q,
        p_sb=cal.p_sb, p_sb_ref=cal.p_sb_ref, phi_ref=cal.phi_ref,
        material=config.material, r_x=mode.r_x, r_z=mode.r_z,
        lambda_saw=config.layout.lambda_saw, cavity=config.cavity,
        p_in_opt=cal.p_in_opt, detuning=cal.detuning,
        kappa_ext=cal.kappa_ext, decay_depth=mode.decay_depth,
        shear_strain_zpf=cal.shear_strain_zpf, prospect=config.prospect)
