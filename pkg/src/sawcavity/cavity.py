"""Fabry-Perot cavity optics and the optomechanical coupling budget.

The estimation chain runs from RF calibration to cooperativity: phonon
number in the acoustic resonator, modulation depth per phonon, the
equivalent cavity-length fluctuation, the single-phonon coupling rate,
intracavity photon number under a stated drive, and finally the
cooperativity. Every intermediate is exposed so the chain can be
audited and recomputed.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .acoustics import (effective_area_from_radii, strain_to_amplitude,
                        zero_point_amplitude)
from .constants import PLANCK, SPEED_OF_LIGHT
from .errors import ComputationError, SawCavityError, ValidationError
from .spectra import phase_from_sideband_calibration, \
    phonon_number_from_reflection

_COOPERATIVITY_NOTE = (
    "cooperativity uses the steady-state intracavity photon number under "
    "this toolkit's one-sided-drive convention at the stated detuning and "
    "external coupling; other drive and coupling conventions shift C by "
    "order-unity factors, so the absolute scale is an estimate")


@dataclass(frozen=True)
class CavityParams:
    """Symmetric two-mirror cavity description."""

    length: float  # m
    mirror_roc: float  # m, both mirrors identical
    reflectivity: float  # power reflectivity per mirror
    lambda_opt: float  # m
    kappa_measured: float = None  # Hz FWHM, overrides the derived linewidth

    def __post_init__(self):
        if self.length <= 0 or self.mirror_roc <= 0 or self.lambda_opt <= 0:
            raise ValidationError("cavity lengths must be positive")
        if not 0.0 < self.reflectivity < 1.0:
            raise ValidationError("reflectivity must lie strictly in (0, 1)")
        if self.kappa_measured is not None and self.kappa_measured <= 0:
            raise ValidationError("measured linewidth must be positive")


@dataclass(frozen=True)
class CavityDerived:
    """Quantities derived from CavityParams.

    ``kappa`` is the linewidth used downstream: the measured override
    when one was supplied, the finesse-derived value otherwise. Both
    are reported so the gap between them stays visible. ``waist`` is
    None when the geometry is unstable.
    """

    fsr: float  # Hz
    finesse: float
    kappa: float  # Hz FWHM, effective
    kappa_derived: float  # Hz FWHM from finesse
    waist: float  # m or None
    stability_g: float  # 1 - L/R
    stable: bool


@dataclass(frozen=True)
class G0Result:
    """Single-phonon coupling rate and the length fluctuation behind it."""

    delta_x: float  # m
    g0_over_2pi: float  # Hz


@dataclass(frozen=True)
class ProspectParams:
    """Scaled-down cavity scenario appended to a coupling budget."""

    cavity_length: float  # m
    f_m: float  # Hz, mechanical frequency
    mechanical_q: float
    p_in_opt: float  # W
    detuning: float  # Hz
    kappa_ext: float = None  # Hz, defaults to kappa/2


@dataclass(frozen=True)
class CalibrationBundle:
    """Inputs for the full coupling-budget chain."""

    # RF phonon calibration
    p_in_rf: float  # W
    s11_mag: float
    f0: float  # Hz, acoustic resonance
    q: float  # acoustic quality factor
    # modulation-depth calibration against a reference modulator
    p_sb: float  # W
    p_sb_ref: float  # W
    phi_ref: float  # rad
    # mode and material, for zero-point displacement
    material: object
    r_x: float  # m
    r_z: float  # m
    lambda_saw: float  # m
    cavity: CavityParams
    # optical drive for the photon number
    p_in_opt: float  # W
    detuning: float  # Hz
    kappa_ext: float = None  # Hz, defaults to kappa/2
    decay_depth: float = None  # m, defaults to lambda_saw/(2 pi)
    shear_strain_zpf: float = None  # measured zero-point shear strain
    prospect: ProspectParams = None


@dataclass(frozen=True)
class ProspectBudget:
    """Derived numbers for the scaled-down scenario."""

    cavity_length: float  # m
    g0_over_2pi: float  # Hz
    gamma_m: float  # Hz
    n_cav: float
    cooperativity: float


@dataclass(frozen=True)
class CouplingBudget:
    """Every intermediate of the estimation chain, plus the result."""

    n_saw: float
    phi_saw: float  # rad
    phi_zpf: float  # rad
    delta_x: float  # m
    g0_over_2pi: float  # Hz
    u_zpf_theory: float  # m
    u_zpf_experiment: float  # m or None
    u_zpf_ratio: float  # experiment/theory or None
    n_cav: float
    gamma_m: float  # Hz
    kappa: float  # Hz
    kappa_derived: float  # Hz
    cooperativity: float
    prospect: ProspectBudget = None
    notes: tuple = field(default=(_COOPERATIVITY_NOTE,))

    def to_dict(self):
        """JSON-ready mapping with unit-suffixed keys."""
        out = {
            "n_saw": self.n_saw,
            "phi_saw_rad": self.phi_saw,
            "phi_zpf_rad": self.phi_zpf,
            "delta_x_m": self.delta_x,
            "g0_over_2pi_hz": self.g0_over_2pi,
            "u_zpf_theory_m": self.u_zpf_theory,
            "u_zpf_experiment_m": self.u_zpf_experiment,
            "u_zpf_experiment_over_theory": self.u_zpf_ratio,
            "n_cav": self.n_cav,
            "gamma_m_hz": self.gamma_m,
            "kappa_hz": self.kappa,
            "kappa_derived_hz": self.kappa_derived,
            "cooperativity": self.cooperativity,
            "notes": list(self.notes),
        }
        if self.prospect is not None:
            out["prospect"] = {
                "cavity_length_m": self.prospect.cavity_length,
                "g0_over_2pi_hz": self.prospect.g0_over_2pi,
                "gamma_m_hz": self.prospect.gamma_m,
                "n_cav": self.prospect.n_cav,
                "cooperativity": self.prospect.cooperativity,
            }
        return out


def cavity_derived_params(params):
    """FSR, finesse, linewidth, stability, and waist of a symmetric cavity.

    The linewidth is fsr/finesse unless a measured value overrides it.
    Stability uses g = 1 - L/R; the geometry is stable only for
    g^2 < 1, so a concentric cavity with L = 2R sits exactly on the
    unstable boundary and reports no waist.
    """
    fsr = SPEED_OF_LIGHT / (2.0 * params.length)
    r = params.reflectivity
    finesse = math.pi * math.sqrt(r) / (1.0 - r)
    kappa_derived = fsr / finesse
    kappa = params.kappa_measured if params.kappa_measured is not None \
        else kappa_derived
    g = 1.0 - params.length / params.mirror_roc
    stable = g * g < 1.0
    waist = None
    if stable:
        # symmetric-cavity Gaussian mode: w0^2 = (lambda/2pi) sqrt(L(2R - L))
        waist = math.sqrt(
            params.lambda_opt / (2.0 * math.pi)
            * math.sqrt(params.length * (2.0 * params.mirror_roc
                                         - params.length)))
    return CavityDerived(fsr=fsr, finesse=finesse, kappa=kappa,
                         kappa_derived=kappa_derived, waist=waist,
                         stability_g=g, stable=stable)


def zero_point_phase(phi_saw, n_saw):
    """Phase modulation per zero-point motion: phi_saw / sqrt(n_saw)."""
    if n_saw < 1:
        raise ValidationError("empty resonator calibration: need at least "
                              "one phonon")
    if phi_saw < 0:
        raise ValidationError("modulation depth must be nonnegative")
    return phi_saw / math.sqrt(n_saw)


def g0_from_modulation(phi_zpf, lambda_opt, cavity_length):
    """Single-phonon coupling rate from the zero-point phase depth.

    The phase depth maps to a cavity-length fluctuation
    delta_x = (phi_zpf / 2 pi) * lambda_opt, which detunes the cavity
    by g0/2pi = (c / lambda_opt) * delta_x / L. The rate is exactly
    inversely proportional to the cavity length.
    """
    if phi_zpf <= 0 or lambda_opt <= 0 or cavity_length <= 0:
        raise ValidationError("phase, wavelength, and length must be positive")
    delta_x = phi_zpf / (2.0 * math.pi) * lambda_opt
    g0 = (SPEED_OF_LIGHT / lambda_opt) * delta_x / cavity_length
    return G0Result(delta_x=delta_x, g0_over_2pi=g0)


def antistokes_response(detunings, kappa):
    """Cavity filter for the up-shifted sideband versus detuning.

    Normalized Lorentzian 1 / (1 + (2 delta / kappa)^2): unity at zero
    detuning with FWHM exactly kappa.
    """
    if kappa <= 0:
        raise ValidationError("linewidth must be positive")
    delta = np.asarray(detunings, dtype=float)
    return 1.0 / (1.0 + (2.0 * delta / kappa) ** 2)


def intracavity_photon_number(p_in, detuning, kappa, kappa_ext, lambda_opt):
    """Steady-state photon number for a one-sided drive.

    With angular rates (kappa_a = 2 pi kappa etc.) and photon energy
    h c / lambda: n = (p_in / E_photon) * kappa_ext_a /
    ((kappa_a / 2)^2 + delta_a^2).
    """
    if p_in < 0:
        raise ValidationError("input power must be nonnegative")
    if kappa <= 0 or kappa_ext <= 0 or lambda_opt <= 0:
        raise ValidationError("rates and wavelength must be positive")
    if kappa_ext > kappa:
        raise ValidationError("overcoupled beyond total loss: kappa_ext must "
                              "not exceed kappa")
    photon_energy = PLANCK * SPEED_OF_LIGHT / lambda_opt
    kappa_a = 2.0 * math.pi * kappa
    kappa_ext_a = 2.0 * math.pi * kappa_ext
    delta_a = 2.0 * math.pi * detuning
    return (p_in / photon_energy) * kappa_ext_a / ((0.5 * kappa_a) ** 2
                                                   + delta_a**2)


def cooperativity(n_cav, g0, gamma_m, kappa):
    """C = 4 n g0^2 / (gamma_m kappa), all rates in ordinary frequency."""
    if n_cav < 0:
        raise ValidationError("photon number must be nonnegative")
    if g0 < 0:
        raise ValidationError("coupling rate must be nonnegative")
    if gamma_m <= 0 or kappa <= 0:
        raise ValidationError("loss rates must be positive")
    return 4.0 * n_cav * g0 * g0 / (gamma_m * kappa)


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValidationError as exc:
        raise ValidationError(f"stage {name}: {exc}") from exc
    except SawCavityError as exc:
        raise ComputationError(f"stage {name}: {exc}") from exc


def coupling_budget(bundle):
    """Run the full estimation chain and emit every intermediate.

    Chains phonon calibration, modulation-depth calibration, zero-point
    phase, coupling rate, zero-point displacement (theory always, the
    measured-strain branch when a strain is supplied), intracavity
    photon number, and cooperativity. Stage failures carry the stage
    name. When a prospect scenario is attached, the coupling rate is
    rescaled to the shorter cavity by the exact 1/L law and the
    cooperativity is evaluated for the prospect drive.
    """
    n_saw = _stage("phonon calibration", phonon_number_from_reflection,
                   bundle.p_in_rf, bundle.s11_mag, bundle.f0, bundle.q)
    phi_saw = _stage("sideband calibration", phase_from_sideband_calibration,
                     bundle.p_sb, bundle.p_sb_ref, bundle.phi_ref)
    phi_zpf = _stage("zero-point phase", zero_point_phase, phi_saw, n_saw)
    derived = _stage("cavity", cavity_derived_params, bundle.cavity)
    g0_res = _stage("coupling rate", g0_from_modulation, phi_zpf,
                    bundle.cavity.lambda_opt, bundle.cavity.length)

    k_m = 2.0 * math.pi / bundle.lambda_saw
    depth = bundle.decay_depth if bundle.decay_depth is not None \
        else bundle.lambda_saw / (2.0 * math.pi)
    area = _stage("zero-point amplitude", effective_area_from_radii,
                  bundle.r_x, bundle.r_z)
    u_theory = _stage("zero-point amplitude", zero_point_amplitude,
                      bundle.material, area, bundle.f0, depth)
    u_experiment = None
    u_ratio = None
    if bundle.shear_strain_zpf is not None:
        u_experiment = _stage("zero-point amplitude", strain_to_amplitude,
                              bundle.shear_strain_zpf, k_m)
        u_ratio = u_experiment / u_theory

    gamma_m = bundle.f0 / bundle.q
    kappa_ext = bundle.kappa_ext if bundle.kappa_ext is not None \
        else derived.kappa / 2.0
    n_cav = _stage("photon number", intracavity_photon_number,
                   bundle.p_in_opt, bundle.detuning, derived.kappa,
                   kappa_ext, bundle.cavity.lambda_opt)
    coop = _stage("cooperativity", cooperativity, n_cav,
                  g0_res.g0_over_2pi, gamma_m, derived.kappa)

    prospect = None
    if bundle.prospect is not None:
        pr = bundle.prospect
        g0_p = g0_res.g0_over_2pi * bundle.cavity.length / pr.cavity_length
        gamma_p = pr.f_m / pr.mechanical_q
        kappa_ext_p = pr.kappa_ext if pr.kappa_ext is not None \
            else derived.kappa / 2.0
        n_p = _stage("prospect photon number", intracavity_photon_number,
                     pr.p_in_opt, pr.detuning, derived.kappa, kappa_ext_p,
                     bundle.cavity.lambda_opt)
        coop_p = _stage("prospect cooperativity", cooperativity, n_p, g0_p,
                        gamma_p, derived.kappa)
        prospect = ProspectBudget(cavity_length=pr.cavity_length,
                                  g0_over_2pi=g0_p, gamma_m=gamma_p,
                                  n_cav=n_p, cooperativity=coop_p)

    return CouplingBudget(n_saw=n_saw, phi_saw=phi_saw, phi_zpf=phi_zpf,
                          delta_x=g0_res.delta_x,
                          g0_over_2pi=g0_res.g0_over_2pi,
                          u_zpf_theory=u_theory,
                          u_zpf_experiment=u_experiment, u_zpf_ratio=u_ratio,
                          n_cav=n_cav, gamma_m=gamma_m, kappa=derived.kappa,
                          kappa_derived=derived.kappa_derived,
                          cooperativity=coop, prospect=prospect)
