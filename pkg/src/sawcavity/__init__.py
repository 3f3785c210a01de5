"""Design and estimation toolkit for focusing surface-acoustic-wave
resonators read out through an optical cavity.

The package covers the full chain from electrode layout to
optomechanical cooperativity: anisotropic focusing-ring geometry,
standing-wave mode synthesis, polarization-resolved optoelastic phase
maps, RF and sideband spectra with a shared least-squares engine,
Fabry-Perot cavity optics, and the calibration budget tying them
together. Hot grid kernels run on a compiled backend when the
extension is available and on a numpy fallback otherwise; results are
identical either way.
"""

__version__ = "1.0.0"

from .acoustics import (ModeArea, ModeField, bessel_mode_area,
                        effective_area_from_radii, fit_mode_radii,
                        strain_to_amplitude, synthesize_mode_field,
                        zero_point_amplitude)
from .cavity import (CalibrationBundle, CavityDerived, CavityParams,
                     CouplingBudget, G0Result, ProspectBudget,
                     ProspectParams, antistokes_response,
                     cavity_derived_params, cooperativity, coupling_budget,
                     g0_from_modulation, intracavity_photon_number,
                     zero_point_phase)
from .config import RunConfig, parse_config
from .errors import (ComputationError, ConfigError, FitError, SawCavityError,
                     ValidationError)
from .fitting import FitResult, fit_curve, levenberg_marquardt
from .kernels import BACKEND
from .layout import (Contour, ResonatorGeometry, export_geometry,
                     generate_focusing_circuit)
from .materials import (AnisotropyProfile, MaterialProperties,
                        OptoelasticTensor, group_velocity, material_for_cut,
                        resonance_frequency)
from .optoelastics import (BeamSpot, PhaseMap, SelectivityResult,
                           beam_sampled_phase, integrated_phase_map,
                           polarization_selectivity, refractive_index_shift)
from .spectra import (ResonanceFit, RfTrace, SidebandSpectrum,
                      fit_resonance, phase_from_sideband_calibration,
                      phonon_number_from_reflection, s21_fano_model,
                      sideband_power_fraction, sideband_spectrum)

__all__ = [
    "__version__", "BACKEND",
    # errors
    "SawCavityError", "ValidationError", "ConfigError", "ComputationError",
    "FitError",
    # materials
    "OptoelasticTensor", "AnisotropyProfile", "MaterialProperties",
    "material_for_cut", "group_velocity", "resonance_frequency",
    # layout
    "Contour", "ResonatorGeometry", "generate_focusing_circuit",
    "export_geometry",
    # acoustics
    "ModeArea", "ModeField", "bessel_mode_area", "synthesize_mode_field",
    "fit_mode_radii", "effective_area_from_radii", "zero_point_amplitude",
    "strain_to_amplitude",
    # optoelastics
    "PhaseMap", "BeamSpot", "SelectivityResult", "refractive_index_shift",
    "integrated_phase_map", "beam_sampled_phase",
    "polarization_selectivity",
    # fitting
    "FitResult", "levenberg_marquardt", "fit_curve",
    # spectra
    "RfTrace", "ResonanceFit", "SidebandSpectrum",
    "sideband_power_fraction", "s21_fano_model", "fit_resonance",
    "sideband_spectrum", "phonon_number_from_reflection",
    "phase_from_sideband_calibration",
    # cavity
    "CavityParams", "CavityDerived", "G0Result", "CalibrationBundle",
    "ProspectParams", "ProspectBudget", "CouplingBudget",
    "cavity_derived_params", "zero_point_phase", "g0_from_modulation",
    "antistokes_response", "intracavity_photon_number", "cooperativity",
    "coupling_budget",
    # config
    "RunConfig", "parse_config",
]
