"""Crystal constants and the direction-dependent SAW velocity model.

The toolkit targets lithium niobate cuts used for focusing SAW
resonators. A material record bundles the SAW speed along the
principal direction, the optical indices, the optoelastic tensor, the
mass density, and an angular velocity profile. All records are frozen;
every function here is pure.
"""

import math
from dataclasses import dataclass, field

from .errors import ValidationError

_ANGULAR_SAMPLES = 3600  # positivity check resolution for velocity profiles


@dataclass(frozen=True)
class OptoelasticTensor:
    """Optoelastic coefficients in abbreviated (Voigt) notation.

    Only p12, p14, and p31 enter the surface-displacement-dominated
    index-shift model; the other coefficients are carried for
    completeness and exercised by no operation.
    """

    p11: float = 0.0
    p12: float = 0.0
    p13: float = 0.0
    p14: float = 0.0
    p31: float = 0.0
    p33: float = 0.0
    p41: float = 0.0
    p44: float = 0.0


@dataclass(frozen=True)
class AnisotropyProfile:
    """Angular SAW velocity model v(theta) = v0 * (1 + sum a_k cos(2 k theta)).

    The truncated cosine series keeps the two-fold symmetry of the
    crystal surface and degenerates to an isotropic profile for an
    empty coefficient list. Coefficients are (harmonic index k,
    amplitude a_k) pairs with k >= 1.
    """

    v0: float
    fourier_coeffs: tuple = ()

    def __post_init__(self):
        if self.v0 <= 0:
            raise ValidationError("principal velocity must be positive")
        coeffs = tuple((int(k), float(a)) for k, a in self.fourier_coeffs)
        if any(k < 1 for k, _ in coeffs):
            raise ValidationError("harmonic indices must be >= 1")
        object.__setattr__(self, "fourier_coeffs", coeffs)
        # Reject profiles that dip to zero or negative speed anywhere.
        for i in range(_ANGULAR_SAMPLES):
            theta = math.pi * i / _ANGULAR_SAMPLES
            if self.value(theta) <= 0.0:
                raise ValidationError(
                    f"velocity profile nonpositive near theta={theta:.4f} rad")

    def value(self, theta):
        """Velocity in m/s along propagation angle theta (radians)."""
        total = 1.0
        for k, a in self.fourier_coeffs:
            total += a * math.cos(2.0 * k * theta)
        return self.v0 * total


@dataclass(frozen=True)
class MaterialProperties:
    """Constant set for one substrate cut."""

    cut_name: str
    v_saw: float  # m/s along the principal direction
    n_e: float  # extraordinary refractive index
    n_o: float  # ordinary refractive index
    tensor: OptoelasticTensor
    density: float  # kg/m^3
    anisotropy: AnisotropyProfile = field(repr=False, default=None)

    def __post_init__(self):
        if self.v_saw <= 0:
            raise ValidationError("SAW velocity must be positive")
        if self.density <= 0:
            raise ValidationError("density must be positive")
        if self.n_e <= 1 or self.n_o <= 1:
            raise ValidationError("refractive indices must exceed 1")
        if self.anisotropy is None:
            object.__setattr__(self, "anisotropy", AnisotropyProfile(self.v_saw))


# Lithium niobate optoelastic coefficients relevant to the index-shift
# model, plus placeholders for the unused entries of the tensor.
LITHIUM_NIOBATE_TENSOR = OptoelasticTensor(
    p11=-0.026,
    p12=0.088,
    p13=0.133,
    p14=-0.083,
    p31=0.177,
    p33=0.071,
    p41=-0.151,
    p44=0.146,
)

# Handbook density for congruent lithium niobate. The optical indices
# are at 1064 nm; the SAW speeds below are for the metallized surface
# along the principal propagation direction of each cut.
_LITHIUM_NIOBATE_DENSITY = 4650.0

_BUILTINS = {
    "Y": MaterialProperties(
        cut_name="Y",
        v_saw=3488.0,
        n_e=2.16,
        n_o=2.24,
        tensor=LITHIUM_NIOBATE_TENSOR,
        density=_LITHIUM_NIOBATE_DENSITY,
        anisotropy=AnisotropyProfile(3488.0),
    ),
    "128Y": MaterialProperties(
        cut_name="128Y",
        v_saw=3997.0,
        n_e=2.16,
        n_o=2.24,
        tensor=LITHIUM_NIOBATE_TENSOR,
        density=_LITHIUM_NIOBATE_DENSITY,
        anisotropy=AnisotropyProfile(3997.0),
    ),
}

_ALIASES = {
    "y": "Y",
    "y-cut": "Y",
    "ycut": "Y",
    "128y": "128Y",
    "128y-cut": "128Y",
    "128ycut": "128Y",
    "128°y": "128Y",
    "128°y-cut": "128Y",
}


def material_for_cut(cut):
    """Return the built-in constant set for a cut label.

    Accepts the canonical labels "Y" and "128Y" plus common spelling
    variants. Custom materials are built directly as
    MaterialProperties records, typically from a configuration file.
    """
    key = _ALIASES.get(str(cut).strip().lower())
    if key is None:
        raise ValidationError(f"unknown material cut: {cut!r}")
    return _BUILTINS[key]


def group_velocity(profile, theta):
    """SAW velocity in m/s at propagation angle theta (radians)."""
    return profile.value(theta)


def resonance_frequency(material, lambda_saw):
    """Fundamental resonance v/lambda in Hz for an electrode period lambda_saw."""
    if lambda_saw <= 0:
        raise ValidationError("invalid wavelength: must be positive")
    return material.v_saw / lambda_saw
