"""Electrode layout generation for focusing acoustic resonators.

On an anisotropic substrate a circular transducer does not focus: the
wavefront velocity varies with propagation angle, so rings must be
warped to keep every launched wavefront converging on the center. The
warp applied here scales both the local pitch and the overall ring
shape by v(theta)/v0, which keeps the number of wavelengths from any
electrode to the focus equal in all directions.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .materials import group_velocity

ROLE_IDT_A = "idt_a"
ROLE_IDT_B = "idt_b"
ROLE_MIRROR = "mirror"


@dataclass(frozen=True)
class Contour:
    """Centerline of one electrode ring.

    ``theta`` and ``radius`` are equal-length arrays sampling the ring
    in polar form around the focus. ``index`` counts rings outward from
    1; ``role`` is which circuit the ring belongs to.
    """

    index: int
    role: str
    theta: np.ndarray
    radius: np.ndarray


@dataclass(frozen=True)
class ResonatorGeometry:
    """A complete focusing-resonator layout."""

    contours: tuple
    lambda_saw: float  # m, design wavelength along the reference direction
    electrode_width: float  # m
    electrode_gap: float  # m
    r_eff: float  # m, mean radius of the outermost ring
    idt_pairs: int
    mirror_pairs: int

    @property
    def n_rings(self):
        return len(self.contours)


def generate_focusing_circuit(material, lambda_saw, idt_pairs, mirror_pairs,
                              inner_clear_radius, samples_per_contour=720):
    """Lay out interdigitated and mirror rings around a focal point.

    Ring n sits at r_n(theta) = (R0 + n * lambda(theta)/4) * s(theta)
    with lambda(theta) = lambda_saw * v(theta)/v0 and shape factor
    s(theta) = v(theta)/v0, so both the quarter-wave pitch and the ring
    shape stretch along fast axes. On an isotropic substrate this
    collapses to concentric circles at exact quarter-wave spacing.

    The first 2 * idt_pairs rings alternate between the two transducer
    buses, the remaining 2 * mirror_pairs form the reflector. Returns a
    ResonatorGeometry whose r_eff is the mean outermost radius.
    """
    if lambda_saw <= 0:
        raise ValidationError("invalid wavelength: must be positive")
    if idt_pairs < 1 or mirror_pairs < 1:
        raise ValidationError("need at least one transducer pair and one "
                              "mirror pair")
    if samples_per_contour < 64:
        raise ValidationError("contour sampling too coarse: need at least "
                              "64 samples")
    if inner_clear_radius <= 0:
        raise ValidationError("inner clear radius must be positive")

    n_rings = 2 * idt_pairs + 2 * mirror_pairs
    theta = np.linspace(0.0, 2.0 * math.pi, samples_per_contour,
                        endpoint=False)
    profile = material.anisotropy
    v = np.array([group_velocity(profile, t) for t in theta])
    shape = v / profile.v0
    pitch = lambda_saw * shape  # local wavelength along each direction

    contours = []
    prev = None
    for n in range(1, n_rings + 1):
        radius = (inner_clear_radius + n * pitch / 4.0) * shape
        if prev is not None and np.any(radius <= prev):
            raise ValidationError(f"contour collision at ring {n}: rings "
                                  "must nest strictly outward")
        if n <= 2 * idt_pairs:
            role = ROLE_IDT_A if n % 2 == 1 else ROLE_IDT_B
        else:
            role = ROLE_MIRROR
        contours.append(Contour(index=n, role=role, theta=theta,
                                radius=radius))
        prev = radius

    return ResonatorGeometry(contours=tuple(contours),
                             lambda_saw=lambda_saw,
                             electrode_width=lambda_saw / 4.0,
                             electrode_gap=lambda_saw / 4.0,
                             r_eff=float(np.mean(contours[-1].radius)),
                             idt_pairs=idt_pairs, mirror_pairs=mirror_pairs)


def geometry_to_csv(geometry):
    """One row per contour sample: ring,role,theta_rad,r_m."""
    buf = io.StringIO()
    buf.write("ring,role,theta_rad,r_m\n")
    for c in geometry.contours:
        for t, r in zip(c.theta, c.radius):
            buf.write(f"{c.index},{c.role},{t:.12g},{r:.12g}\n")
    return buf.getvalue().encode()


def geometry_to_svg(geometry):
    """Render ring centerlines as stroked paths, 1 SVG unit = 1 um.

    Strokes are one electrode wide, so the drawing approximates the
    fabricated metal pattern rather than a wireframe.
    """
    scale = 1e6  # m to um
    max_r = max(float(np.max(c.radius)) for c in geometry.contours) * scale
    span = 2.0 * (max_r + 10.0)
    half = span / 2.0
    stroke = geometry.electrode_width * scale

    colors = {ROLE_IDT_A: "#b3362b", ROLE_IDT_B: "#2b5bb3",
              ROLE_MIRROR: "#555555"}
    buf = io.StringIO()
    buf.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    buf.write(f'<svg xmlns="http://www.w3.org/2000/svg" '
              f'viewBox="{-half:.3f} {-half:.3f} {span:.3f} {span:.3f}" '
              f'width="{span:.3f}" height="{span:.3f}">\n')
    buf.write('<style>path{fill:none}'
              + "".join(f".{role}{{stroke:{col}}}"
                        for role, col in colors.items())
              + "</style>\n")
    for c in geometry.contours:
        xs = c.radius * np.cos(c.theta) * scale
        ys = c.radius * np.sin(c.theta) * scale
        points = " L ".join(f"{x:.3f} {y:.3f}" for x, y in zip(xs, ys))
        buf.write(f'<path class="{c.role}" stroke-width="{stroke:.3f}" '
                  f'd="M {points} Z"/>\n')
    buf.write("</svg>\n")
    return buf.getvalue().encode()


def export_geometry(geometry, fmt):
    """Serialize a layout to 'csv' or 'svg' bytes."""
    if fmt == "csv":
        return geometry_to_csv(geometry)
    if fmt == "svg":
        return geometry_to_svg(geometry)
    raise ValidationError(f"unknown layout format: {fmt!r}")
