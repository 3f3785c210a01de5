"""Focusing-ring geometry and its CSV/SVG serializations."""

import dataclasses
import math

import numpy as np
import pytest

from sawcavity.errors import ValidationError
from sawcavity.layout import (Contour, ResonatorGeometry, export_geometry,
                              generate_focusing_circuit, geometry_to_csv)
from sawcavity.materials import (AnisotropyProfile, material_for_cut)


def _circuit(material=None, **overrides):
    kwargs = dict(lambda_saw=40e-6, idt_pairs=3, mirror_pairs=2,
                  inner_clear_radius=500e-6, samples_per_contour=90)
    kwargs.update(overrides)
    return generate_focusing_circuit(material or material_for_cut("Y"),
                                     **kwargs)


def test_isotropic_rings_are_circles():
    geom = _circuit()
    for c in geom.contours:
        mean = c.radius.mean()
        assert np.abs(c.radius - mean).max() <= 1e-12 * mean


def test_quarter_wave_spacing_isotropic():
    geom = _circuit()
    radii = [c.radius[0] for c in geom.contours]
    gaps = np.diff(radii)
    assert np.allclose(gaps, 40e-6 / 4, rtol=1e-12)
    assert radii[0] == pytest.approx(500e-6 + 10e-6)


def test_roles_alternate_then_mirror():
    geom = _circuit(idt_pairs=2, mirror_pairs=1)
    roles = [c.role for c in geom.contours]
    assert roles == ["idt_a", "idt_b", "idt_a", "idt_b", "mirror", "mirror"]
    assert [c.index for c in geom.contours] == [1, 2, 3, 4, 5, 6]


def test_ring_count_and_r_eff():
    geom = _circuit(idt_pairs=20, mirror_pairs=5)
    assert geom.n_rings == 50
    outer = 500e-6 + 50 * 10e-6
    assert geom.r_eff == pytest.approx(outer, rel=1e-12)
    assert geom.electrode_width == pytest.approx(10e-6)
    assert geom.electrode_gap == pytest.approx(10e-6)


def test_anisotropic_axis_ratio_matches_rule():
    m = dataclasses.replace(
        material_for_cut("Y"),
        anisotropy=AnisotropyProfile(3488.0, ((1, 0.05),)))
    geom = _circuit(material=m, samples_per_contour=180)
    r0 = 500e-6
    lam = 40e-6
    for n, c in enumerate(geom.contours, start=1):
        # 180 samples put theta = pi/2 exactly on the grid, at index 45
        at0 = c.radius[0]
        at90 = c.radius[len(c.theta) // 4]
        want0 = (r0 + n * lam * 1.05 / 4) * 1.05
        want90 = (r0 + n * lam * 0.95 / 4) * 0.95
        assert at0 / at90 == pytest.approx(want0 / want90, rel=1e-9)


def test_strict_nesting_under_strong_anisotropy():
    m = dataclasses.replace(
        material_for_cut("Y"),
        anisotropy=AnisotropyProfile(3488.0, ((1, 0.3), (2, 0.15))))
    geom = _circuit(material=m, idt_pairs=10, mirror_pairs=10)
    for inner, outer in zip(geom.contours, geom.contours[1:]):
        assert np.all(outer.radius > inner.radius)


def test_contour_collision_reports_ring():
    # the chirped rule nests whenever v(theta) > 0; a profile that dodges
    # its own validation and returns v = 0 along a sampled direction
    # collapses every ring onto r = 0 there, so ring 2 cannot clear ring 1
    class Lying(AnisotropyProfile):
        def __post_init__(self):
            pass  # skip the positivity sweep so the layout guard must act

        def value(self, theta):
            return 3488.0 * (1.0 + math.cos(2.0 * theta))

    m = dataclasses.replace(material_for_cut("Y"),
                            anisotropy=Lying(3488.0))
    with pytest.raises(ValidationError, match="contour collision at ring 2"):
        _circuit(material=m, samples_per_contour=64)


def test_parameter_validation():
    with pytest.raises(ValidationError, match="invalid wavelength"):
        _circuit(lambda_saw=0.0)
    with pytest.raises(ValidationError):
        _circuit(idt_pairs=0)
    with pytest.raises(ValidationError):
        _circuit(mirror_pairs=0)
    with pytest.raises(ValidationError):
        _circuit(samples_per_contour=32)
    with pytest.raises(ValidationError):
        _circuit(inner_clear_radius=0.0)


def test_csv_shape_and_header():
    geom = _circuit(idt_pairs=1, mirror_pairs=1, samples_per_contour=64)
    text = geometry_to_csv(geom).decode()
    lines = text.strip().split("\n")
    assert lines[0] == "ring,role,theta_rad,r_m"
    assert len(lines) == 1 + 4 * 64
    first = lines[1].split(",")
    assert first[0] == "1"
    assert first[1] == "idt_a"
    assert float(first[2]) == 0.0


def test_single_ring_csv():
    theta = np.linspace(0, 2 * math.pi, 72, endpoint=False)
    ring = Contour(index=1, role="idt_a", theta=theta,
                   radius=np.full(72, 1e-3))
    geom = ResonatorGeometry(contours=(ring,), lambda_saw=40e-6,
                             electrode_width=10e-6, electrode_gap=10e-6,
                             r_eff=1e-3, idt_pairs=1, mirror_pairs=0)
    lines = geometry_to_csv(geom).decode().strip().split("\n")
    assert len(lines) == 73
    radii = {line.split(",")[3] for line in lines[1:]}
    assert radii == {"0.001"}


def test_svg_bounding_box_tracks_design_scale():
    # outermost ring lands at 1 mm, so the canvas spans about 2000 um
    geom = _circuit(idt_pairs=20, mirror_pairs=5)
    svg = export_geometry(geom, "svg").decode()
    assert svg.startswith('<?xml')
    token = svg.split('viewBox="')[1].split('"')[0]
    _, _, w, h = (float(v) for v in token.split())
    assert w == h
    assert 1990 < w < 2100
    for cls in ("idt_a", "idt_b", "mirror"):
        assert f'class="{cls}"' in svg


def test_export_format_validation():
    geom = _circuit()
    with pytest.raises(ValidationError, match="unknown layout format"):
        export_geometry(geom, "gds")


def test_exports_are_reproducible():
    a = export_geometry(_circuit(), "csv")
    b = export_geometry(_circuit(), "csv")
    assert a == b
    assert export_geometry(_circuit(), "svg") \
        == export_geometry(_circuit(), "svg")
