"""Self-contained SVG rendering for heatmaps and line plots.

Output is plain text with fixed number formatting and a fixed color
ramp, so identical inputs always produce byte-identical files and
golden tests can diff them directly.
"""

import io

import numpy as np

# dark blue -> blue -> teal -> green -> yellow, perceptually ordered
_RAMP = ((0x0B, 0x10, 0x40), (0x2C, 0x4B, 0xB3), (0x21, 0x90, 0x8C),
         (0x5C, 0xC8, 0x63), (0xFD, 0xE7, 0x25))
_LEVELS = 64
_MAX_CELLS = 120  # per axis, before block-average downsampling


def _ramp_color(t):
    """Interpolate the ramp at t in [0, 1], return #rrggbb."""
    t = min(max(t, 0.0), 1.0)
    pos = t * (len(_RAMP) - 1)
    i = min(int(pos), len(_RAMP) - 2)
    frac = pos - i
    lo, hi = _RAMP[i], _RAMP[i + 1]
    rgb = tuple(round(a + (b - a) * frac) for a, b in zip(lo, hi))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


_PALETTE = tuple(_ramp_color(i / (_LEVELS - 1)) for i in range(_LEVELS))


def _downsample(values):
    """Block-average so neither axis exceeds _MAX_CELLS."""
    out = np.asarray(values, dtype=float)
    for axis in (0, 1):
        n = out.shape[axis]
        if n <= _MAX_CELLS:
            continue
        factor = -(-n // _MAX_CELLS)  # ceil division
        edges = np.arange(0, n, factor)
        sums = np.add.reduceat(out, edges, axis=axis)
        counts = np.diff(np.append(edges, n))
        shape = [1, 1]
        shape[axis] = len(counts)
        out = sums / counts.reshape(shape)
    return out


def _fmt(v):
    return f"{v:.6g}"


def heatmap_svg(values, x, z, title="", legend_label=""):
    """Render a 2D field (first axis x, second axis z) as an SVG heatmap.

    Values are normalized to [min, max], quantized to 64 ramp levels,
    and drawn as run-length merged rectangles with x horizontal and z
    vertical (positive z up). A side bar carries the ramp plus the
    min/max annotations.
    """
    grid = _downsample(values)
    nx, nz = grid.shape
    lo = float(np.min(grid))
    hi = float(np.max(grid))
    span = hi - lo
    if span <= 0:
        levels = np.zeros((nx, nz), dtype=int)
    else:
        levels = np.minimum((_LEVELS * (grid - lo) / span).astype(int),
                            _LEVELS - 1)

    cell = 4
    plot_w, plot_h = nx * cell, nz * cell
    margin, legend_w = 40, 70
    width = margin * 2 + plot_w + legend_w
    height = margin * 2 + plot_h

    buf = io.StringIO()
    buf.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    buf.write(f'<svg xmlns="http://www.w3.org/2000/svg" '
              f'width="{width}" height="{height}" '
              f'viewBox="0 0 {width} {height}">\n')
    buf.write(f'<rect width="{width}" height="{height}" fill="white"/>\n')
    if title:
        buf.write(f'<text x="{margin}" y="{margin - 14}" '
                  f'font-family="monospace" font-size="13">{title}</text>\n')

    # rows run along x; merge equal-level runs into single rects
    for iz in range(nz):
        y = margin + (nz - 1 - iz) * cell  # z increases upward
        row = levels[:, iz]
        ix = 0
        while ix < nx:
            level = row[ix]
            run = ix + 1
            while run < nx and row[run] == level:
                run += 1
            buf.write(f'<rect x="{margin + ix * cell}" y="{y}" '
                      f'width="{(run - ix) * cell}" height="{cell}" '
                      f'fill="{_PALETTE[level]}"/>\n')
            ix = run

    # axis extent labels in micrometers
    x_um = (float(x[0]) * 1e6, float(x[-1]) * 1e6)
    z_um = (float(z[0]) * 1e6, float(z[-1]) * 1e6)
    buf.write(f'<text x="{margin}" y="{margin + plot_h + 16}" '
              f'font-family="monospace" font-size="11">'
              f'x: {_fmt(x_um[0])} to {_fmt(x_um[1])} um</text>\n')
    buf.write(f'<text x="{margin}" y="{margin + plot_h + 30}" '
              f'font-family="monospace" font-size="11">'
              f'z: {_fmt(z_um[0])} to {_fmt(z_um[1])} um</text>\n')

    # legend: vertical ramp, max at top
    lx = margin + plot_w + 20
    bar_h = plot_h
    step = bar_h / _LEVELS
    for i in range(_LEVELS):
        y = margin + bar_h - (i + 1) * step
        buf.write(f'<rect x="{lx}" y="{y:.3f}" width="14" '
                  f'height="{step + 0.5:.3f}" fill="{_PALETTE[i]}"/>\n')
    buf.write(f'<text x="{lx + 18}" y="{margin + 10}" '
              f'font-family="monospace" font-size="11">{_fmt(hi)}</text>\n')
    buf.write(f'<text x="{lx + 18}" y="{margin + bar_h}" '
              f'font-family="monospace" font-size="11">{_fmt(lo)}</text>\n')
    if legend_label:
        buf.write(f'<text x="{lx}" y="{margin - 6}" '
                  f'font-family="monospace" font-size="11">'
                  f'{legend_label}</text>\n')
    buf.write("</svg>\n")
    return buf.getvalue().encode()


def line_plot_svg(x, y, title="", x_label="", y_label=""):
    """Render a single trace as an SVG polyline with axis annotations."""
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    plot_w, plot_h = 480, 300
    margin = 50
    width, height = plot_w + 2 * margin, plot_h + 2 * margin

    x_lo, x_hi = float(np.min(xs)), float(np.max(xs))
    y_lo, y_hi = float(np.min(ys)), float(np.max(ys))
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0
    px = margin + (xs - x_lo) / x_span * plot_w
    py = margin + plot_h - (ys - y_lo) / y_span * plot_h
    points = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(px, py))

    buf = io.StringIO()
    buf.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    buf.write(f'<svg xmlns="http://www.w3.org/2000/svg" '
              f'width="{width}" height="{height}" '
              f'viewBox="0 0 {width} {height}">\n')
    buf.write(f'<rect width="{width}" height="{height}" fill="white"/>\n')
    if title:
        buf.write(f'<text x="{margin}" y="{margin - 14}" '
                  f'font-family="monospace" font-size="13">{title}</text>\n')
    buf.write(f'<rect x="{margin}" y="{margin}" width="{plot_w}" '
              f'height="{plot_h}" fill="none" stroke="#999"/>\n')
    buf.write(f'<polyline fill="none" stroke="#2c4bb3" stroke-width="1.5" '
              f'points="{points}"/>\n')
    buf.write(f'<text x="{margin}" y="{height - 12}" '
              f'font-family="monospace" font-size="11">'
              f'{x_label} {_fmt(x_lo)} to {_fmt(x_hi)}</text>\n')
    buf.write(f'<text x="{margin}" y="{margin + plot_h + 16}" '
              f'font-family="monospace" font-size="11">'
              f'{y_label} {_fmt(y_lo)} to {_fmt(y_hi)}</text>\n')
    buf.write("</svg>\n")
    return buf.getvalue().encode()
