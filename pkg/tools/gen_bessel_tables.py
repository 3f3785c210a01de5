"""Regenerate the frozen coefficient tables in sawcavity/kernels/_tables.py.

The large-argument evaluation of J0 and J1 uses the phase-amplitude form

    J_nu(x) = sqrt(2/(pi*x)) * (P_nu(w)*cos(chi) - (8/x)*Qhat_nu(w)*sin(chi)),

with chi = x - (2*nu + 1)*pi/4 and w = (8/x)^2 in (0, 1] for x >= 8.
P_nu and Qhat_nu = Q_nu * x/8 are smooth on w in [0, 1], so a single
Chebyshev expansion per function reaches full double precision with a
low degree. The raw divergent asymptotic series cannot do that near
x = 8 (its smallest term is about 1e-7 there), which is why the tables
exist.

This script computes P and Q from high-precision reference values

    P_nu =  sqrt(pi*x/2) * ( J_nu(x)*cos(chi) + Y_nu(x)*sin(chi) )
    Q_nu =  sqrt(pi*x/2) * ( Y_nu(x)*cos(chi) - J_nu(x)*sin(chi) )

on Chebyshev-distributed nodes in w, least-squares fits Chebyshev
coefficients, verifies the result densely against mpmath, and writes
the module file. Requires mpmath (a development-time dependency only;
the shipped package never imports it).

Usage: python tools/gen_bessel_tables.py [output_path]
"""

import sys

import mpmath as mp

DEGREE = 12
NODES = 400
VERIFY_POINTS = 1500
OUT_DEFAULT = "src/sawcavity/kernels/_tables.py"

mp.mp.dps = 40


def pq_reference(nu, x):
    """High-precision P_nu(x), Qhat_nu(x) from Bessel J and Y."""
    chi = x - (2 * nu + 1) * mp.pi / 4
    amp = mp.sqrt(mp.pi * x / 2)
    j, y = mp.besselj(nu, x), mp.bessely(nu, x)
    p = amp * (j * mp.cos(chi) + y * mp.sin(chi))
    q = amp * (y * mp.cos(chi) - j * mp.sin(chi))
    return p, q * x / 8


def cheb_design_row(t, degree):
    row = [mp.mpf(1), t]
    for _ in range(2, degree + 1):
        row.append(2 * t * row[-1] - row[-2])
    return row[: degree + 1]


def fit_tables(nu):
    """Least-squares Chebyshev coefficients for P_nu and Qhat_nu over w."""
    ts, ps, qs = [], [], []
    for j in range(NODES):
        w = mp.mpf(1) / 2 * (1 - mp.cos(mp.pi * (j + mp.mpf(1) / 2) / NODES))
        if w == 0:
            continue
        x = 8 / mp.sqrt(w)
        p, qh = pq_reference(nu, x)
        ts.append(2 * w - 1)
        ps.append(p)
        qs.append(qh)
    a = mp.matrix([cheb_design_row(t, DEGREE) for t in ts])
    coeff_p = mp.lu_solve(a.T * a, a.T * mp.matrix(ps))
    coeff_q = mp.lu_solve(a.T * a, a.T * mp.matrix(qs))
    return [float(c) for c in coeff_p], [float(c) for c in coeff_q]


def clenshaw(t, coeffs):
    b1 = b2 = 0.0
    for c in reversed(coeffs[1:]):
        b1, b2 = 2 * t * b1 - b2 + c, b1
    return t * b1 - b2 + coeffs[0]


def j_from_tables(nu, x, cp, cq):
    w = (8.0 / x) ** 2
    t = 2 * w - 1
    import math

    chi = x - (2 * nu + 1) * math.pi / 4
    amp = math.sqrt(2 / (math.pi * x))
    return amp * (clenshaw(t, cp) * math.cos(chi)
                  - (8 / x) * clenshaw(t, cq) * math.sin(chi))


def verify(nu, cp, cq):
    worst = 0.0
    for i in range(VERIFY_POINTS):
        x = 8.0 + (4000.0 - 8.0) * i / (VERIFY_POINTS - 1)
        approx = j_from_tables(nu, x, cp, cq)
        exact = float(mp.besselj(nu, mp.mpf(x)))
        worst = max(worst, abs(approx - exact))
    return worst


def emit(path, tables, errors):
    lines = [
        '"""Chebyshev coefficient tables for the large-argument Bessel evaluation.',
        "",
        "Generated by tools/gen_bessel_tables.py; do not edit by hand.",
        "",
        "Each table expands one amplitude function of the phase-amplitude form",
        "",
        "    J_nu(x) = sqrt(2/(pi*x)) * (P_nu*cos(chi) - (8/x)*Qhat_nu*sin(chi)),",
        "",
        "as sum_k c_k * T_k(t) with t = 2*(8/x)**2 - 1, valid for x >= 8.",
        f"Verified against 40-digit reference values on [8, 4000]: max abs",
        f"error {errors[0]:.2e} (J0), {errors[1]:.2e} (J1).",
        '"""',
        "",
    ]
    for name, coeffs in tables.items():
        lines.append(f"{name} = (")
        for c in coeffs:
            lines.append(f"    {c!r},")
        lines.append(")")
        lines.append("")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else OUT_DEFAULT
    p0, q0 = fit_tables(0)
    p1, q1 = fit_tables(1)
    err0 = verify(0, p0, q0)
    err1 = verify(1, p1, q1)
    print(f"max abs error on [8, 4000]: J0 {err0:.3e}, J1 {err1:.3e}")
    if err0 > 1e-13 or err1 > 1e-13:
        raise SystemExit("fit quality regression; tables not written")
    emit(out, {"P0": p0, "Q0HAT": q0, "P1": p1, "Q1HAT": q1}, (err0, err1))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
