"""Numerical kernels with a compiled fast path and a NumPy fallback.

At import time the package selects the compiled extension when it is
available, unless the environment variable ``SAWCAVITY_FORCE_PURE=1``
demands the NumPy implementation. Both backends expose the same
functions with the same semantics; ``BACKEND`` names the active one.

Exported interface:

- ``j0(x)``, ``j1(x)``: Bessel functions of the first kind, scalar in
  and scalar out, array in and array out.
- ``j0_zero(n)``: the n-th positive zero of J0, n >= 1.
- ``mode_grid(x, z, k_m, r_x, r_z, u0, threads=1)``: focused
  standing-wave amplitude sampled on the outer product of the
  coordinate vectors. Every element is computed independently, so the
  result is identical for any thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from . import pure as _pure

_impl = _pure
if os.environ.get("SAWCAVITY_FORCE_PURE") != "1":
    try:
        from . import _compiled as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND_NAME

j0 = _impl.j0
j1 = _impl.j1


@lru_cache(maxsize=None)
def j0_zero(n):
    """n-th positive zero of J0 (n >= 1)."""
    return _impl.j0_zero(int(n))


def mode_grid(x, z, k_m, r_x, r_z, u0, threads=1):
    """Synthesize the standing-wave amplitude over an (x, z) grid.

    Parameters
    ----------
    x, z : 1D arrays of sample coordinates in m.
    k_m : SAW wavenumber in 1/m.
    r_x, r_z : envelope radii in m.
    u0 : peak amplitude in m.
    threads : number of worker threads for row blocks; any value yields
        bit-identical output because rows are independent.
    """
    xs = np.ascontiguousarray(x, dtype=np.float64)
    zs = np.ascontiguousarray(z, dtype=np.float64)
    out = np.empty((xs.size, zs.size), dtype=np.float64)
    threads = max(1, int(threads))
    if threads == 1 or xs.size < 2 * threads:
        _impl.mode_block(xs, zs, k_m, r_x, r_z, u0, out)
        return out
    bounds = np.linspace(0, xs.size, threads + 1, dtype=int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(_impl.mode_block, xs[a:b], zs, k_m, r_x, r_z, u0,
                        out[a:b])
            for a, b in zip(bounds[:-1], bounds[1:])
            if b > a
        ]
        for fut in futures:
            fut.result()
    return out
