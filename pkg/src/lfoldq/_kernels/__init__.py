"""Hot-kernel backend selection.

The compiled Cython extension is preferred; the pure NumPy/Python
reference backend is a drop-in replacement (identical results, slower).
Set ``LFOLD_PURE_PYTHON=1`` to force the reference backend.
"""

import os

import numpy as np

from . import _ref

if os.environ.get("LFOLD_PURE_PYTHON") == "1":
    _impl = _ref
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _ref

BACKEND: str = _impl.BACKEND

divisor_power_limbs = _impl.divisor_power_limbs
spf_sieve = _impl.spf_sieve
squarefree_table = _impl.squarefree_table
omega_table = _impl.omega_table
divisor_count_table = _impl.divisor_count_table
rstar_table = _impl.rstar_table
lattice_rep_counts = _impl.lattice_rep_counts
kahan_sum = _impl.kahan_sum
sigma_march = _impl.sigma_march

_LIMB_BITS = 31


def ints_from_limbs(limbs: np.ndarray) -> list[int]:
    """Recombine base-2^31 limb rows into exact Python integers."""
    nlimbs = limbs.shape[0]
    out = limbs[nlimbs - 1].astype(object)
    for j in range(nlimbs - 2, -1, -1):
        out <<= _LIMB_BITS
        out += limbs[j]
    return out.tolist()
