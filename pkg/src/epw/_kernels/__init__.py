"""Hot-kernel dispatch: compiled extension if built, pure Python otherwise.

Set EPW_PURE_KERNELS=1 to force the fallback (used by the benchmark and by
the kernel-agreement tests).
"""

import os

if os.environ.get("EPW_PURE_KERNELS"):
    from .pykernels import BACKEND, census_modp, det_packed, theta_scan_modp
else:
    try:
        from .speedups import BACKEND, census_modp, det_packed, theta_scan_modp
    except ImportError:
        from .pykernels import BACKEND, census_modp, det_packed, theta_scan_modp

from .pykernels import EXP_SHIFT, rref_reps_modp
from . import tables

__all__ = [
    "BACKEND",
    "EXP_SHIFT",
    "census_modp",
    "det_packed",
    "theta_scan_modp",
    "rref_reps_modp",
    "tables",
]
