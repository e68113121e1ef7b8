"""Kernel backend selection.

The compiled Cython core is preferred when it was built; otherwise the numpy
reference implementation is used.  Set ``MAXKCUT_KERNELS=python`` to force the
fallback or ``MAXKCUT_KERNELS=cython`` to require the compiled module.
``benchmarks/bench_kernels.py`` compares the two.
"""

import os

from . import reference

try:
    from . import _core
except ImportError:
    _core = None

_requested = os.environ.get("MAXKCUT_KERNELS", "auto").lower()
if _requested not in ("auto", "python", "cython"):
    raise ValueError(
        f"MAXKCUT_KERNELS must be 'auto', 'python' or 'cython', got {_requested!r}"
    )
if _requested == "cython" and _core is None:
    raise ImportError(
        "MAXKCUT_KERNELS=cython but the compiled kernel module is not available"
    )

if _requested == "python" or _core is None:
    _impl = reference
    BACKEND = "python"
else:
    _impl = _core
    BACKEND = "cython"

sector_labels = _impl.sector_labels
cut_values = _impl.cut_values
diff_counts = _impl.diff_counts
gamma_angles = _impl.gamma_angles
edge_dots = _impl.edge_dots
sdp_sweep = _impl.sdp_sweep
