"""Backend selection for the Monte-Carlo kernels.

The compiled extension is used when it was built; set
``RECIPROCAL_CHANNELS_PURE_PYTHON=1`` to force the numpy implementation.
"""

import os

from . import _kernels_py

try:
    if os.environ.get("RECIPROCAL_CHANNELS_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

pure_state_fidelities = _impl.pure_state_fidelities
twirl_choi_sum = _impl.twirl_choi_sum

__all__ = ["BACKEND", "pure_state_fidelities", "twirl_choi_sum"]
