"""Select the kernel implementation at import time.

The compiled extension is used when it imports; setting the environment
variable ``SATOGR_PURE_PYTHON=1`` forces the pure-Python kernels.
"""

import os

from . import _kernels_py

if os.environ.get("SATOGR_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        kernels = _kernels_py
        COMPILED = False

BACKEND = "cython" if COMPILED else "python"
