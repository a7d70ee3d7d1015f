"""Select the kernel implementation at import time.

``MFGS_BACKEND=python`` forces the pure-Python kernels, ``MFGS_BACKEND=compiled``
requires the extension, anything else prefers the extension when it imports.
"""

from __future__ import annotations

import os

_requested = os.environ.get("MFGS_BACKEND", "auto").strip().lower()

if _requested == "python":
    from . import _pycore as kernels

    BACKEND = "python"
else:
    try:
        from . import _core as kernels

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _pycore as kernels

        BACKEND = "python"

__all__ = ["BACKEND", "kernels"]
