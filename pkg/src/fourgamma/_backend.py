"""Kernel backend selection: compiled extension if available, else pure Python.

FOURGAMMA_BACKEND=python|compiled|auto forces the choice at import time
(``compiled`` raises if the extension is missing).
"""

from __future__ import annotations

import os

_requested = os.environ.get("FOURGAMMA_BACKEND", "auto").lower()
if _requested not in {"auto", "compiled", "python"}:
    raise ValueError(
        f"FOURGAMMA_BACKEND={_requested!r}: expected auto, compiled, or python")

if _requested == "python":
    from . import _pykernels as _impl
    BACKEND_NAME = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
        BACKEND_NAME = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _pykernels as _impl  # type: ignore[no-redef]
        BACKEND_NAME = "python"

de_quad_fourgamma = _impl.de_quad_fourgamma


def kernel_backend() -> str:
    """Name of the quadrature kernel in use: 'compiled' or 'python'."""
    return BACKEND_NAME
