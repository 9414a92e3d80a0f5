"""Kernel selection at import: compiled core when built, numpy fallback otherwise."""

import os

from . import _fallback

if os.environ.get("KL_BACKEND", "").lower() == "python":
    kernels = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        kernels = _fallback
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
