"""Backend selection for the stencil step.

The compiled ``_ckernel`` is preferred; the numpy ``_kernels`` module is the
fallback.  Set ``AGENTHEAT_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels as python_backend

try:
    from . import _ckernel as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("AGENTHEAT_BACKEND", "").lower() != "python":
    step_field = compiled_backend.step_field
    BACKEND = "cython"
else:
    step_field = python_backend.step_field
    BACKEND = "python"

BACKENDS = {"python": python_backend.step_field}
if compiled_backend is not None:
    BACKENDS["cython"] = compiled_backend.step_field

__all__ = ["step_field", "BACKEND", "BACKENDS"]
