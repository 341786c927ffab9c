"""Kernel backend selection.

The compiled extension is used when importable; otherwise, or when the
environment variable ``AGEXT_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the numpy fallback is used.
"""

import os

from . import _pykernels

python_backend = _pykernels

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("AGEXT_PURE_PYTHON", "0") in ("", "0"):
    backend = compiled_backend
    BACKEND_NAME = "compiled"
else:
    backend = python_backend
    BACKEND_NAME = "python"


def get_backend(name: str | None = None):
    if name is None:
        return backend
    if name == "python":
        return python_backend
    if name == "compiled":
        if compiled_backend is None:
            raise RuntimeError("compiled kernels are not built")
        return compiled_backend
    raise ValueError(f"unknown backend {name!r}")
