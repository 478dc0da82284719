"""Selects the coefficient kernel at import: compiled if available, else pure.

Set QSL2R_FORCE_PURE=1 to skip the compiled extension (used by the kernel
benchmark and by tests that compare the two backends).
"""

import os

if os.environ.get("QSL2R_FORCE_PURE") == "1":
    from . import _cyclocore_py as _impl
else:
    try:
        from . import _cyclocore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _cyclocore_py as _impl

BACKEND = _impl.BACKEND
cyclo_mul = _impl.cyclo_mul
cyclo_axpy = _impl.cyclo_axpy


def load_backend(name):
    """Return the named kernel module ('python' or 'cython'); for benchmarks."""
    if name == "python":
        from . import _cyclocore_py

        return _cyclocore_py
    if name == "cython":
        from . import _cyclocore  # type: ignore[attr-defined]

        return _cyclocore
    raise ValueError(f"unknown kernel backend {name!r}")
