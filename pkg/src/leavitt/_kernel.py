"""Backend selection for the monomial kernels.

The compiled extension is used when importable; set ``LEAVITT_PURE_PYTHON=1``
to force the reference implementation.
"""
import os

from . import _kernel_py

if os.environ.get("LEAVITT_PURE_PYTHON"):
    _impl = _kernel_py
    BACKEND = "python"
else:
    try:
        from . import _kernel_c as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernel_py
        BACKEND = "python"

mono_mul = _impl.mono_mul
mul_terms = _impl.mul_terms
reduce_terms = _impl.reduce_terms
