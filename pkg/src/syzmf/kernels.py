"""Select the term kernels at import time.

The compiled extension ``syzmf._kernels`` is used when it was built;
otherwise (or when ``SYZMF_PURE_PYTHON=1``) the pure-Python module is used.
``BACKEND`` names the active choice.
"""

import os

from . import _kernels_py as pure

__all__ = ["BACKEND", "add_terms", "mul_terms", "scale_terms", "key_mul", "normalize_coeff", "pure", "compiled"]

compiled = None
if os.environ.get("SYZMF_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

BACKEND = "cython" if compiled is not None else "python"
_impl = compiled if compiled is not None else pure

normalize_coeff = _impl.normalize_coeff
scale_terms = _impl.scale_terms


def key_mul(ka, kb):
    try:
        return _impl.key_mul(ka, kb)
    except OverflowError:
        return pure.key_mul(ka, kb)


def add_terms(a, b, sign=1):
    return _impl.add_terms(a, b, sign)


def mul_terms(a, b):
    try:
        return _impl.mul_terms(a, b)
    except OverflowError:
        return pure.mul_terms(a, b)
