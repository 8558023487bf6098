"""Backend selection for the bilinear contraction kernel.

The compiled extension handles prime fields; rationals always use the
pure-Python kernel.  ``BHPC_PURE_PYTHON=1`` disables the extension at import.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from ._ckernels import bilinear_outer_modp as _c_outer
except ImportError:  # extension not built
    _c_outer = None

if os.environ.get("BHPC_PURE_PYTHON", "") not in ("", "0"):
    _c_outer = None

_backend = "auto"


def compiled_available() -> bool:
    return _c_outer is not None


def set_backend(name: str) -> None:
    """``"auto"`` (compiled when possible), ``"python"`` or ``"compiled"``."""
    global _backend
    if name not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "compiled" and _c_outer is None:
        raise RuntimeError("compiled kernels are not available")
    _backend = name


def get_backend() -> str:
    return _backend


def active_backend(field) -> str:
    if field.is_prime and _c_outer is not None and _backend != "python":
        return "compiled"
    return "python"


def bilinear_outer(field, C, X, Y):
    """All products B(x_r, y_s) for the rows of X and Y under structure tensor C.

    Returns an array of shape (rows(X), rows(Y), n).
    """
    n = C.shape[0]
    if active_backend(field) == "compiled":
        return _c_outer(
            np.ascontiguousarray(C, dtype=np.int64),
            np.ascontiguousarray(X, dtype=np.int64),
            np.ascontiguousarray(Y, dtype=np.int64),
            field.p,
        )
    out = _pykernels.bilinear_outer(
        C.tolist(), X.tolist(), Y.tolist(),
        p=field.p if field.is_prime else None,
        zero=field.zero,
    )
    arr = np.empty((X.shape[0], Y.shape[0], n), dtype=field.dtype)
    if arr.size:
        arr[...] = out
    return arr
