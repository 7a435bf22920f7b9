"""Kernel selection.

The compiled ``_kernels`` extension is used when it imports and
``LITTELMANN_PURE`` is unset.  Any ``OverflowError`` from the compiled
kernels (values beyond 64 bits) is retried with the pure-Python versions,
which use unbounded integers.
"""

import os

from . import _kernels_py

BACKEND = "python"
_fast = None
if not os.environ.get("LITTELMANN_PURE"):
    try:
        from . import _kernels as _fast
        BACKEND = "cython"
    except ImportError:
        _fast = None


def canonical_form(rows, denom):
    if _fast is not None:
        try:
            return _fast.canonical_form(rows, denom)
        except OverflowError:
            pass
    return _kernels_py.canonical_form(rows, denom)


def h_extrema(rows, col):
    if _fast is not None:
        try:
            return _fast.h_extrema(rows, col)
        except OverflowError:
            pass
    return _kernels_py.h_extrema(rows, col)


def root_operator(rows, denom, col, alpha, alpha_denom, k, lowering):
    if _fast is not None:
        try:
            return _fast.root_operator(rows, denom, col, alpha, alpha_denom, k, lowering)
        except OverflowError:
            pass
    return _kernels_py.root_operator(rows, denom, col, alpha, alpha_denom, k, lowering)
