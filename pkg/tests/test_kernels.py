"""The compiled and pure-Python kernels must agree exactly."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from littelmann import _kernels_py, kernels

fast = pytest.importorskip("littelmann._kernels")

rows3 = st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-3, 3)),
                 min_size=0, max_size=7)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@given(rows3, st.integers(1, 12))
def test_canonical_form_agrees(rows, denom):
    assert fast.canonical_form(rows, denom) == _kernels_py.canonical_form(rows, denom)


@given(rows3)
def test_h_extrema_agrees(rows):
    assert fast.h_extrema(rows, 0) == _kernels_py.h_extrema(rows, 0)


@given(rows3, st.integers(1, 6), st.integers(1, 3), st.booleans())
def test_root_operator_agrees(rows, denom, k, lowering):
    canon, den = _kernels_py.canonical_form(rows, denom)
    alpha = (2, -1, 0)
    args = (canon, den, 0, alpha, 1, k, lowering)
    if not canon:
        return
    assert fast.root_operator(*args) == _kernels_py.root_operator(*args)


def test_overflow_falls_back():
    big = 2 ** 62
    rows = ((big, big, 0), (-big, big + 1, 0))
    with pytest.raises(OverflowError):
        fast.canonical_form([(big * 2, 1, 0), (big * 2, 1, 0)], 1)
    assert kernels.canonical_form(rows, 1) == _kernels_py.canonical_form(rows, 1)
    huge = [(big * 4, 1, 0), (big * 4, 1, 0)]
    assert kernels.canonical_form(huge, 1) == ((( big * 8, 2, 0),), 1)


def test_pure_backend_forced_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, LITTELMANN_PURE="1")
    code = "from littelmann import kernels; print(kernels.BACKEND)"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert res.stdout.strip() == "python"
