"""Root operators ``e_i^(k)``, ``f_i^(k)`` on paths and the statistics
``epsilon_i``, ``phi_i``, ``wt``.

Every operator takes ``projected=True`` to act modulo delta, which is how
projected level-zero crystals are generated.  Verification mode (see
:func:`verification`) recomputes lowering through the dual route and
checks closed forms of the statistics against iteration.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import DomainError
from .paths import Path, dual, h_function
from .root_data import RootDatum, Weight

_verify = bool(os.environ.get("LITTELMANN_VERIFY"))


@contextmanager
def verification(enabled=True):
    """Temporarily switch cross-checking on (or off)."""
    global _verify
    old, _verify = _verify, enabled
    try:
        yield
    finally:
        _verify = old


def verifying() -> bool:
    return _verify


def _apply(p: Path, i, datum: RootDatum, k: int, lowering: bool, projected: bool):
    if k < 1:
        raise DomainError(f"operator power must be positive, got {k}")
    col = datum.position(i)
    if not p.rows:
        return None
    alpha, ad = datum.alpha_row(i, projected=projected)
    res = kernels.root_operator(p.rows, p.denom, col, alpha, ad, k, lowering)
    if res is None:
        return None
    return Path._from_kernel(res, p.width)


def raise_path(p: Path, i, datum: RootDatum, k: int = 1, projected=False):
    """``e_i^(k) p``, or ``None`` when ``m_i(p) > -k``."""
    return _apply(p, i, datum, k, False, projected)


def lower_path(p: Path, i, datum: RootDatum, k: int = 1, projected=False):
    """``f_i^(k) p``, or ``None`` when ``H_i(1) - m_i(p) < k``."""
    out = _apply(p, i, datum, k, True, projected)
    if _verify:
        back = _apply(dual(p), i, datum, k, False, projected)
        back = None if back is None else dual(back)
        if back != out:
            raise AssertionError(f"f_{i}^({k}) disagrees with the dual route on {p}")
    return out


def depth(p: Path, i, datum: RootDatum):
    """Exact ``(m_i(p), H_i(1))`` as fractions."""
    lo, end = kernels.h_extrema(p.rows, datum.position(i))
    return Fraction(lo, p.denom), Fraction(end, p.denom)


def _count(p, i, datum, lowering, projected):
    n = 0
    while True:
        p = _apply(p, i, datum, 1, lowering, projected)
        if p is None:
            return n
        n += 1


def epsilon(p: Path, i, datum: RootDatum, projected=False) -> int:
    """Length of the e_i-string above ``p``, counted by iteration."""
    n = _count(p, i, datum, False, projected)
    if _verify:
        m, _ = depth(p, i, datum)
        if m.denominator == 1 and n != -m:
            raise AssertionError(f"epsilon_{i} = {n} but -m_i = {-m}")
    return n


def phi(p: Path, i, datum: RootDatum, projected=False) -> int:
    """Length of the f_i-string below ``p``, counted by iteration."""
    n = _count(p, i, datum, True, projected)
    if _verify:
        m, end = depth(p, i, datum)
        if m.denominator == 1 and n != end - m:
            raise AssertionError(f"phi_{i} = {n} but H_i(1) - m_i = {end - m}")
        if m.denominator == 1 and n != epsilon(p, i, datum, projected) + end:
            raise AssertionError("phi = epsilon + <alpha^vee, wt> fails")
    return n


def weight(p: Path) -> Weight:
    return p.endpoint


# -- explicit subdivision (for display and inspection) ----------------------


@dataclass(frozen=True)
class Subdivision:
    """Cut times of the finest subdivision used by an operator.

    ``kinds[j]`` describes the interval ``[cut_times[j], cut_times[j + 1]]``:
    ``"level"`` pieces are kept, ``"falling"`` (for e) or ``"rising"`` (for f)
    pieces are reflected.
    """

    cut_times: tuple
    kinds: tuple


def subdivision(p: Path, i, datum: RootDatum, k: int = 1, lowering=False):
    """Subdivision of ``[t0, t1]`` chosen by ``e_i^(k)`` (or ``[t0bar, t1bar]``
    for ``f_i^(k)``) under the equal-time parametrization; ``None`` when the
    operator vanishes."""
    if k < 1:
        raise DomainError(f"operator power must be positive, got {k}")
    h = h_function(p, i, datum)
    H = [v for _, v in h.breakpoints]
    nseg = len(H) - 1
    mn = min(H)
    level = mn + k
    moving = []  # reflected time intervals
    if not lowering:
        if mn > -k:
            return None
        run_min = Fraction(0)
        for j in range(nseg):
            a, b = H[j], H[j + 1]
            top = min(a, run_min, level)
            if b < a and b < top:
                moving.append(((j + (a - top) / (a - b)) / nseg, Fraction(j + 1, nseg)))
            run_min = min(run_min, b)
        t0 = next((j + (H[j] - level) / (H[j] - H[j + 1])) / nseg
                  for j in range(nseg) if H[j + 1] < level)
        t1 = Fraction(H.index(mn), nseg)
        kind = "falling"
    else:
        if H[-1] - mn < k:
            return None
        for j in range(nseg):
            a, b = H[j], H[j + 1]
            top = min(min(H[j + 1:]), level)
            if b > a and top > a:
                moving.append((Fraction(j, nseg), (j + (top - a) / (b - a)) / nseg))
        t0 = Fraction(nseg - H[::-1].index(mn), nseg)
        t1 = next((j + (level - H[j]) / (H[j + 1] - H[j])) / nseg
                  for j in range(nseg - 1, -1, -1) if H[j] < level)
        kind = "rising"
    merged = []
    for a, b in moving:
        if merged and merged[-1][1] == a:
            merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    cuts, kinds = [t0], []
    for a, b in merged:
        if a > cuts[-1]:
            cuts.append(a)
            kinds.append("level")
        cuts.append(b)
        kinds.append(kind)
    if t1 > cuts[-1]:
        cuts.append(t1)
        kinds.append("level")
    return Subdivision(tuple(cuts), tuple(kinds))
