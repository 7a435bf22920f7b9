"""Piecewise-linear paths modulo reparametrization.

A path is identified with its merged sequence of displacement vectors; two
paths from the origin are reparametrization-equivalent exactly when these
sequences agree.  Segments are traversed in equal time, so the breakpoints
of an ``m``-segment path sit at ``k/m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .errors import DomainError
from .root_data import RootDatum, Weight


@dataclass(frozen=True)
class Path:
    """Canonical path: integer ``rows`` over a shared ``denom``.

    Each row lists the fundamental-weight coefficients of one segment
    followed by its delta coefficient, so ``width`` is the rank plus one.
    Build paths with :func:`canonicalize` or :meth:`straight`; the raw
    constructor trusts its input.
    """

    rows: tuple
    denom: int
    width: int

    @classmethod
    def straight(cls, mu: Weight) -> "Path":
        return canonicalize([mu])

    @classmethod
    def empty(cls, rank: int) -> "Path":
        return cls((), 1, rank + 1)

    @classmethod
    def _from_kernel(cls, result, width) -> "Path":
        rows, denom = result
        return cls(rows, denom, width)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return self.width - 1

    @property
    def segments(self) -> tuple:
        return tuple(_row_weight(r, self.denom) for r in self.rows)

    @property
    def endpoint(self) -> Weight:
        if not self.rows:
            return Weight((0,) * self.rank)
        return _row_weight([sum(col) for col in zip(*self.rows)], self.denom)

    def is_classical(self) -> bool:
        return all(r[-1] == 0 for r in self.rows)


def _row_weight(row, denom) -> Weight:
    return Weight(tuple(Fraction(x, denom) for x in row[:-1]), Fraction(row[-1], denom))


def canonicalize(raw_segments: Sequence[Weight], rank: int | None = None) -> Path:
    """Drop zero segments and merge consecutive positively-collinear ones.

    ``rank`` is required only when ``raw_segments`` is empty.
    """
    raw_segments = list(raw_segments)
    if not raw_segments:
        if rank is None:
            raise DomainError("an empty segment list needs an explicit rank")
        return Path.empty(rank)
    width = len(raw_segments[0].coords) + 1
    den = lcm(*(c.denominator for w in raw_segments for c in (*w.coords, w.delta)))
    rows = [tuple(int(c * den) for c in (*w.coords, w.delta)) for w in raw_segments]
    return Path._from_kernel(kernels.canonical_form(rows, den), width)


def _check_t(t) -> Fraction:
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise DomainError(f"time {t} outside [0, 1]")
    return t


def evaluate(p: Path, t) -> Weight:
    """Position ``p(t)`` under the equal-time parametrization."""
    t = _check_t(t)
    m = len(p.rows)
    if m == 0:
        return Weight((0,) * p.rank)
    pos = t * m
    k = min(int(pos), m - 1)
    acc = [0] * len(p.rows[0])
    for row in p.rows[:k]:
        acc = [a + x for a, x in zip(acc, row)]
    frac = pos - k
    vals = [Fraction(a, p.denom) + frac * Fraction(x, p.denom) for a, x in zip(acc, p.rows[k])]
    return Weight(tuple(vals[:-1]), vals[-1])


def _rescale(p: Path, den: int):
    f = den // p.denom
    return [tuple(x * f for x in r) for r in p.rows]


def concat(p1: Path, p2: Path) -> Path:
    if p1.width != p2.width:
        raise DomainError("cannot concatenate paths of different rank")
    if not p1.rows:
        return p2
    if not p2.rows:
        return p1
    den = lcm(p1.denom, p2.denom)
    return Path._from_kernel(kernels.canonical_form(_rescale(p1, den) + _rescale(p2, den), den), p1.width)


def dual(p: Path) -> Path:
    """``t -> p(1 - t) - p(1)``: segments reversed and negated."""
    return Path(tuple(tuple(-x for x in r) for r in reversed(p.rows)), p.denom, p.width)


def reflect_path(p: Path, i, datum: RootDatum, projected=False) -> Path:
    """Pointwise simple reflection ``s_i``; ``projected`` reflects modulo
    delta (classical projection)."""
    col = datum.position(i)
    alpha, ad = datum.alpha_row(i, projected=projected)
    rows = [tuple(x * ad - r[col] * a for x, a in zip(r, alpha)) for r in p.rows]
    return Path._from_kernel(kernels.canonical_form(rows, p.denom * ad), p.width) if rows else p


@dataclass(frozen=True)
class ScalarPL:
    """Continuous piecewise-linear function on ``[0, 1]`` given by its
    breakpoints ``(t, value)``."""

    breakpoints: tuple

    def __post_init__(self):
        ts = [t for t, _ in self.breakpoints]
        if ts[0] != 0 or ts[-1] != 1 or any(a >= b for a, b in zip(ts, ts[1:])):
            raise DomainError("breakpoint times must increase strictly from 0 to 1")

    def __call__(self, t) -> Fraction:
        t = _check_t(t)
        bps = self.breakpoints
        for (t0, v0), (t1, v1) in zip(bps, bps[1:]):
            if t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        return bps[-1][1]

    def __neg__(self) -> "ScalarPL":
        return ScalarPL(tuple((t, -v) for t, v in self.breakpoints))


def h_function(p: Path, i, datum: RootDatum) -> ScalarPL:
    """``t -> <alpha_i^vee, p(t)>`` sampled at the segment boundaries."""
    col = datum.position(i)
    m = len(p.rows)
    if m == 0:
        return ScalarPL(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))))
    acc = 0
    pts = [(Fraction(0), Fraction(0))]
    for k, r in enumerate(p.rows, 1):
        acc += r[col]
        pts.append((Fraction(k, m), Fraction(acc, p.denom)))
    return ScalarPL(tuple(pts))


def min_value(h: ScalarPL):
    """``(minimum, first argmin, last argmin)``; extrema of a piecewise-linear
    function occur at breakpoints."""
    m = min(v for _, v in h.breakpoints)
    hits = [t for t, v in h.breakpoints if v == m]
    return m, hits[0], hits[-1]


# -- serialization ---------------------------------------------------------


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def path_to_json(p: Path, datum: RootDatum) -> list:
    out = []
    for seg in p.segments:
        out.append({
            "lambda": {str(i): _fmt(c) for i, c in zip(datum.index_set, seg.coords) if c},
            "delta": _fmt(seg.delta),
        })
    return out


def path_from_json(data: list, datum: RootDatum) -> Path:
    segs = []
    for seg in data:
        coeffs = {int(k): Fraction(v) for k, v in seg["lambda"].items()}
        segs.append(datum.weight(coeffs, Fraction(seg.get("delta", "0/1"))))
    return canonicalize(segs, datum.rank)
