"""Cartan data for finite and affine Kac-Moody types.

Conventions
-----------
``A[i][j] = <alpha_i^vee, alpha_j>`` and simple roots are expanded in the
fundamental weights column-wise, ``alpha_j = sum_i A[i][j] Lambda_i``.  With
this convention type C2 has ``alpha_1 = 2 Lambda_1 - Lambda_2`` and
``alpha_2 = -2 Lambda_1 + 2 Lambda_2`` (node 2 long).

Affine weights carry an extra rational coefficient of the null root delta.
The special simple root ``alpha_0`` gets delta-coefficient ``1/a_0`` so that
``sum_j a_j alpha_j`` is exactly ``delta``.

Diagrams are stored as root lengths plus bonds; the Cartan matrix is derived
from the symmetric form ``(alpha_i, alpha_j)``.  Kac labels are computed as
the primitive positive null vectors of the matrix, never hand entered.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping

from .errors import DomainError

MAX_RANK = 8

_TYPE_RE = re.compile(r"^([A-G])(\d+)(?:(~)([123])?(d)?)?$")


@dataclass(frozen=True)
class CartanType:
    """A Kac classification label.

    ``n`` is the subscript as written (``A5~2`` has ``n == 5``); ``twist`` is
    0 for finite types and the twisting order otherwise.
    """

    family: str
    n: int
    twist: int = 0
    dagger: bool = False

    def __post_init__(self):
        if not _admissible(self.family, self.n, self.twist, self.dagger):
            raise DomainError(f"inadmissible Cartan type {self}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = _TYPE_RE.match(text.strip())
        if not m:
            raise DomainError(f"cannot parse Cartan type {text!r}")
        family, n, tilde, order, dag = m.groups()
        twist = 0
        if tilde:
            twist = int(order) if order else 1
        return cls(family, int(n), twist, bool(dag))

    @property
    def is_affine(self) -> bool:
        return self.twist > 0

    @property
    def classical_rank(self) -> int:
        """Number of nodes of the finite (or classical) diagram."""
        if self.twist == 2:
            if self.family == "A":
                return self.n // 2 if self.n % 2 == 0 else (self.n + 1) // 2
            if self.family == "D":
                return self.n - 1
            if self.family == "E":
                return 4
        if self.twist == 3:
            return 2
        return self.n

    def __str__(self):
        s = f"{self.family}{self.n}"
        if self.twist:
            s += "~"
            if self.twist > 1:
                s += str(self.twist)
            if self.dagger:
                s += "d"
        return s


def _admissible(family, n, twist, dagger):
    if n < 1 or n > MAX_RANK + 1:
        return False
    if dagger and not (family == "A" and twist == 2 and n % 2 == 0):
        return False
    if twist in (0, 1):
        return {
            "A": n >= 1,
            "B": n >= 2 if twist == 0 else n >= 3,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[family] and n <= MAX_RANK
    if twist == 2:
        if family == "A":
            return n >= 2 and (n % 2 == 0 or n >= 5)
        if family == "D":
            return n >= 3
        return family == "E" and n == 6
    if twist == 3:
        return family == "D" and n == 4
    return False


# ---------------------------------------------------------------------------
# weights


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Weight:
    """Rational weight: coefficients of the fundamental weights in index-set
    order, plus the coefficient of delta (always 0 in finite type)."""

    coords: tuple
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_q(c) for c in self.coords))
        object.__setattr__(self, "delta", _q(self.delta))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)),
                      self.delta + other.delta)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)),
                      self.delta - other.delta)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords), -self.delta)

    def __mul__(self, c) -> "Weight":
        c = _q(c)
        return Weight(tuple(c * a for a in self.coords), c * self.delta)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.delta == 0 and not any(self.coords)

    def classical(self) -> "Weight":
        return Weight(self.coords, 0)


# ---------------------------------------------------------------------------
# diagrams


def _chain(nodes):
    return [(a, b) for a, b in zip(nodes, nodes[1:])]


def _diagram(ct: CartanType):
    """Return (index_set, lengths, bonds) where bonds maps an edge to the
    symmetric form value; missing values default to ``-max(len)/2``."""
    f, n = ct.family, ct.n
    bonds: dict = {}
    if ct.twist == 0:
        nodes = list(range(1, n + 1))
        lengths = {i: 2 for i in nodes}
        if f == "A":
            edges = _chain(nodes)
        elif f == "B":
            lengths[n] = 1
            edges = _chain(nodes)
        elif f == "C":
            lengths = {i: 1 for i in nodes}
            lengths[n] = 2
            edges = _chain(nodes)
        elif f == "D":
            edges = _chain(nodes[:-1]) + [(n - 2, n)]
        elif f == "E":
            edges = [(1, 3)] + _chain(nodes[2:]) + [(2, 4)]
        elif f == "F":
            lengths = {1: 2, 2: 2, 3: 1, 4: 1}
            edges = _chain(nodes)
        else:  # G2, node 1 short
            lengths = {1: 1, 2: 3}
            edges = [(1, 2)]
        return nodes, lengths, {e: None for e in edges}

    if ct.twist == 1:
        nodes, lengths, fin = _diagram(CartanType(f, n))
        lengths = {0: 2, **lengths}
        if f == "A" and n == 1:
            return [0, 1], {0: 2, 1: 2}, {(0, 1): Fraction(-2)}
        extra = {
            "A": [(0, 1), (0, n)],
            "B": [(0, 2)],
            "C": [(0, 1)],
            "D": [(0, 2)],
            "E": [(0, {6: 2, 7: 1, 8: 8}.get(n))],
            "F": [(0, 1)],
            "G": [(0, 2)],
        }[f]
        if f == "G":
            lengths[0] = 3
        bonds = dict(fin)
        bonds.update({e: None for e in extra})
        return [0] + nodes, lengths, bonds

    if ct.twist == 2 and f == "A" and n % 2 == 0:
        r = n // 2
        nodes = list(range(0, r + 1))
        lengths = {i: 2 for i in nodes}
        lengths[0], lengths[r] = (4, 1) if ct.dagger else (1, 4)
        return nodes, lengths, {e: None for e in _chain(nodes)}
    if ct.twist == 2 and f == "A":
        r = (n + 1) // 2
        nodes = list(range(0, r + 1))
        lengths = {i: 1 for i in nodes}
        lengths[r] = 2
        edges = [(0, 2), (1, 2)] + _chain(nodes[2:])
        return nodes, lengths, {e: None for e in edges}
    if ct.twist == 2 and f == "D":
        r = n - 1
        nodes = list(range(0, r + 1))
        lengths = {i: 2 for i in nodes}
        lengths[0] = lengths[r] = 1
        return nodes, lengths, {e: None for e in _chain(nodes)}
    if ct.twist == 2:  # E6^(2), classical F4 with reversed labels
        nodes = [0, 1, 2, 3, 4]
        lengths = {0: 1, 1: 1, 2: 1, 3: 2, 4: 2}
        return nodes, lengths, {e: None for e in _chain(nodes)}
    # D4^(3), classical G2 with node 1 short
    nodes = [0, 1, 2]
    return nodes, {0: 1, 1: 1, 2: 3}, {e: None for e in _chain(nodes)}


def _matrix_from_diagram(nodes, lengths, bonds):
    pos = {i: k for k, i in enumerate(nodes)}
    size = len(nodes)
    a = [[0] * size for _ in range(size)]
    for k in range(size):
        a[k][k] = 2
    for (i, j), form in bonds.items():
        if form is None:
            form = -Fraction(max(lengths[i], lengths[j]), 2)
        for x, y in ((i, j), (j, i)):
            v = 2 * form / lengths[x]
            if v.denominator != 1:
                raise AssertionError(f"non-integral Cartan entry at {(x, y)}")
            a[pos[x]][pos[y]] = int(v)
    return tuple(tuple(row) for row in a)


def _primitive_null_vector(rows):
    """Positive primitive integer vector spanning the kernel of ``rows``."""
    m = [[Fraction(x) for x in r] for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                fac = m[k][c]
                m[k] = [x - fac * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise AssertionError("affine Cartan matrix must have corank 1")
    vec = [Fraction(0)] * ncols
    vec[free[0]] = Fraction(1)
    for row, c in zip(m, pivots):
        vec[c] = -row[free[0]]
    den = lcm(*(v.denominator for v in vec))
    ints = [int(v * den) for v in vec]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    if ints[0] < 0:
        ints = [-v for v in ints]
    if any(v <= 0 for v in ints):
        raise AssertionError("null vector is not positive")
    return ints


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootDatum:
    cartan_type: CartanType
    index_set: tuple
    matrix: tuple
    lengths: tuple
    kac_labels: tuple = ()
    dual_kac_labels: tuple = ()
    _pos: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_pos", {i: k for k, i in enumerate(self.index_set)})
        a = self.matrix
        n = len(self.index_set)
        for p in range(n):
            if a[p][p] != 2:
                raise DomainError("Cartan matrix diagonal must be 2")
            for q in range(n):
                if p != q and (a[p][q] > 0 or (a[p][q] == 0) != (a[q][p] == 0)):
                    raise DomainError("invalid off-diagonal Cartan entries")
                if self.lengths[p] * a[p][q] != self.lengths[q] * a[q][p]:
                    raise DomainError("lengths do not symmetrize the Cartan matrix")
        if self.is_affine:
            for p in range(n):
                if sum(a[p][q] * self.kac_labels[q] for q in range(n)) != 0:
                    raise DomainError("Kac labels are not a null vector")
                if sum(self.dual_kac_labels[q] * a[q][p] for q in range(n)) != 0:
                    raise DomainError("dual Kac labels are not a null covector")

    # -- basic accessors ---------------------------------------------------

    @property
    def is_affine(self) -> bool:
        return self.cartan_type.is_affine

    @property
    def rank(self) -> int:
        return len(self.index_set)

    def position(self, i) -> int:
        try:
            return self._pos[i]
        except KeyError:
            raise IndexError(f"index {i!r} not in {self.index_set}") from None

    def entry(self, i, j) -> int:
        return self.matrix[self.position(i)][self.position(j)]

    def kac_label(self, i) -> int:
        self._require_affine()
        return self.kac_labels[self.position(i)]

    def dual_kac_label(self, i) -> int:
        self._require_affine()
        return self.dual_kac_labels[self.position(i)]

    def length(self, i) -> int:
        """Relative squared length of ``alpha_i`` (the symmetrizer)."""
        return self.lengths[self.position(i)]

    def neighbors(self, i):
        p = self.position(i)
        return [j for q, j in enumerate(self.index_set) if q != p and self.matrix[p][q]]

    def _require_affine(self):
        if not self.is_affine:
            raise DomainError(f"{self.cartan_type} is not affine")

    # -- weights -------------------------------------------------------------

    def zero(self) -> Weight:
        return Weight((0,) * self.rank)

    def weight(self, coeffs, delta=0) -> Weight:
        """Build a weight from a mapping ``i -> c`` or a sequence in
        index-set order."""
        if isinstance(coeffs, Mapping):
            coords = [Fraction(0)] * self.rank
            for i, c in coeffs.items():
                coords[self.position(i)] = _q(c)
            return Weight(tuple(coords), delta)
        coeffs = tuple(coeffs)
        if len(coeffs) != self.rank:
            raise DomainError(f"expected {self.rank} coefficients, got {len(coeffs)}")
        return Weight(coeffs, delta)

    def fundamental_weight(self, i) -> Weight:
        return self.weight({i: 1})

    def null_root(self) -> Weight:
        self._require_affine()
        return Weight((0,) * self.rank, 1)

    def simple_root(self, j) -> Weight:
        q = self.position(j)
        delta = Fraction(0)
        if self.is_affine and q == 0:
            delta = Fraction(1, self.kac_labels[0])
        return Weight(tuple(row[q] for row in self.matrix), delta)

    def pair(self, i, mu: Weight) -> Fraction:
        return mu.coords[self.position(i)]

    def reflect(self, i, mu: Weight) -> Weight:
        c = self.pair(i, mu)
        if c == 0:
            return mu
        return mu - self.simple_root(i) * c

    def level(self, mu: Weight) -> Fraction:
        self._require_affine()
        return sum((a * c for a, c in zip(self.dual_kac_labels, mu.coords)), Fraction(0))

    def level_zero_fundamental_weight(self, i) -> Weight:
        """``Lambda_i - (a_i^vee / a_0^vee) Lambda_0``; the ratio keeps the
        level zero when ``a_0^vee != 1`` (the reversed A_2n^(2) labelling)."""
        self._require_affine()
        if self.position(i) == 0:
            raise DomainError("level-zero fundamental weights are indexed by I_0")
        c = Fraction(self.dual_kac_label(i), self.dual_kac_labels[0])
        return self.weight({i: 1, self.index_set[0]: -c})

    def is_integral(self, mu: Weight) -> bool:
        return all(c.denominator == 1 for c in mu.coords)

    def is_dominant(self, mu: Weight) -> bool:
        return self.is_integral(mu) and all(c >= 0 for c in mu.coords)

    def format_weight(self, mu: Weight, name="Lambda") -> str:
        terms = []
        for i, c in zip(self.index_set, mu.coords):
            if c:
                terms.append((c, f"{name}[{i}]"))
        if mu.delta:
            terms.append((mu.delta, "delta"))
        if not terms:
            return "0"
        out = ""
        for k, (c, sym) in enumerate(terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = sym if mag == 1 else f"{mag}*{sym}"
            if k == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += f" {sign} {body}"
        return out

    # -- kernel support ------------------------------------------------------

    def alpha_row(self, i, projected=False):
        """``alpha_i`` as an integer row (Lambda coefficients, then delta)
        scaled by a common denominator; returns ``(row, denominator)``."""
        alpha = self.simple_root(i)
        d = 0 if projected else alpha.delta
        den = Fraction(d).denominator
        row = tuple(int(c * den) for c in alpha.coords) + (int(d * den),)
        return row, den

    def classical(self) -> "RootDatum":
        """Restriction of an affine datum to ``I_0``.  Node labels of the
        affine diagram are kept, so e.g. the restriction of ``E6~2`` is an
        F4 matrix with reversed labelling."""
        self._require_affine()
        keep = range(1, self.rank)
        ct = CartanType(_classical_family(self.cartan_type), self.cartan_type.classical_rank)
        return RootDatum(
            cartan_type=ct,
            index_set=tuple(self.index_set[p] for p in keep),
            matrix=tuple(tuple(self.matrix[p][q] for q in keep) for p in keep),
            lengths=tuple(self.lengths[p] for p in keep),
        )

    def __str__(self):
        return str(self.cartan_type)


def _classical_family(ct: CartanType) -> str:
    if ct.twist == 1:
        return ct.family
    if ct.twist == 3:
        return "G"
    if ct.family == "E":
        return "F"
    if ct.family == "D":
        return "B"
    if ct.family == "A" and ct.n % 2 == 0:
        return "B" if ct.dagger else "C"
    return "C"


@lru_cache(maxsize=None)
def _datum_for(ct: CartanType) -> RootDatum:
    nodes, lengths, bonds = _diagram(ct)
    a = _matrix_from_diagram(nodes, lengths, bonds)
    kac = dual = ()
    if ct.is_affine:
        kac = tuple(_primitive_null_vector(a))
        dual = tuple(_primitive_null_vector([list(col) for col in zip(*a)]))
    return RootDatum(ct, tuple(nodes), a, tuple(lengths[i] for i in nodes), kac, dual)


def cartan_datum(ct) -> RootDatum:
    """Root datum for a type given as ``CartanType`` or string (``"C2~"``)."""
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    return _datum_for(ct)


# ---------------------------------------------------------------------------
# Weyl dimension oracle (finite type only; independent of the path code)


def positive_roots(datum: RootDatum):
    """Positive roots as integer coefficient tuples over the simple roots,
    found by closing the simple roots under all simple reflections."""
    if datum.is_affine:
        raise DomainError("positive roots are only enumerated in finite type")
    n = datum.rank
    a = datum.matrix
    simple = [tuple(int(p == q) for q in range(n)) for p in range(n)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        beta = todo.pop()
        for p in range(n):
            c = sum(a[p][q] * beta[q] for q in range(n))
            if c == 0:
                continue
            img = tuple(b - c * (q == p) for q, b in enumerate(beta))
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return sorted(r for r in seen if all(x >= 0 for x in r))


def weyl_dimension(datum: RootDatum, lam: Weight) -> int:
    if datum.is_affine:
        raise DomainError("Weyl dimension formula applies to finite type only")
    if not datum.is_dominant(lam):
        raise DomainError("weight must be dominant integral")
    ell = datum.lengths
    n = datum.rank
    num = Fraction(1)
    for beta in positive_roots(datum):
        # <beta^vee, mu> = 2 (beta, mu) / (beta, beta); only (beta, .) survives the ratio
        lam_part = sum(beta[p] * ell[p] * lam.coords[p] for p in range(n))
        rho_part = sum(beta[p] * ell[p] for p in range(n))
        num *= Fraction(lam_part + rho_part) / rho_part
    if num.denominator != 1:
        raise AssertionError("Weyl dimension is not an integer")
    return int(num)


def all_finite_types(max_rank: int = 4) -> Iterable[CartanType]:
    for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
        for n in range(lo, max_rank + 1):
            yield CartanType(fam, n)
    for fam, n in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)):
        if n <= max_rank:
            yield CartanType(fam, n)
