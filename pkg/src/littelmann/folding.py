"""Diagram foldings, the weight map Psi, virtual crystal operators, and
virtualization checks.

A folding of a target diagram onto a source diagram is a surjection
``phi`` from target nodes to source nodes together with positive scaling
factors ``gamma_i``.  It induces::

    Psi(Lambda_i) = sum_{j in phi^-1(i)} gamma_i * Lambda^_j
    e^v_i = prod_{j in phi^-1(i)} e^_j^{gamma_i}

and a map on paths by applying ``Psi`` to every segment.
"""

from __future__ import annotations

import itertools
import json
import os
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm

from . import kernels
from .crystal_graph import DEFAULT_CAP, generate
from .crystal_ops import depth, epsilon, lower_path, phi, raise_path, verifying
from .errors import DomainError
from .paths import Path
from .reports import Report
from .root_data import MAX_RANK, RootDatum, Weight, cartan_datum, weyl_dimension


class Folding:
    """A folding ``phi: I^ -> I`` with scaling factors.

    ``orbits`` maps each source index ``i`` to ``phi^-1(i)``; ``gamma`` maps
    source indices to positive integers (a sequence in index-set order is
    also accepted).
    """

    def __init__(self, source: RootDatum, target: RootDatum, orbits, gamma, name=""):
        if source.is_affine != target.is_affine:
            raise DomainError("source and target must both be finite or both affine")
        if isinstance(gamma, dict):
            gamma = [gamma.get(i) for i in source.index_set]
        gamma = tuple(gamma)
        if len(gamma) != source.rank or any(not isinstance(g, int) or g < 1 for g in gamma):
            raise DomainError(f"gamma must give a positive integer per source node, got {gamma}")
        if set(orbits) != set(source.index_set):
            raise DomainError("orbits must be given for every source node")
        seen = []
        for i in source.index_set:
            if not orbits[i]:
                raise DomainError(f"empty orbit over source node {i}")
            seen.extend(orbits[i])
        if sorted(seen) != sorted(target.index_set):
            raise DomainError("orbits must partition the target index set")
        self.source = source
        self.target = target
        self.orbits = {i: tuple(sorted(orbits[i])) for i in source.index_set}
        self.gamma = gamma
        self.name = name or f"{source}>{target}"
        self.phi_map = {j: i for i, js in self.orbits.items() for j in js}

    def __repr__(self):
        return f"Folding({self.name!r}, gamma={self.gamma})"

    def __eq__(self, other):
        if not isinstance(other, Folding):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.orbits == other.orbits and self.gamma == other.gamma)

    def __hash__(self):
        return hash((self.name, self.gamma))

    def orbit(self, i):
        return self.orbits[i]

    def gamma_of(self, i) -> int:
        return self.gamma[self.source.position(i)]

    def with_gamma(self, gamma) -> "Folding":
        return Folding(self.source, self.target, self.orbits, gamma,
                       f"{self.name}[gamma={','.join(map(str, gamma))}]")

    @cached_property
    def psi_delta(self) -> Weight:
        """``Psi(delta)``, defined through the root map as
        ``sum_l a_l gamma_l sum_{j in phi^-1(l)} alpha^_j``."""
        out = self.target.zero()
        if not self.source.is_affine:
            return out
        for l in self.source.index_set:
            c = self.source.kac_label(l) * self.gamma_of(l)
            for j in self.orbits[l]:
                out = out + self.target.simple_root(j) * c
        return out

    @cached_property
    def _matrix(self):
        """Integer matrix of Psi on path rows and its denominator."""
        rows = []
        for i in self.source.index_set:
            v = [Fraction(0)] * (self.target.rank + 1)
            for j in self.orbits[i]:
                v[self.target.position(j)] += self.gamma_of(i)
            rows.append(v)
        rows.append(list(self.psi_delta.coords) + [self.psi_delta.delta])
        den = lcm(*(x.denominator for r in rows for x in r))
        return [[int(x * den) for x in r] for r in rows], den

    @cached_property
    def cond_I(self) -> bool:
        return check_conditions(self)["cond_I"]


def psi(fold: Folding, mu: Weight) -> Weight:
    """Linear extension of ``Lambda_i -> sum_j gamma_i Lambda^_j``."""
    out = [Fraction(0)] * fold.target.rank
    for i, c in zip(fold.source.index_set, mu.coords):
        if c:
            for j in fold.orbits[i]:
                out[fold.target.position(j)] += c * fold.gamma_of(i)
    res = Weight(tuple(out))
    if mu.delta:
        if not fold.source.is_affine:
            raise DomainError("finite-type weights have no delta part")
        res = res + fold.psi_delta * mu.delta
    return res


def check_conditions(fold: Folding) -> dict:
    """Check (I) orbits are non-adjacent and (II) ``Psi(alpha_i) =
    sum_j gamma_i alpha^_j``; witnesses name the first failure of each."""
    tgt = fold.target
    out = {"cond_I": True, "cond_II": True, "witnesses": []}
    for i in fold.source.index_set:
        for j, j2 in itertools.combinations(fold.orbits[i], 2):
            if tgt.entry(j, j2) != 0:
                out["cond_I"] = False
                out["witnesses"].append({"condition": "I", "i": i, "j": j, "j2": j2})
                break
        if not out["cond_I"]:
            break
    for i in fold.source.index_set:
        lhs = psi(fold, fold.source.simple_root(i))
        rhs = tgt.zero()
        for j in fold.orbits[i]:
            rhs = rhs + tgt.simple_root(j) * fold.gamma_of(i)
        if lhs != rhs:
            out["cond_II"] = False
            out["witnesses"].append({
                "condition": "II", "i": i,
                "lhs": tgt.format_weight(lhs), "rhs": tgt.format_weight(rhs),
            })
            break
    return out


def virtualize_path(fold: Folding, p: Path) -> Path:
    """``Psi`` applied to every segment, canonicalized."""
    if not p.rows:
        return Path.empty(fold.target.rank)
    mat, den = fold._matrix
    rows = [tuple(sum(r[a] * mat[a][b] for a in range(len(r))) for b in range(len(mat[0])))
            for r in p.rows]
    return Path._from_kernel(kernels.canonical_form(rows, p.denom * den), fold.target.rank + 1)


def _virtual(op, fold, vp, i, strict, projected):
    if strict and not fold.cond_I:
        raise DomainError(f"condition I fails for {fold.name}; virtual operators are undefined")
    g = fold.gamma_of(i)
    orbit = fold.orbits[i]
    out = vp
    for j in orbit:
        out = op(out, j, fold.target, k=g, projected=projected)
        if out is None:
            break
    if verifying() and strict and len(orbit) > 1:
        alt = vp
        for j in reversed(orbit):
            alt = op(alt, j, fold.target, k=g, projected=projected)
            if alt is None:
                break
        if alt != out:
            raise AssertionError(f"orbit operators do not commute at node {i}")
    return out


def virtual_lower(fold: Folding, vp: Path, i, strict=True, projected=False):
    """``f^v_i = prod_j f^_j^{gamma_i}``, applied in ascending ``j``."""
    return _virtual(lower_path, fold, vp, i, strict, projected)


def virtual_raise(fold: Folding, vp: Path, i, strict=True, projected=False):
    return _virtual(raise_path, fold, vp, i, strict, projected)


def virtual_stats(fold: Folding, vp: Path, i, projected=False):
    """``(eps^_j / gamma_i, phi^_j / gamma_i)`` for every ``j`` in the orbit;
    all entries agree when the virtual statistic is well defined."""
    g = fold.gamma_of(i)
    return [(Fraction(epsilon(vp, j, fold.target, projected), g),
             Fraction(phi(vp, j, fold.target, projected), g)) for j in fold.orbits[i]]


def describe(p, datum) -> list | None:
    """Human-readable segment list for reports."""
    if p is None:
        return None
    return [datum.format_weight(s) for s in p.segments]


def check_intertwining(fold, nodes, images, fedges, eedges, stats, report, projected=False):
    """Shared node loop: operators, statistics, weights, integrality.

    ``fedges[n][i]`` / ``eedges[n][i]`` give the source neighbour index or
    ``None``; ``stats[n][i]`` is ``(eps, phi)``.  Returns the mismatch count.
    """
    src, tgt = fold.source, fold.target
    bad = 0
    for n, p in enumerate(nodes):
        vp = images[n]
        w = psi(fold, p.endpoint)
        if projected:
            w = w.classical()
        if vp.endpoint != w:
            bad += 1
            report.fail(node=n, index=None, kind="wt", lhs=tgt.format_weight(vp.endpoint),
                        rhs=tgt.format_weight(w))
        for i in src.index_set:
            for kind, edges, op in (("f", fedges, virtual_lower), ("e", eedges, virtual_raise)):
                m = edges[n][i]
                expect = None if m is None else images[m]
                got = op(fold, vp, i, strict=False, projected=projected)
                if got != expect:
                    bad += 1
                    report.fail(node=n, index=i, kind=kind, lhs=describe(got, tgt),
                                rhs=describe(expect, tgt))
            eps, ph = stats[n][i]
            g = fold.gamma_of(i)
            for j in fold.orbits[i]:
                e_hat = epsilon(vp, j, tgt, projected)
                p_hat = phi(vp, j, tgt, projected)
                if e_hat != g * eps or p_hat != g * ph:
                    bad += 1
                    report.fail(node=n, index=i, kind="stats", j=j,
                                lhs=[e_hat, p_hat], rhs=[g * eps, g * ph])
                m, end = depth(vp, j, tgt)
                if m.denominator != 1 or end.denominator != 1:
                    report.notes.append(f"node {n}: non-integral H_{j} extrema")
    return bad


def verify_virtualization(fold: Folding, lam: Weight, node_cap: int = DEFAULT_CAP,
                          target_cap: int = 5000) -> Report:
    """Check that ``Psi`` realizes ``B(lam)`` as a virtual crystal inside
    ``B(Psi(lam))``.

    Membership of the images in ``B(Psi(lam))`` is checked directly when the
    target crystal has at most ``target_cap`` elements.  Larger targets rely
    on reachability: every image is obtained from the highest target path by
    virtual operators, which are words in the target operators.
    """
    src, tgt = fold.source, fold.target
    if src.is_affine:
        raise DomainError("affine foldings are verified through level_zero.verify_kr_virtualization")
    report = Report("virtualization", {
        "folding": fold.name, "lambda": src.format_weight(lam), "gamma": list(fold.gamma)})
    B = generate(src, lam, node_cap)
    images = [virtualize_path(fold, p) for p in B.nodes]
    report.sizes["source_nodes"] = len(B)
    if len(set(images)) != len(images):
        report.fail(kind="injectivity")
    fedges = [{i: B.f(n, i) for i in src.index_set} for n in range(len(B))]
    eedges = [{i: B.e(n, i) for i in src.index_set} for n in range(len(B))]
    stats = [{i: (B.stat(B.eps, n, i), B.stat(B.phi, n, i)) for i in src.index_set}
             for n in range(len(B))]
    report.sizes["mismatches"] = check_intertwining(fold, B.nodes, images, fedges, eedges, stats, report)
    top = psi(fold, lam)
    if images[0] != Path.straight(top):
        report.fail(node=0, kind="highest", lhs=describe(images[0], tgt), rhs=tgt.format_weight(top))
    dim = weyl_dimension(tgt, top) if tgt.is_dominant(top) else None
    if dim is not None and dim <= target_cap:
        T = generate(tgt, top, node_cap=max(node_cap, dim + 1))
        report.sizes["target_nodes"] = len(T)
        report.sizes["membership"] = "generated"
        for n, vp in enumerate(images):
            if vp not in T.index:
                report.fail(node=n, kind="membership", lhs=describe(vp, tgt), rhs=None)
                break
    else:
        report.sizes["target_nodes"] = dim
        report.sizes["membership"] = "reachability"
    return report


# -- catalog ---------------------------------------------------------------------


def _arrows(datum: RootDatum):
    out = []
    for a, b in itertools.combinations(datum.index_set, 2):
        if datum.entry(a, b) != 0 and datum.length(a) != datum.length(b):
            out.append((a, b))
    return out


def _component(datum, start, cut):
    seen, todo = {start}, [start]
    while todo:
        a = todo.pop()
        for b in datum.neighbors(a):
            if {a, b} == set(cut) or b in seen:
                continue
            seen.add(b)
            todo.append(b)
    return seen


def scaling_factors(source: RootDatum, orbits) -> tuple:
    """Scaling factors from the arrow structure of an affine source diagram.

    One arrow: all ones if it points into the component of node 0, else the
    order of the folding on that component and one elsewhere.  Two arrows:
    ones on the interior, and at each end node 2 if that end is the long
    one.  Arrows point from the longer root to the shorter one.
    """
    arrows = _arrows(source)
    order = lcm(*(len(js) for js in orbits.values()))
    if not arrows:
        return tuple(1 for _ in source.index_set)
    if len(arrows) == 1:
        a, b = arrows[0]
        short = a if source.length(a) < source.length(b) else b
        comp0 = _component(source, 0, (a, b))
        if short in comp0:
            return tuple(1 for _ in source.index_set)
        return tuple(order if i in comp0 else 1 for i in source.index_set)
    if len(arrows) == 2:
        ends = {0, source.index_set[-1]}
        gamma = {i: 1 for i in source.index_set}
        for a, b in arrows:
            for end, other in ((a, b), (b, a)):
                if end in ends:
                    gamma[end] = 2 if source.length(end) > source.length(other) else 1
        return tuple(gamma[i] for i in source.index_set)
    raise DomainError(f"no scaling rule for {len(arrows)} arrows")


def _affine_families(n):
    """``(source, target, orbits)`` for the affine foldings with classical
    source rank ``n``."""
    out = []
    if 2 <= n and 2 * n - 1 <= MAX_RANK:
        orbits = {0: [0], n: [n], **{a: [a, 2 * n - a] for a in range(1, n)}}
        tgt = f"A{2 * n - 1}~"
        for src in (f"C{n}~", f"A{2 * n}~2", f"A{2 * n}~2d", f"D{n + 1}~2"):
            out.append((src, tgt, orbits))
    if 3 <= n and n + 1 <= MAX_RANK:
        orbits = {**{a: [a] for a in range(n)}, n: [n, n + 1]}
        for src in (f"B{n}~", f"A{2 * n - 1}~2"):
            out.append((src, f"D{n + 1}~", orbits))
    if n == 4:
        orbits = {0: [0], 1: [2], 2: [4], 3: [3, 5], 4: [1, 6]}
        out += [("F4~", "E6~", orbits), ("E6~2", "E6~", orbits)]
    if n == 2:
        out += [("G2~", "D4~", {0: [0], 1: [1, 3, 4], 2: [2]}),
                ("D4~3", "D4~", {0: [0], 1: [2], 2: [1, 3, 4]})]
    keep = []
    for src, tgt, orbits in out:
        try:
            keep.append((cartan_datum(src), cartan_datum(tgt), orbits))
        except DomainError:
            continue
    return keep


def _checked(fold: Folding) -> Folding:
    c = check_conditions(fold)
    if not (c["cond_I"] and c["cond_II"]):
        raise AssertionError(f"catalog folding {fold.name} fails its conditions: {c['witnesses']}")
    return fold


def restrict(fold: Folding) -> Folding:
    """Finite-type restriction to ``I_0``, relabelled to the standard
    labelling of the classical source type when needed."""
    src, tgt = fold.source.classical(), fold.target.classical()
    std = cartan_datum(src.cartan_type)
    orbits = {i: fold.orbits[i] for i in src.index_set}
    gamma = {i: fold.gamma_of(i) for i in src.index_set}
    if src.matrix != std.matrix:
        for perm in itertools.permutations(std.index_set):
            relabel = dict(zip(src.index_set, perm))
            if all(std.entry(relabel[a], relabel[b]) == src.entry(a, b)
                   for a in src.index_set for b in src.index_set):
                orbits = {relabel[i]: js for i, js in orbits.items()}
                gamma = {relabel[i]: g for i, g in gamma.items()}
                break
        else:
            raise AssertionError(f"cannot relabel the classical part of {fold.source}")
    tgt_std = cartan_datum(tgt.cartan_type)
    return Folding(std, tgt_std, orbits, gamma, f"{std}>{tgt_std}")


@lru_cache(maxsize=None)
def _catalog(n):
    out = {}
    finite = {}
    for src, tgt, orbits in _affine_families(n):
        fold = _checked(Folding(src, tgt, orbits, scaling_factors(src, orbits)))
        out[fold.name] = fold
        fin = _checked(restrict(fold))
        if fin.name in finite and finite[fin.name] != fin:
            fin.name += ":dual"
        if fin.name not in finite:
            finite[fin.name] = fin
    out.update(finite)
    return out


SUPPORTED_RANKS = tuple(n for n in range(1, MAX_RANK + 1) if _affine_families(n))


def standard_foldings(rank: int | None = None) -> dict:
    """Catalog ``name -> Folding``: the affine foldings at classical source
    rank ``rank`` and their finite restrictions.  Without ``rank``, each
    family appears at its minimal rank."""
    if rank is not None:
        if rank not in SUPPORTED_RANKS:
            raise DomainError(f"no cataloged foldings at rank {rank}; supported: {SUPPORTED_RANKS}")
        return dict(_catalog(rank))
    out = {}
    families = set()
    for n in SUPPORTED_RANKS:
        for name, fold in _catalog(n).items():
            fam = _family_key(fold)
            if fam not in families:
                families.add(fam)
                out[name] = fold
    return out


def _family_key(fold):
    src = fold.source.cartan_type
    tag = (src.family, src.twist, src.dagger, fold.target.cartan_type.family,
           fold.target.cartan_type.twist, fold.name.endswith(":dual"))
    if src.twist == 2 and src.family == "A":
        return tag + (src.n % 2,)
    return tag


def all_foldings() -> dict:
    out = {}
    for n in SUPPORTED_RANKS:
        out.update(_catalog(n))
    return out


def lookup(name: str) -> Folding:
    """Catalog entry by name; the two sides may be given in either order."""
    base, _, suffix = name.partition(":")
    suffix = f":{suffix}" if suffix else ""
    parts = base.split(">")
    if len(parts) != 2:
        raise DomainError(f"folding names look like 'C2~>A3~', got {name!r}")
    catalog = all_foldings()
    for a, b in (parts, parts[::-1]):
        key = f"{a.strip()}>{b.strip()}{suffix}"
        if key in catalog:
            return catalog[key]
    raise DomainError(f"unknown folding {name!r}; available: {', '.join(sorted(catalog))}")


def load_folding(source) -> Folding:
    """Folding from a JSON description ``{source, target, orbits, gamma}``
    (a dict or a file path).  Missing ``gamma`` is filled in by the scaling
    rules for affine sources."""
    if not isinstance(source, dict):
        with open(source) as fh:
            source = json.load(fh)
    src = cartan_datum(source["source"])
    tgt = cartan_datum(source["target"])
    orbits = {int(i): [int(j) for j in js] for i, js in source["orbits"].items()}
    if "gamma" in source:
        gamma = {int(i): int(g) for i, g in source["gamma"].items()}
    elif src.is_affine:
        gamma = scaling_factors(src, orbits)
    else:
        raise DomainError("finite-type folding files must give gamma")
    return Folding(src, tgt, orbits, gamma, source.get("name", ""))


def resolve(spec: str) -> Folding:
    """A catalog name or a path to a folding file."""
    if os.path.exists(spec):
        return load_folding(spec)
    return lookup(spec)


def identity_folding(datum: RootDatum, gamma=1) -> Folding:
    return Folding(datum, datum, {i: [i] for i in datum.index_set},
                   [gamma] * datum.rank, f"{datum}>{datum}")
