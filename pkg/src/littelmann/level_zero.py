"""Level-zero weights, classically projected path crystals, tensor
factorization checks, and virtualization of the ``s = 1`` KR crystals."""

from __future__ import annotations

from .crystal_graph import (DEFAULT_CAP, CrystalGraph, explore, generate,
                            is_isomorphic, tensor_all, trivial)
from .errors import DomainError
from .folding import Folding, check_intertwining, describe, psi, virtualize_path
from .kernels import canonical_form
from .paths import Path
from .reports import Report
from .root_data import RootDatum, Weight


def classical_projection(p: Path, datum: RootDatum) -> Path:
    """Drop the delta coordinate of every segment (then re-canonicalize,
    since segments collinear modulo delta may now merge)."""
    if not datum.is_affine:
        raise DomainError("classical projection needs an affine type")
    if not p.rows:
        return p
    rows = [r[:-1] + (0,) for r in p.rows]
    return Path._from_kernel(canonical_form(rows, p.denom), p.width)


def _multiplicities(datum: RootDatum, m) -> dict:
    classical = datum.index_set[1:]
    if not isinstance(m, dict):
        m = list(m)
        if len(m) != len(classical):
            raise DomainError(f"expected {len(classical)} multiplicities, got {len(m)}")
        m = dict(zip(classical, m))
    for i, k in m.items():
        if i not in classical:
            raise DomainError(f"{i} is not a classical node of {datum}")
        if not isinstance(k, int) or k < 0:
            raise DomainError("multiplicities must be nonnegative integers")
    return {i: m.get(i, 0) for i in classical}


def level_zero_weight(datum: RootDatum, m) -> Weight:
    """``sum_i m_i varpi_i`` over the classical nodes."""
    lam = datum.zero()
    for i, k in _multiplicities(datum, m).items():
        if k:
            lam = lam + datum.level_zero_fundamental_weight(i) * k
    return lam


def generate_projected(datum: RootDatum, m, node_cap: int = DEFAULT_CAP) -> CrystalGraph:
    """``B(lam)_cl`` for ``lam = sum m_i varpi_i``, generated directly in the
    projected space under all ``e_i``, ``f_i`` including ``i = 0``."""
    if not datum.is_affine:
        raise DomainError("projected crystals need an affine type")
    return generate(datum, level_zero_weight(datum, m), node_cap, projected=True)


def check_tensor_factorization(datum: RootDatum, m, node_cap: int = DEFAULT_CAP) -> Report:
    """Compare ``B(lam)_cl`` with the tensor product of the
    ``B(varpi_i)_cl`` (factors in ascending ``i``, each ``m_i`` times)."""
    mult = _multiplicities(datum, m)
    report = Report("tensor-factorization", {
        "cartan_type": str(datum), "m": {str(i): k for i, k in mult.items()}})
    B = generate_projected(datum, mult, node_cap)
    factors = []
    for i, k in mult.items():
        if k:
            one = generate_projected(datum, {i: 1}, node_cap)
            factors += [one] * k
    T = tensor_all(factors) if factors else trivial(datum, "classical")
    report.sizes = {"crystal": len(B), "tensor": len(T), "factors": [len(f) for f in factors]}
    ok, _ = is_isomorphic(B, T)
    if not ok:
        report.fail(kind="isomorphism", lhs=len(B), rhs=len(T))
    return report


def check_psi_delta(fold: Folding) -> bool:
    """``Psi(delta) = a_0 gamma_0 delta^`` as an exact weight identity."""
    if not fold.source.is_affine:
        raise DomainError("psi-delta needs an affine folding")
    expected = fold.target.null_root() * (fold.source.kac_label(0) * fold.gamma_of(0))
    return psi(fold, fold.source.null_root()) == expected


def _kr_admissible(fold: Folding, r) -> bool:
    ct = fold.source.cartan_type
    return fold.gamma_of(r) == 1 or (ct.family == "A" and ct.twist == 2 and ct.n % 2 == 0)


def verify_kr_virtualization(fold: Folding, r, node_cap: int = DEFAULT_CAP, depth: int = 6) -> Report:
    """Virtualize ``B(varpi_r)_cl`` into the target.

    (a) ``cl`` commutes with ``Psi^`` on paths of ``B(varpi_r)`` within
    ``depth`` operator steps of the straight path; (b) ``Psi^_cl``
    intertwines every operator (including ``i = 0``) with the virtual ones,
    scales the statistics and lands in the projected target crystal;
    (c) ``Psi(varpi_r) = sum_{b in phi^-1(r)} gamma_r varpi^_b`` and the
    target factors as the matching tensor product.
    """
    src, tgt = fold.source, fold.target
    if not src.is_affine:
        raise DomainError("KR virtualization needs an affine folding")
    if r not in src.index_set[1:]:
        raise DomainError(f"r must be a classical node of {src}, got {r}")
    if not _kr_admissible(fold, r):
        raise DomainError(f"gamma_{r} = {fold.gamma_of(r)} != 1 and the source is not of type A_2n^(2)")
    report = Report("kr", {"folding": fold.name, "r": r, "depth": depth})
    lam = src.level_zero_fundamental_weight(r)

    # (a)
    frontier = explore(src, Path.straight(lam), depth)
    report.sizes["frontier"] = len(frontier)
    for p in frontier:
        lhs = classical_projection(virtualize_path(fold, p), tgt)
        rhs = virtualize_path(fold, classical_projection(p, src))
        if lhs != rhs:
            return report.fail(kind="square", lhs=describe(lhs, tgt), rhs=describe(rhs, tgt))

    # (b)
    B = generate_projected(src, {r: 1}, node_cap)
    images = [virtualize_path(fold, p) for p in B.nodes]
    report.sizes["source_nodes"] = len(B)
    fedges = [{i: B.f(n, i) for i in src.index_set} for n in range(len(B))]
    eedges = [{i: B.e(n, i) for i in src.index_set} for n in range(len(B))]
    stats = [{i: (B.stat(B.eps, n, i), B.stat(B.phi, n, i)) for i in src.index_set}
             for n in range(len(B))]
    report.sizes["mismatches"] = check_intertwining(fold, B.nodes, images, fedges, eedges, stats,
                                                    report, projected=True)
    target_m = {b: fold.gamma_of(r) for b in fold.orbits[r]}
    T = generate_projected(tgt, target_m, node_cap)
    report.sizes["target_nodes"] = len(T)
    for n, vp in enumerate(images):
        if vp not in T.index:
            report.fail(node=n, kind="membership", lhs=describe(vp, tgt), rhs=None)
            break

    # (c)
    expect = level_zero_weight(tgt, target_m)
    got = psi(fold, lam)
    if got != expect:
        report.fail(kind="decomposition", lhs=tgt.format_weight(got), rhs=tgt.format_weight(expect))
    sub = check_tensor_factorization(tgt, target_m, node_cap)
    report.sizes["tensor"] = sub.sizes["tensor"]
    if not sub.passed:
        report.fail(kind="tensor-factorization", lhs=sub.sizes["crystal"], rhs=sub.sizes["tensor"])
    return report
