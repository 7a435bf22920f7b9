from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from battery import KR_CASES
from littelmann.crystal_graph import check_axioms
from littelmann.errors import DomainError
from littelmann.folding import all_foldings, identity_folding, lookup, psi
from littelmann.level_zero import (check_psi_delta, check_tensor_factorization, classical_projection,
                                   generate_projected, level_zero_weight, verify_kr_virtualization)
from littelmann.paths import Path, canonicalize, h_function
from littelmann.root_data import Weight, cartan_datum

A1T = cartan_datum("A1~")
C2T = cartan_datum("C2~")
AFFINE_FOLDINGS = {k: f for k, f in all_foldings().items() if f.source.is_affine}


def test_projection_examples():
    w1 = C2T.level_zero_fundamental_weight(1)
    assert classical_projection(Path.straight(w1), C2T) == Path.straight(w1)
    assert len(classical_projection(Path.straight(C2T.null_root()), C2T)) == 0
    with pytest.raises(DomainError):
        classical_projection(Path.straight(cartan_datum("C2").weight([1, 0])), cartan_datum("C2"))


def test_projection_merges_segments():
    a, b = A1T.weight([1, -1]), A1T.weight([1, -1], 1)
    p = canonicalize([a, b])
    assert len(p) == 2 and len(classical_projection(p, A1T)) == 1


fr = st.fractions(min_value=-3, max_value=3, max_denominator=4)
affine_paths = st.lists(st.tuples(fr, fr, fr), min_size=1, max_size=5).map(
    lambda segs: canonicalize([A1T.weight([a, b], d) for a, b, d in segs], 2))


def _turning_values(h):
    """Values of ``h`` at its turning points; invariant under reparametrization."""
    vals = []
    for _, v in h.breakpoints:
        if not vals or vals[-1] != v:
            vals.append(v)
    keep = vals[:1]
    for a, b, c in zip(vals, vals[1:], vals[2:]):
        if (b - a) * (c - b) < 0:
            keep.append(b)
    return keep + vals[1:][-1:]


@given(affine_paths)
def test_h_invariant_under_projection(p):
    # dropping delta can delete whole segments, so compare up to reparametrization
    q = classical_projection(p, A1T)
    for i in A1T.index_set:
        assert _turning_values(h_function(p, i, A1T)) == _turning_values(h_function(q, i, A1T))


def test_h_invariant_same_times_without_pure_delta_segments():
    p = canonicalize([A1T.weight([1, -1], 1), A1T.weight([-2, 2], Fraction(1, 2))])
    q = classical_projection(p, A1T)
    for i in A1T.index_set:
        h, k = h_function(p, i, A1T), h_function(q, i, A1T)
        assert h.breakpoints == k.breakpoints


# (type, node, size) with sizes from the classical decomposition of B^{r,1}
PROJECTED = [
    ("A1~", 1, 2), ("C2~", 1, 4), ("C2~", 2, 5), ("A3~", 2, 6), ("C3~", 2, 14),
    ("D4~", 2, 29), ("B3~", 1, 7), ("D4~3", 1, 8), ("E6~2", 1, 27), ("F4~", 4, 26),
]


@pytest.mark.parametrize("t,r,size", PROJECTED)
def test_projected_crystals(t, r, size):
    d = cartan_datum(t)
    B = generate_projected(d, {r: 1})
    assert len(B) == size
    assert len(B.components()) == 1
    assert check_axioms(B) == []


def test_projected_zero_and_weights():
    B = generate_projected(A1T, [1])
    w = A1T.level_zero_fundamental_weight(1)
    assert set(B.weights) == {w, w - A1T.simple_root(1).classical()}
    assert len(generate_projected(C2T, [0, 0])) == 1
    with pytest.raises(DomainError):
        generate_projected(cartan_datum("C2"), [1, 0])
    with pytest.raises(DomainError):
        generate_projected(C2T, [1])


@pytest.mark.parametrize("t,m", [("C2~", [1, 1]), ("A3~", [1, 0, 1]), ("D3~2", [1, 1])])
def test_weights_in_root_lattice(t, m):
    d = cartan_datum(t)
    assert d.kac_label(0) == 1
    lam = level_zero_weight(d, m)
    B = generate_projected(d, m)
    # with a_0 = 1 the classical root lattice is spanned by alpha_1..alpha_n
    cols = [d.simple_root(j).classical().coords for j in d.index_set[1:]]
    basis = sympy.Matrix(cols).T
    for w in B.weights:
        diff = sympy.Matrix([sympy.Rational(c.numerator, c.denominator)
                             for c in (w - lam).coords])
        sol, params = basis.gauss_jordan_solve(diff)
        assert not params and all(x.is_integer for x in sol)


@pytest.mark.parametrize("name", sorted(AFFINE_FOLDINGS))
def test_psi_preserves_level_zero(name):
    fold = AFFINE_FOLDINGS[name]
    assert check_psi_delta(fold)
    src = fold.source
    for k, i in enumerate(src.index_set[1:]):
        mu = src.level_zero_fundamental_weight(i) * (k + 1) + src.null_root() * Fraction(1, 3)
        assert src.level(mu) == 0
        assert fold.target.level(psi(fold, mu)) == 0


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), fr)
def test_psi_level_zero_random(cs, d):
    fold = lookup("C2~>A3~")
    mu = level_zero_weight(C2T, {1: 0, 2: 0})
    for i, c in zip((1, 2), cs):
        mu = mu + C2T.level_zero_fundamental_weight(i) * c
    mu = mu + C2T.null_root() * d
    assert fold.target.level(psi(fold, mu)) == 0


def test_psi_delta_examples():
    fold = lookup("C2~>A3~")
    assert psi(fold, C2T.null_root()) == fold.target.null_root() * 2
    assert check_psi_delta(identity_folding(A1T))
    assert not check_psi_delta(fold.with_gamma((1, 1, 1)))
    with pytest.raises(DomainError):
        check_psi_delta(lookup("C2>A3"))


@pytest.mark.parametrize("t,m,sizes", [
    ("A1~", [1], (2, 2)), ("A1~", [2], (4, 4)), ("C2~", [1, 1], (20, 20)),
    ("A3~", [1, 0, 1], (16, 16)),
])
def test_tensor_factorization(t, m, sizes):
    rep = check_tensor_factorization(cartan_datum(t), m)
    assert rep.passed, rep.to_json()
    assert (rep.sizes["crystal"], rep.sizes["tensor"]) == sizes


def test_kr_identity():
    rep = verify_kr_virtualization(identity_folding(A1T), 1)
    assert rep.passed, rep.to_json()


@pytest.mark.parametrize("name,r", KR_CASES[:3])
def test_kr_cases(name, r):
    fold = lookup(name)
    assert fold.gamma_of(r) == 1
    rep = verify_kr_virtualization(fold, r)
    assert rep.passed, rep.to_json()
    assert rep.sizes["mismatches"] == 0


def test_kr_twisted_source_without_unit_gamma():
    fold = lookup("A4~2>A3~")
    assert fold.gamma_of(2) == 2
    assert verify_kr_virtualization(fold, 2).passed


def test_kr_hypothesis_violation():
    fold = lookup("C2~>A3~")
    with pytest.raises(DomainError, match="gamma_2"):
        verify_kr_virtualization(fold, 2)
    with pytest.raises(DomainError):
        verify_kr_virtualization(fold, 0)
    with pytest.raises(DomainError):
        verify_kr_virtualization(lookup("C2>A3"), 1)


def test_kr_detects_bad_gamma():
    fold = lookup("D3~2>A3~").with_gamma((2, 1, 1))
    rep = verify_kr_virtualization(fold, 1, depth=2)
    assert not rep.passed
