from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from littelmann.crystal_graph import generate
from littelmann.crystal_ops import (depth, epsilon, lower_path, phi, raise_path, subdivision,
                                    verification, weight)
from littelmann.errors import DomainError
from littelmann.paths import Path, canonicalize, dual, h_function
from littelmann.root_data import cartan_datum
from oracle_ops import lower_literal, raise_literal

C2 = cartan_datum("C2")
A3 = cartan_datum("A3")

SMALL = [("A2", [1, 1]), ("B2", [1, 1]), ("C2", [3, 1]), ("G2", [1, 1]), ("A3", [1, 0, 1]),
         ("A1", [3])]


def straight(d, *c):
    return Path.straight(d.weight(list(c)))


@pytest.fixture(scope="module", params=SMALL, ids=lambda x: f"{x[0]}-{x[1]}")
def crystal(request):
    t, lam = request.param
    d = cartan_datum(t)
    return d, generate(d, d.weight(lam))


def test_raise_examples():
    assert raise_path(straight(C2, 1, 0), 1, C2) is None
    assert raise_path(straight(C2, 5, -1), 2, C2) == straight(C2, 3, 1)
    assert raise_path(straight(A3, 5, -2, 5), 2, A3, k=2) == straight(A3, 3, 2, 3)


def test_lower_examples():
    assert lower_path(straight(C2, 3, 1), 2, C2) == straight(C2, 5, -1)
    fp = lower_path(straight(C2, 3, 1), 1, C2)
    assert fp.segments == (C2.weight([-1, Fraction(4, 3)]), C2.weight([2, Fraction(2, 3)]))
    assert weight(fp) == C2.weight([1, 2])
    assert lower_path(straight(C2, -1, 0), 1, C2) is None


def test_statistics_examples():
    p = straight(C2, 3, 1)
    assert [epsilon(p, i, C2) for i in (1, 2)] == [0, 0]
    assert [phi(p, i, C2) for i in (1, 2)] == [3, 1]
    assert epsilon(straight(C2, 5, -1), 2, C2) == 1
    assert epsilon(straight(A3, 5, -2, 5), 2, A3) == 2
    assert phi(straight(C2, -1, 0), 1, C2) == 0


def test_nonpositive_power_rejected():
    with pytest.raises(DomainError):
        raise_path(straight(C2, 1, 0), 1, C2, k=0)
    with pytest.raises(DomainError):
        lower_path(straight(C2, 1, 0), 1, C2, k=-1)


def test_subdivision_figure():
    sub = subdivision(straight(C2, 3, 1), 1, C2, lowering=True)
    assert sub.cut_times == (0, Fraction(1, 3))
    assert sub.kinds == ("rising",)
    assert subdivision(straight(C2, 1, 0), 1, C2) is None


def test_empty_path_is_killed():
    e = Path.empty(2)
    assert raise_path(e, 1, C2) is None and lower_path(e, 1, C2) is None


def test_mutual_inverse(crystal):
    d, B = crystal
    for p in B.nodes:
        for i in d.index_set:
            q = lower_path(p, i, d)
            if q is not None:
                assert raise_path(q, i, d) == p
                assert weight(q) == weight(p) - d.simple_root(i)
            q = raise_path(p, i, d)
            if q is not None:
                assert lower_path(q, i, d) == p


def _iterate(op, p, i, d, k):
    for _ in range(k):
        if p is None:
            return None
        p = op(p, i, d)
    return p


def test_power_equals_iteration_and_duality(crystal):
    d, B = crystal
    for p in B.nodes:
        for i in d.index_set:
            for k in (1, 2, 3):
                up = raise_path(p, i, d, k)
                down = lower_path(p, i, d, k)
                assert up == _iterate(raise_path, p, i, d, k)
                assert down == _iterate(lower_path, p, i, d, k)
                back = raise_path(dual(p), i, d, k)
                assert down == (None if back is None else dual(back))


def test_statistics_under_operators(crystal):
    d, B = crystal
    for p in B.nodes:
        for i in d.index_set:
            e, f = epsilon(p, i, d), phi(p, i, d)
            assert f == e + d.pair(i, weight(p))
            q = raise_path(p, i, d)
            if q is not None:
                assert (epsilon(q, i, d), phi(q, i, d)) == (e - 1, f + 1)


def test_integrality(crystal):
    d, B = crystal
    for p in B.nodes:
        for i in d.index_set:
            h = h_function(p, i, d)
            vals = [v for _, v in h.breakpoints]
            for a, b, c in zip(vals, vals[1:], vals[2:]):
                if b <= a and b <= c:
                    assert b.denominator == 1
            assert vals[-1].denominator == 1 and min(vals).denominator == 1


def test_matches_literal_oracle(crystal):
    d, B = crystal
    for p in B.nodes:
        for i in d.index_set:
            for k in (1, 2, 3):
                assert raise_path(p, i, d, k) == raise_literal(p, i, d, k)
                assert lower_path(p, i, d, k) == lower_literal(p, i, d, k)


def test_verification_mode_runs(crystal):
    d, B = crystal
    with verification():
        for p in B.nodes[:30]:
            for i in d.index_set:
                lower_path(p, i, d)
                phi(p, i, d)


fr = st.fractions(min_value=-3, max_value=3, max_denominator=4)
rand_paths = st.lists(st.tuples(fr, fr), min_size=1, max_size=5).map(
    lambda segs: canonicalize([C2.weight(list(s)) for s in segs], 2))


@settings(max_examples=150)
@given(rand_paths, st.sampled_from([1, 2]), st.integers(1, 3))
def test_arbitrary_paths_match_oracle(p, i, k):
    assert raise_path(p, i, C2, k) == raise_literal(p, i, C2, k)
    assert lower_path(p, i, C2, k) == lower_literal(p, i, C2, k)


@given(rand_paths, st.sampled_from([1, 2]))
def test_depth_and_subdivision_invariants(p, i):
    m, end = depth(p, i, C2)
    vals = [v for _, v in h_function(p, i, C2).breakpoints]
    assert m == min(vals) and end == vals[-1]
    for lowering in (False, True):
        sub = subdivision(p, i, C2, lowering=lowering)
        if sub is None:
            continue
        cuts = sub.cut_times
        assert all(a < b for a, b in zip(cuts, cuts[1:]))
        assert len(sub.kinds) == len(cuts) - 1
        assert all(0 <= t <= 1 for t in cuts)
