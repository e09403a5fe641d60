import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperbound.errors import BudgetExceeded, PreconditionError
from hyperbound.gf import field_of_order
from hyperbound.projgeom import (LinearSubspace, enumerate_points, enumerate_subspaces,
                                 gaussian_binomial, intersect, iter_point_chunks, normalize,
                                 point_array, rank, span, subspace_count, theta)

F2, F3, F4 = (field_of_order(q) for q in (2, 3, 4))


def test_theta_values():
    assert theta(2, 1) == 3
    assert theta(5, -1) == 0
    assert theta(2, 3) == 15
    with pytest.raises(PreconditionError):
        theta(2, -2)


def test_gaussian_binomial_lines_of_p3():
    assert gaussian_binomial(4, 2, 2) == 35
    assert subspace_count(2, 1, 2) == 7


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("m", range(0, 6))
def test_point_enumeration_counts_and_normalization(q, m):
    F = field_of_order(q)
    pts = list(enumerate_points(F, m))
    assert len(pts) == theta(q, m) == len(set(pts))
    for p in pts:
        assert next(c for c in p if c) == 1
    assert pts == sorted(pts)


def test_p1_f2_points():
    assert list(enumerate_points(F2, 1)) == [(0, 1), (1, 0), (1, 1)]


def test_p2_f3_no_duplicates_under_normalization():
    # oracle: 26 nonzero vectors modulo the 2 nonzero scalars
    classes = {normalize(F3, v) for v in itertools.product(range(3), repeat=3) if any(v)}
    assert len(classes) == 13 == len(list(enumerate_points(F3, 2)))


def test_chunked_enumeration_matches_full():
    whole = point_array(F4, 4)
    parts = np.concatenate(list(iter_point_chunks(4, 4, chunk=7)))
    assert np.array_equal(whole, parts)


def test_point_budget():
    with pytest.raises(BudgetExceeded):
        point_array(F4, 6, max_points=100)


def _subspace_oracle(field, k, m):
    """Span every (k+1)-subset of points and keep the distinct results."""
    found = set()
    for pts in itertools.combinations(enumerate_points(field, m), k + 1):
        if rank(field, pts, m + 1) == k + 1:
            found.add(LinearSubspace.from_rows(field, m, pts))
    return found


@pytest.mark.parametrize("k,m", [(0, 2), (1, 2), (1, 3), (2, 3), (0, 3)])
def test_subspace_enumeration_against_oracle(k, m):
    subs = list(enumerate_subspaces(F2, k, m))
    assert len(subs) == len(set(subs)) == gaussian_binomial(m + 1, k + 1, 2)
    assert set(subs) == _subspace_oracle(F2, k, m)


def test_subspace_enumeration_edge_cases():
    assert list(enumerate_subspaces(F3, 3, 3)) == [LinearSubspace.whole(F3, 3)]
    assert len(list(enumerate_subspaces(F4, 1, 3))) == gaussian_binomial(4, 2, 4)
    with pytest.raises(PreconditionError):
        list(enumerate_subspaces(F2, 4, 3))
    with pytest.raises(BudgetExceeded):
        list(enumerate_subspaces(F4, 2, 5, max_count=10))


def test_span_examples():
    L = LinearSubspace.from_rows(F3, 3, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert span(L, (1, 2, 0, 0)) == L
    line = span(LinearSubspace.point(F3, (1, 0, 0, 0)), (0, 0, 1, 1))
    assert line.dim == 1
    assert span(L, (0, 0, 1, 0)).dim == 2


def test_intersect_examples():
    H1 = LinearSubspace.from_equations(F3, 3, [(1, 0, 0, 0)])
    H2 = LinearSubspace.from_equations(F3, 3, [(0, 1, 2, 0)])
    assert intersect(H1, H2).dim == 1
    assert intersect(H1, H1) == H1
    a = LinearSubspace.from_rows(F3, 3, [(1, 0, 0, 0), (0, 1, 0, 0)])
    b = LinearSubspace.from_rows(F3, 3, [(0, 0, 1, 0), (0, 0, 0, 1)])
    assert intersect(a, b) is None
    assert span(a, b) == LinearSubspace.whole(F3, 3)


def test_dimension_formula_exhaustive_p3_f2():
    subs = [S for k in range(3) for S in enumerate_subspaces(F2, k, 3)]
    for a in subs:
        for b in subs:
            meet = intersect(a, b)
            dm = -1 if meet is None else meet.dim
            assert a.dim + b.dim == span(a, b).dim + dm


def test_subspace_points_and_membership():
    S = LinearSubspace.from_rows(F4, 3, [(1, 2, 0, 3), (0, 0, 1, 1)])
    pts = S.points()
    assert len(pts) == theta(4, 1)
    assert all(tuple(p) in S for p in pts)
    assert all(tuple(r) in S for r in S.basis)
    assert len(S.vectors()) == 16
    eqs = S.equations()
    assert len(eqs) == 2
    again = LinearSubspace.from_equations(F4, 3, eqs)
    assert again == S


def _pencil(field, k, m, d):
    """d subspaces of dim k through a common (k-1)-space, pairwise meeting only there."""
    core = [tuple(int(i == j) for j in range(m + 1)) for i in range(k)]
    outs = []
    for t in range(d):
        v = [0] * (m + 1)
        v[k] = 1
        v[k + 1] = t
        outs.append(LinearSubspace.from_rows(field, m, core + [tuple(v)]))
    return outs


@pytest.mark.parametrize("q,k,m,d", [(2, 1, 3, 2), (3, 1, 3, 3), (4, 2, 4, 3), (3, 2, 4, 2), (5, 1, 2, 4)])
def test_union_count_of_a_pencil(q, k, m, d):
    F = field_of_order(q)
    subs = _pencil(F, k, m, d)
    core = subs[0]
    for s in subs[1:]:
        core = intersect(core, s)
    assert core.dim == k - 1
    union = {tuple(p) for s in subs for p in s.points()}
    assert len(union) == d * q**k + theta(q, k - 1)


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 5]), m=st.integers(1, 4), data=st.data())
def test_rref_is_canonical(q, m, data):
    F = field_of_order(q)
    k = data.draw(st.integers(0, m))
    rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=m + 1, max_size=m + 1),
                              min_size=k + 1, max_size=k + 1))
    if rank(F, rows, m + 1) == 0:
        return
    S = LinearSubspace.from_rows(F, m, rows)
    # any other basis of the same space gives the same canonical form
    mixed = [tuple(F.add(a, F.mul(2 % q or 1, b)) for a, b in zip(S.basis[0], r)) for r in S.basis[1:]]
    T = LinearSubspace.from_rows(F, m, list(S.basis[:1]) + mixed)
    assert T == S
    assert all(r in S for r in rows)
