import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperbound.errors import PreconditionError
from hyperbound.gf import extend, field_of_order
from hyperbound.homopoly import HomoPoly
from hyperbound.projgeom import LinearSubspace, enumerate_points, enumerate_subspaces, field_matmul

F2, F3, F4 = (field_of_order(q) for q in (2, 3, 4))
HERM4 = "X0^2*X1+X0*X1^2+X2^2*X3+X2*X3^2"


def poly(text, field, nvars, degree=None):
    return HomoPoly.from_text(text, field, nvars, degree)


@st.composite
def forms(draw, qs=(2, 3, 4, 5), max_vars=4, max_deg=4):
    q = draw(st.sampled_from(qs))
    F = field_of_order(q)
    nv = draw(st.integers(1, max_vars))
    d = draw(st.integers(0, max_deg))
    mons = [e for e in itertools.product(range(d + 1), repeat=nv) if sum(e) == d]
    chosen = draw(st.lists(st.sampled_from(mons), max_size=6))
    terms = {e: draw(st.integers(1, q - 1)) for e in chosen}
    return HomoPoly(F, nv, d, terms)


def test_evaluate_examples():
    f = poly("X0*X1+X2*X3", F3, 4)
    assert f.evaluate((1, 0, 1, 0)) == 0
    assert poly("X0*X1+X2*X3", F2, 4).evaluate((1, 1, 1, 1)) == 0
    # omega is index 2 in F_4; omega + omega^2 = 1
    assert poly(HERM4, F4, 4).evaluate((1, 2, 0, 0)) == 1


def test_evaluate_many_matches_scalar_path():
    f = poly(HERM4 + "+3*X0*X1*X2", F4, 4)
    pts = np.array(list(itertools.product(range(4), repeat=4)))
    vals = f.evaluate_many(pts)
    assert all(int(v) == f.evaluate(tuple(p)) for v, p in zip(vals, pts))


def test_arity_checks():
    f = poly("X0*X1", F3, 3)
    with pytest.raises(PreconditionError):
        f.evaluate((1, 0))
    with pytest.raises(PreconditionError):
        poly("X0*X1+X2", F3, 3)
    with pytest.raises(PreconditionError):
        poly("X5", F3, 3)
    with pytest.raises(PreconditionError):
        poly("4*X0", F3, 2)


def test_partial_examples():
    f = poly("X0*X1+X2*X3", F3, 4)
    assert f.partial(0) == poly("X1", F3, 4)
    assert poly("X0^2", F2, 1).partial(0).is_zero()
    assert poly(HERM4, F4, 4).partial(1) == poly("X0^2", F4, 4)


def test_text_round_trip_and_zero():
    f = poly("2*X0^2*X1+X1^3+3*X0*X1*X2", F4, 3)
    assert poly(f.to_text(), F4, 3) == f
    z = HomoPoly.zero(F4, 3, 2)
    assert z.to_text() == "0" and poly("0", F4, 3, 2) == z
    with pytest.raises(PreconditionError):
        poly("0", F4, 3)


def test_restrict_examples():
    f = poly("X0*X1+X2*X3", F3, 4)
    assert f.restrict(LinearSubspace.from_equations(F3, 3, [(1, 0, 0, 0), (0, 0, 1, 0)])).is_zero()
    line = LinearSubspace.from_rows(F3, 3, [(1, 0, 0, 0), (0, 0, 0, 1)])
    assert f.restrict(line).is_zero()


def test_hermitian_restricted_to_non_contained_line():
    h = poly(HERM4, F4, 4)
    line = LinearSubspace.from_rows(F4, 3, [(1, 0, 0, 0), (0, 1, 0, 0)])
    g = h.restrict(line)
    assert g.degree == 3 and g.nvars == 2 and not g.is_zero()
    roots = [p for p in enumerate_points(F4, 1) if g.evaluate(p) == 0]
    assert len(roots) <= 3


def test_substitute_is_composition():
    f = poly("X0^2*X1+2*X1*X2^2", F3, 3)
    A = [[1, 2, 0], [0, 1, 1], [2, 0, 1]]
    g = f.substitute(A)
    for y in itertools.product(range(3), repeat=3):
        x = tuple(int(v) for v in field_matmul(F3, np.array(A), np.array(y).reshape(3, 1)).ravel())
        assert g.evaluate(y) == f.evaluate(x)


def test_zero_witness_examples():
    assert HomoPoly.zero(F3, 3, 2).zero_witness() is None
    filling = poly("X0^4*X1+X0*X1^4", F4, 2)  # X0^q X1 - X0 X1^q, as -1 = 1 in char 2
    with pytest.raises(PreconditionError):
        filling.zero_witness()
    assert poly("X0*X1", F2, 2).zero_witness() == (1, 1)


def test_scalar_multiple():
    f = poly("X0*X1+2*X2^2", F3, 3)
    assert f.scale(2).is_scalar_multiple(f) == 2
    assert poly("X0*X1", F3, 3).is_scalar_multiple(f) is None


def test_embed_preserves_values():
    f = poly(HERM4, F4, 4)
    ext = extend(F4, 2)
    g = f.embed(ext)
    for p in itertools.islice(enumerate_points(F4, 3), 40):
        assert ext.embed(f.evaluate(p)) == g.evaluate(tuple(ext.embed(c) for c in p))


@settings(max_examples=150, deadline=None)
@given(forms())
def test_euler_relation(f):
    F = f.field
    lhs = HomoPoly.zero(F, f.nvars, f.degree)
    for i in range(f.nvars):
        d = f.partial(i)
        if not d.is_zero():
            lhs = lhs + HomoPoly.variable(F, f.nvars, i) * d
    assert lhs == f.scale(F.from_int(f.degree))


@settings(max_examples=150, deadline=None)
@given(forms(), st.data())
def test_partials_commute(f, data):
    i = data.draw(st.integers(0, f.nvars - 1))
    j = data.draw(st.integers(0, f.nvars - 1))
    assert f.partial(i).partial(j) == f.partial(j).partial(i)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("m,k", [(2, 1), (3, 1), (3, 2), (2, 0)])
def test_restrict_evaluate_commute_exhaustive(q, m, k):
    F = field_of_order(q)
    rng = np.random.default_rng(q * 100 + m * 10 + k)
    mons = [e for e in itertools.product(range(3), repeat=m + 1) if sum(e) == 2]
    f = HomoPoly(F, m + 1, 2, {e: int(rng.integers(0, q)) for e in mons})
    for S in itertools.islice(enumerate_subspaces(F, k, m), 30):
        g = f.restrict(S)
        for y in enumerate_points(F, k):
            x = field_matmul(F, np.array([y]), S.basis_array())[0]
            assert g.evaluate(y) == f.evaluate(tuple(int(v) for v in x))


@settings(max_examples=150, deadline=None)
@given(forms(qs=(2, 3, 4, 5, 7), max_deg=4))
def test_zero_witness_totality(f):
    if f.degree > f.field.q or f.degree == 0 and f.is_zero():
        return
    w = f.zero_witness()
    if f.is_zero():
        assert w is None
    else:
        assert w is not None and f.evaluate(w) != 0


@settings(max_examples=100, deadline=None)
@given(forms(max_vars=3, max_deg=3), st.data())
def test_ring_operations_agree_pointwise(f, data):
    F = f.field
    g = HomoPoly(F, f.nvars, f.degree, {e: F.mul(c, c) for e, c in f.terms.items()})
    pt = tuple(data.draw(st.integers(0, F.q - 1)) for _ in range(f.nvars))
    assert (f + g).evaluate(pt) == F.add(f.evaluate(pt), g.evaluate(pt))
    assert (f * g).evaluate(pt) == F.mul(f.evaluate(pt), g.evaluate(pt))
    assert (f - f).is_zero()
