"""Exhaustive analysis of hypersurfaces over F_q.

Point counts, singular points over small extensions, the invariant k_X
(maximal dimension of an F_q-linear subspace on X), type-S sections,
tangent hyperplanes, splitting into hyperplanes, and projective
equivalence by search over GL(n+1, F_q) for tiny cases.
"""

from __future__ import annotations

import functools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import List, Optional

import numpy as np

from . import kernels
from .catalog import Hypersurface
from .errors import DEFAULT_MAX_POINTS, BudgetExceeded, InternalConsistencyError, PreconditionError
from .gf import MAX_Q, FieldSpec, extend
from .homopoly import HomoPoly
from .projgeom import (LinearSubspace, _tails, check_point_budget, enumerate_points,
                       enumerate_subspaces, field_matmul, intersect, iter_point_chunks,
                       normalize, point_array, span, theta, vector_codes)

DEFAULT_S_MAX = 3


def thread_count() -> int:
    raw = os.environ.get("HYPERBOUND_THREADS", "")
    if raw.isdigit() and int(raw) > 0:
        return int(raw)
    return os.cpu_count() or 1


# -- counting ------------------------------------------------------------------------

@dataclass(frozen=True)
class CountReport:
    n_points: int
    extension_degree: int
    enumerated: int


def _form_over(X: Hypersurface, s: int) -> HomoPoly:
    return X.form if s == 1 else X.form.embed(extend(X.field, s))


def count_points(X: Hypersurface, s: int = 1, max_points: int = DEFAULT_MAX_POINTS) -> CountReport:
    """Number of points of P^n(F_{q^s}) on X."""
    f = _form_over(X, s)
    F = f.field
    total = check_point_budget(F.q, X.n, max_points)
    exps, coeffs = f.arrays()
    powt = F.power_table(f.degree)

    def work(block):
        return kernels.count_zeros(block, exps, coeffs, F.add_table, F.mul_table, powt)

    chunks = iter_point_chunks(F.q, X.n, chunk=1 << 16)
    workers = thread_count()
    if workers > 1 and total > (1 << 17) and kernels.BACKEND == "cython":
        with ThreadPoolExecutor(workers) as pool:
            n = sum(pool.map(work, chunks))
    else:
        n = sum(work(b) for b in chunks)
    return CountReport(int(n), s, total)


def point_set(X: Hypersurface, max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """F_q-points of X as rows, in the canonical point order."""
    pts = point_array(X.field, X.n, max_points)
    return pts[X.form.evaluate_many(pts) == 0]


def member_table(X: Hypersurface, max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """uint8 array indexed by vector code: 1 where the form vanishes (zero vector included)."""
    q, v = X.field.q, X.n + 1
    if q**v > max_points * q:
        raise BudgetExceeded(f"vectors of F_{q}^{v}", q**v, max_points * q)
    vecs = _tails(q, v, 0, q**v)
    member = np.zeros(q**v, dtype=np.uint8)
    member[vector_codes(vecs, q)] = X.form.evaluate_many(vecs) == 0
    return member


# -- singular points -----------------------------------------------------------------------

def _subfield_mask(F: FieldSpec, sub_q: int) -> np.ndarray:
    """Boolean array: element a lies in the subfield with sub_q elements."""
    a = np.arange(F.q)
    return np.array([F.power(int(x), sub_q) == int(x) for x in a])


def singular_points(X: Hypersurface, s_max: int = DEFAULT_S_MAX, max_points: int = DEFAULT_MAX_POINTS):
    """Points over F_{q^s}, 1 <= s <= s_max, where the form and all partials vanish.

    Each point is listed once, with the least s over which it is defined;
    coordinates are element indices of F_{q^s}.  An empty result certifies
    nothing beyond the searched extensions.
    """
    q = X.field.q
    for s in range(1, s_max + 1):
        check_point_budget(q**s, X.n, max_points)
    found = []
    for s in range(1, s_max + 1):
        ext = extend(X.field, s)
        F = ext.field
        forms = [X.form.embed(ext)] + [g.embed(ext) for g in X.form.gradient()]
        forms = [g for g in forms if not g.is_zero()]
        smaller = [_subfield_mask(F, q**t) for t in range(1, s) if s % t == 0]
        for block in iter_point_chunks(F.q, X.n):
            keep = np.ones(block.shape[0], dtype=bool)
            for g in forms:
                idx = np.flatnonzero(keep)
                if not idx.size:
                    break
                keep[idx] = g.evaluate_many(block[idx]) == 0
            for mask in smaller:
                keep &= ~mask[block].all(axis=1)
            found += [(tuple(int(x) for x in row), s) for row in block[keep]]
    return found


def presumed_nonsingular(X: Hypersurface, s_max: int = DEFAULT_S_MAX, max_points: int = DEFAULT_MAX_POINTS):
    """(no singular point found, largest extension degree searched) within the budget."""
    q = X.field.q
    reach = 0
    for s in range(1, s_max + 1):
        if theta(q**s, X.n) > max_points or q**s > 128:
            break
        reach = s
    if reach == 0:
        raise BudgetExceeded(f"points of P^{X.n}(F_{q})", theta(q, X.n), max_points)
    return not singular_points(X, reach, max_points), reach


def gradient_at(X: Hypersurface, pt) -> tuple:
    return tuple(g.evaluate(pt) for g in X.form.gradient())


def is_nonsingular_point(X: Hypersurface, pt) -> bool:
    return X.form.evaluate(pt) == 0 and any(gradient_at(X, pt))


def tangent_hyperplane(X: Hypersurface, pt) -> LinearSubspace:
    """The hyperplane sum_i dF/dX_i(P) X_i = 0 at a nonsingular F_q-point P."""
    pt = tuple(pt)
    if X.form.evaluate(pt) != 0:
        raise PreconditionError(f"{pt} is not on the hypersurface")
    grad = gradient_at(X, pt)
    if not any(grad):
        raise PreconditionError(f"{pt} is a singular point")
    return LinearSubspace.from_equations(X.field, X.n, [grad])


def section(X: Hypersurface, sub: LinearSubspace) -> Hypersurface:
    """X intersected with a linear subspace, as a hypersurface in the subspace's coordinates."""
    g = X.form.restrict(sub)
    if g.is_zero():
        raise PreconditionError("the subspace lies on the hypersurface")
    return Hypersurface(g, sub.dim, f"{X.name}|section")


def embed_points(sub: LinearSubspace, params: np.ndarray) -> np.ndarray:
    """Ambient coordinates of parameter points of a subspace."""
    return field_matmul(sub.field, params, sub.basis_array())


# -- linear subspaces on X --------------------------------------------------------------------

class _ExtensionScreen:
    """Cheap necessary test for span(L, P) lying on X when deg X > q.

    F_q-points alone cannot tell, so the form is evaluated at w + P for a few
    seeded random w in L(F_Q) with Q = q^s as large as allowed.  A contained
    span always passes; a spurious pass is later rejected by restriction.
    """

    def __init__(self, X: Hypersurface, pts: np.ndarray, trials: int = 3):
        q = X.field.q
        s = 1
        while q ** (s + 1) <= MAX_Q:
            s += 1
        self.active = X.degree > q and q**s > X.degree
        if not self.active:
            return
        ext = extend(X.field, s)
        self.E = ext.field
        self.emb = ext.embedding
        self.pts = self.emb[pts]
        self.form = X.form.embed(ext)
        self.trials = trials
        self.rng = np.random.default_rng(0x5EED)

    def apply(self, L: LinearSubspace, good: np.ndarray):
        if not self.active:
            return
        E = self.E
        basis = self.emb[L.basis_array()]
        for _ in range(self.trials):
            idx = np.flatnonzero(good)
            if not idx.size:
                return
            c = self.rng.integers(1, E.q, size=basis.shape[0])
            w = np.zeros(basis.shape[1], dtype=np.int64)
            for ci, row in zip(c, basis):
                w = E.add_table[w, E.mul_table[ci, row]]
            vals = self.form.evaluate_many(E.add_table[w[None, :], self.pts[idx]])
            good[idx[vals != 0]] = False


def contained_levels(X: Hypersurface, cap: Optional[int] = None, max_points: int = DEFAULT_MAX_POINTS):
    """Yield (k, list of every k-dim subspace contained in X) for k = 0, 1, ...

    Stops after the first empty level or at ``cap``.  Level k+1 is built from
    level k: every (k+1)-space on X is the span of any k-space on X inside it
    and one further point of X.  Candidates are screened by point membership
    (plus an extension-field screen when deg X > q) and confirmed by
    restricting the form.
    """
    cap = X.n - 1 if cap is None else cap
    field, q = X.field, X.field.q
    pts = point_set(X, max_points)
    if not len(pts):
        return
    member = member_table(X, max_points)
    index_of = np.full(q ** (X.n + 1), -1, dtype=np.int64)
    index_of[vector_codes(pts, q)] = np.arange(len(pts))

    def mark(good, sub_points):
        idx = index_of[vector_codes(sub_points, q)]
        good[idx[idx >= 0]] = False

    screen = _ExtensionScreen(X, pts)
    level = [LinearSubspace(field, X.n, (tuple(int(x) for x in row),)) for row in pts]
    yield 0, level
    for k in range(cap):
        nxt = {}
        for L in level:
            good = kernels.all_members(L.vectors(), pts, member, field.add_table, q).astype(bool)
            mark(good, L.points())
            screen.apply(L, good)
            while True:
                left = np.flatnonzero(good)
                if not left.size:
                    break
                i = left[0]
                S = span(L, pts[i].tolist())
                mark(good, S.points())
                if S not in nxt:
                    nxt[S] = X.form.vanishes_on(S)
        level = [S for S, ok in nxt.items() if ok]
        if not level:
            return
        yield k + 1, level


def contained_subspaces(X: Hypersurface, k: int, max_points: int = DEFAULT_MAX_POINTS) -> List[LinearSubspace]:
    for lev, subs in contained_levels(X, cap=k, max_points=max_points):
        if lev == k:
            return subs
    return []


def max_linear_dim(X: Hypersurface, cap: Optional[int] = None, max_points: int = DEFAULT_MAX_POINTS) -> int:
    """k_X: the largest k <= cap with a k-dim F_q-subspace on X; -1 without F_q-points."""
    best = -1
    for k, _ in contained_levels(X, cap, max_points):
        best = k
    return best


def max_linear_dim_bruteforce(X: Hypersurface, cap: Optional[int] = None,
                              max_points: int = DEFAULT_MAX_POINTS) -> int:
    """k_X by sweeping every subspace of each dimension (reference path)."""
    cap = X.n - 1 if cap is None else cap
    best = -1
    for k in range(cap + 1):
        if any(X.form.vanishes_on(S) for S in enumerate_subspaces(X.field, k, X.n, max_points)):
            best = k
        else:
            break
    return best


# -- type S ------------------------------------------------------------------------------------

@dataclass
class TypeSReport:
    is_type_S: bool
    degenerate: bool = False
    components: list = dc_field(default_factory=list)
    core: Optional[LinearSubspace] = None
    n_points: int = 0
    expected_points: Optional[int] = None


def type_S(M: LinearSubspace, X: Hypersurface) -> TypeSReport:
    """Decide whether M cap X is d subspaces of dim (n-1)/2 through a common (n-3)/2-dim core."""
    n, d, field = X.n, X.degree, X.field
    if n % 2 == 0:
        raise PreconditionError("type S needs odd n")
    if M.m != n or M.dim != (n + 1) // 2:
        raise PreconditionError(f"M must have dimension {(n + 1) // 2} in P^{n}")
    if d > field.q:
        raise PreconditionError("type S needs degree <= q")
    g = X.form.restrict(M)
    if g.is_zero():
        return TypeSReport(False, degenerate=True, n_points=theta(field.q, M.dim))
    params = point_array(field, M.dim)
    n_points = int(np.count_nonzero(g.evaluate_many(params) == 0))
    comps = []
    for H in enumerate_subspaces(field, M.dim - 1, M.dim):
        if g.vanishes_on(H):
            comps.append(LinearSubspace.from_rows(field, n, embed_points(M, H.basis_array()).tolist()))
    report = TypeSReport(False, components=comps, n_points=n_points)
    if len(comps) != d:
        return report
    core = comps[0]
    for L in comps[1:]:
        core = intersect(core, L)
        if core is None:
            return report
    if core.dim != (n - 3) // 2:
        return report
    expected = d * field.q ** ((n - 1) // 2) + theta(field.q, (n - 3) // 2)
    report.core = core
    report.expected_points = expected
    # every component lies in M cap X, so equal counts mean the union is all of it
    report.is_type_S = n_points == expected
    return report


# -- hyperplane factors ---------------------------------------------------------------------------

def divide_linear(f: HomoPoly, coeffs) -> Optional[HomoPoly]:
    """Exact quotient f / (sum c_i X_i), or None if the linear form does not divide f."""
    field = f.field
    lead = next(int(c) for c in coeffs if c)
    coeffs = normalize(field, coeffs)
    j = next(i for i, c in enumerate(coeffs) if c)
    nv, d = f.nvars, f.degree
    if d == 0:
        return None
    r = HomoPoly.linear(field, [0 if i == j else c for i, c in enumerate(coeffs)])
    # f = sum_k c_k X_j^k with c_k free of X_j
    parts = [dict() for _ in range(d + 1)]
    for e, c in f.terms.items():
        k = e[j]
        stripped = list(e)
        stripped[j] = 0
        parts[k][tuple(stripped)] = c
    c = [HomoPoly(field, nv, d - k, parts[k]) for k in range(d + 1)]
    b = [None] * d
    b[d - 1] = c[d]
    for k in range(d - 1, 0, -1):
        b[k - 1] = c[k] - r * b[k]
    if not (c[0] - r * b[0]).is_zero():
        return None
    terms = {}
    for k in range(d):
        for e, v in b[k].terms.items():
            e = list(e)
            e[j] += k
            terms[tuple(e)] = v
    return HomoPoly(field, nv, d - 1, terms).scale(field.inv(lead))


def hyperplane_components(X: Hypersurface) -> List[LinearSubspace]:
    """F_q-hyperplanes H with H contained in X (as schemes: the linear form divides F)."""
    out = []
    for lin in enumerate_points(X.field, X.n):
        if divide_linear(X.form, lin) is not None:
            out.append(LinearSubspace.from_equations(X.field, X.n, [lin]))
    return out


def linear_factors(f: HomoPoly):
    """Normalized linear forms whose product is f up to a constant, or None."""
    factors = []
    while f.degree > 0:
        for lin in enumerate_points(f.field, f.nvars - 1):
            quo = divide_linear(f, lin)
            if quo is not None:
                factors.append(lin)
                f = quo
                break
        else:
            return None
    return factors


def splits_into_hyperplanes(X: Hypersurface) -> Optional[List[LinearSubspace]]:
    """The hyperplanes (with multiplicity) whose product is X, if the form splits over F_q."""
    factors = linear_factors(X.form)
    if factors is None:
        return None
    return [LinearSubspace.from_equations(X.field, X.n, [lin]) for lin in factors]


# -- projective equivalence -----------------------------------------------------------------------

def gl_order(size: int, q: int) -> int:
    out = 1
    for i in range(size):
        out *= q**size - q**i
    return out


@functools.lru_cache(maxsize=4)
def general_linear_group(field: FieldSpec, size: int, max_group: int = 10**6) -> np.ndarray:
    """Every invertible size x size matrix over F_q, as an array (|G|, size, size)."""
    order = gl_order(size, field.q)
    if order > max_group:
        raise BudgetExceeded(f"GL({size}, {field.q})", order, max_group)
    q = field.q
    vecs = _tails(q, size, 1, q**size)
    out = np.empty((order, size, size), dtype=np.int64)
    count = 0
    stack_rows = []

    def grow(span_codes):
        nonlocal count
        if len(stack_rows) == size:
            out[count] = np.array(stack_rows)
            count += 1
            return
        for v in vecs:
            code = int(vector_codes(v, q))
            if code in span_codes:
                continue
            new_basis = np.array(stack_rows + [v.tolist()])
            lin = LinearSubspace.from_rows(field, size - 1, new_basis.tolist())
            stack_rows.append(v.tolist())
            grow(set(vector_codes(lin.vectors(), q).tolist()))
            stack_rows.pop()

    grow({0})
    if count != order:
        raise InternalConsistencyError("GL enumeration produced the wrong number of matrices")
    out.setflags(write=False)
    return out


def _zero_set_candidates(group, field, pts2, member1):
    """Indices g with g * P on X1 for every row P of pts2."""
    q = field.q
    add, mul = field.add_table, field.mul_table
    ok = np.ones(group.shape[0], dtype=bool)
    step = 4096
    for lo in range(0, group.shape[0], step):
        G = group[lo:lo + step]
        acc = np.zeros((G.shape[0], pts2.shape[0], G.shape[1]), dtype=np.int64)
        for j in range(G.shape[2]):
            acc = add[acc, mul[G[:, None, :, j], pts2[None, :, j, None]]]
        ok[lo:lo + step] = member1[vector_codes(acc, q)].all(axis=1)
    return np.flatnonzero(ok)


def orbit_equivalent(X1: Hypersurface, X2: Hypersurface, max_group: int = 10**6,
                     prefilter: bool = True) -> bool:
    """True iff some g in GL(n+1, F_q) has X1.form(g Y) = c * X2.form(Y), c != 0."""
    if X1.field != X2.field or X1.n != X2.n or X1.degree != X2.degree:
        return False
    if X1.form.is_scalar_multiple(X2.form) is not None:
        return True
    group = general_linear_group(X1.field, X1.n + 1, max_group)
    pts2 = point_set(X2)
    if prefilter:
        if count_points(X1).n_points != len(pts2):
            return False
        if max_linear_dim(X1) != max_linear_dim(X2):
            return False
    for gi in _zero_set_candidates(group, X1.field, pts2, member_table(X1)):
        if X1.form.substitute(group[gi].tolist()).is_scalar_multiple(X2.form) is not None:
            return True
    return False


def stabilizer_order(X: Hypersurface, max_group: int = 10**6) -> int:
    """Number of g in GL(n+1, F_q) with X.form(g Y) a nonzero multiple of X.form."""
    group = general_linear_group(X.field, X.n + 1, max_group)
    cands = _zero_set_candidates(group, X.field, point_set(X), member_table(X))
    return sum(1 for gi in cands
               if X.form.substitute(group[gi].tolist()).is_scalar_multiple(X.form) is not None)


# -- batch counting over coefficient spaces ---------------------------------------------------------

def monomials(nvars: int, degree: int):
    """Exponent tuples of the given degree, in descending lexicographic order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        out += [(first,) + rest for rest in monomials(nvars - 1, degree - first)]
    return out


def count_forms_on(field: FieldSpec, pts: np.ndarray, exps: np.ndarray, coeff_batch: np.ndarray) -> np.ndarray:
    """For each coefficient row c, how many rows of pts are zeros of sum_t c_t X^exps[t]."""
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    powt = field.power_table(int(exps.sum(axis=1).max()) if len(exps) else 1)
    mon = kernels.monomial_values(np.ascontiguousarray(pts, dtype=np.int64), exps, field.mul_table, powt)
    return kernels.count_zeros_batch(mon, np.ascontiguousarray(coeff_batch, dtype=np.int64),
                                     field.add_table, field.mul_table)


def count_forms(field: FieldSpec, m: int, exps: np.ndarray, coeff_batch: np.ndarray,
                max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """Point counts in P^m(F_q) of sum_t c_t X^exps[t] for each coefficient row c."""
    return count_forms_on(field, point_array(field, m, max_points), exps, coeff_batch)


def form_values(field: FieldSpec, pts: np.ndarray, exps: np.ndarray, coeff_batch: np.ndarray) -> np.ndarray:
    """(batch, points) array of form values, one row per coefficient vector."""
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    powt = field.power_table(int(exps.sum(axis=1).max()))
    mon = kernels.monomial_values(np.ascontiguousarray(pts, dtype=np.int64), exps, field.mul_table, powt)
    coeff_batch = np.asarray(coeff_batch, dtype=np.int64)
    if field.e == 1:
        return (coeff_batch @ mon.T) % field.p
    vals = np.zeros((coeff_batch.shape[0], mon.shape[0]), dtype=np.int64)
    for t in range(mon.shape[1]):
        vals = field.add_table[vals, field.mul_table[coeff_batch[:, t:t + 1], mon[None, :, t]]]
    return vals


def contains_subspace_batch(field: FieldSpec, m: int, k: int, exps: np.ndarray, coeff_batch: np.ndarray,
                            max_count: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """For each form of degree <= q: does it contain some k-dim F_q-subspace?

    With degree <= q a form vanishes identically on a subspace exactly when it
    vanishes at every F_q-point of it, so point incidence decides.
    """
    degree = int(np.asarray(exps).sum(axis=1).max())
    if degree > field.q:
        raise PreconditionError("point incidence decides containment only for degree <= q")
    pts = point_array(field, m, max_count)
    index_of = np.full(field.q ** (m + 1), -1, dtype=np.int64)
    index_of[vector_codes(pts, field.q)] = np.arange(len(pts))
    incid = np.array([index_of[vector_codes(S.points(), field.q)]
                      for S in enumerate_subspaces(field, k, m, max_count)])
    zero = form_values(field, pts, exps, coeff_batch) == 0
    out = np.zeros(zero.shape[0], dtype=bool)
    step = max(1, 2**22 // incid.size)
    for lo in range(0, zero.shape[0], step):
        out[lo:lo + step] = zero[lo:lo + step][:, incid].all(axis=2).any(axis=1)
    return out


def form_from_coeffs(field: FieldSpec, exps, coeffs) -> HomoPoly:
    exps = [tuple(int(x) for x in e) for e in exps]
    return HomoPoly(field, len(exps[0]), sum(exps[0]), {e: int(c) for e, c in zip(exps, coeffs) if c})
