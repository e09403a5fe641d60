"""Randomized and exhaustive invariant checks.

Every check returns ``(ok, info)``; sample sizes are arguments so the test
suite can run larger samples than ``verify``.  All randomness is seeded.
"""

from __future__ import annotations

import numpy as np

from . import analysis as an
from . import bounds as bd
from . import catalog as cat
from .gf import MAX_Q, extend, field_of_order, is_prime
from .homopoly import HomoPoly
from .projgeom import LinearSubspace, field_matmul, intersect, point_array, rank, theta

SEED = 20240611


def prime_powers(limit=MAX_Q):
    out = []
    for q in range(2, limit + 1):
        p = next(d for d in range(2, q + 1) if q % d == 0)
        k = q
        while k % p == 0:
            k //= p
        if k == 1 and is_prime(p):
            out.append(q)
    return out


def random_form(field, nvars, degree, rng, nonzero=True):
    mons = an.monomials(nvars, degree)
    while True:
        coeffs = rng.integers(0, field.q, size=len(mons))
        if coeffs.any():
            return an.form_from_coeffs(field, mons, coeffs)
        if not nonzero:
            return HomoPoly.zero(field, nvars, degree)


def random_subspace(field, k, m, rng):
    while True:
        rows = rng.integers(0, field.q, size=(k + 1, m + 1)).tolist()
        if rank(field, rows, m + 1) == k + 1:
            return LinearSubspace.from_rows(field, m, rows)


# -- field -------------------------------------------------------------------------------

def field_axioms(full_limit=16, samples=4000):
    rng = np.random.default_rng(SEED)
    for q in prime_powers():
        F = field_of_order(q)
        A, M = F.add_table, F.mul_table
        if q <= full_limit:
            a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
        else:
            a, b, c = rng.integers(0, q, size=(3, samples))
        checks = {
            "add assoc": A[A[a, b], c] == A[a, A[b, c]],
            "mul assoc": M[M[a, b], c] == M[a, M[b, c]],
            "add comm": A[a, b] == A[b, a],
            "mul comm": M[a, b] == M[b, a],
            "distrib": M[a, A[b, c]] == A[M[a, b], M[a, c]],
        }
        for name, arr in checks.items():
            if not np.all(arr):
                return False, f"{name} fails in F_{q}"
        nz = np.arange(1, q)
        if not np.all(M[nz, F.inv_table[nz]] == 1) or not np.all(A[np.arange(q), F.neg_table] == 0):
            return False, f"inverses fail in F_{q}"
        if not np.all(A[0] == np.arange(q)) or not np.all(M[1] == np.arange(q)):
            return False, f"identities fail in F_{q}"
        if q <= 32:
            for x in range(q):
                for y in range(q):
                    if F.schoolbook_mul(x, y) != F.mul(x, y):
                        return False, f"log/exp and schoolbook products differ in F_{q}"
    return True, f"{len(prime_powers())} fields"


# -- polynomials -------------------------------------------------------------------------

def euler_relation(samples=60):
    rng = np.random.default_rng(SEED + 1)
    for t in range(samples):
        q = [2, 3, 4, 5, 7, 9][t % 6]
        F = field_of_order(q)
        nv = 2 + t % 3
        d = 1 + t % 4
        f = random_form(F, nv, d, rng)
        lhs = HomoPoly.zero(F, nv, d)
        for i, g in enumerate(f.gradient()):
            if not g.is_zero():
                lhs = lhs + HomoPoly.variable(F, nv, i) * g
        if lhs != f.scale(F.from_int(d)):
            return False, f"sum X_i dF/dX_i != d F for {f}"
    return True, f"{samples} forms"


def restrict_commutes(samples=60, evals=8):
    rng = np.random.default_rng(SEED + 2)
    for t in range(samples):
        q = [2, 3, 4, 5, 8][t % 5]
        F = field_of_order(q)
        m = 2 + t % 3
        k = t % m
        f = random_form(F, m + 1, 1 + t % 3, rng)
        S = random_subspace(F, k, m, rng)
        g = f.restrict(S)
        ys = rng.integers(0, q, size=(evals, k + 1))
        xs = field_matmul(F, ys, S.basis_array())
        if not np.array_equal(g.evaluate_many(ys), f.evaluate_many(xs)):
            return False, f"restriction of {f} disagrees with evaluation"
    return True, f"{samples} restrictions"


def zero_witness_total(samples=80):
    rng = np.random.default_rng(SEED + 3)
    for t in range(samples):
        q = [2, 3, 4, 5][t % 4]
        F = field_of_order(q)
        d = 1 + t % q
        f = random_form(F, 2 + t % 3, d, rng)
        w = f.zero_witness()
        if w is None or f.evaluate(w) == 0:
            return False, f"no witness for {f}"
    return True, f"{samples} forms"


# -- SSS bound ----------------------------------------------------------------------------

def _pencil_split(split, n):
    if split is None:
        return False
    if len(split) == 1:
        return True
    eqs = {tuple(h.equations()[0]) for h in split}
    if len(eqs) != len(split):
        return False
    core = split[0]
    for h in split[1:]:
        core = intersect(core, h)
    if core is None or core.dim != n - 2:
        return False
    return all(intersect(a, b) == core for i, a in enumerate(split) for b in split[i + 1:])


def sss_bound_and_equality(samples=1000):
    """Random forms stay under the bound; every form attaining it is a pencil of hyperplanes."""
    rng = np.random.default_rng(SEED + 4)
    attained = checked = 0
    for n in (2, 3, 4):
        for q in (2, 3):
            F = field_of_order(q)
            for d in range(1, q + 1):
                mons = an.monomials(n + 1, d)
                coeffs = rng.integers(0, q, size=(samples, len(mons)))
                coeffs = coeffs[coeffs.any(axis=1)]
                counts = an.count_forms(F, n, np.array(mons), coeffs)
                bound = bd.sss_bound(n, d, q)
                checked += len(coeffs)
                if counts.max(initial=0) > bound:
                    return False, f"count above bound at n={n} q={q} d={d}"
                hits = [an.form_from_coeffs(F, mons, c) for c in coeffs[counts == bound]]
                # constructed pencils: X0 * prod (X1 - a X0)
                lines = [HomoPoly.linear(F, [1] + [0] * n)]
                lines += [HomoPoly.linear(F, [F.neg(a), 1] + [0] * (n - 1)) for a in range(d - 1)]
                pencil = lines[0]
                for ln in lines[1:d]:
                    pencil = pencil * ln
                hits.append(pencil)
                for f in hits:
                    X = cat.Hypersurface(f, n)
                    if an.count_points(X).n_points != bound:
                        return False, f"pencil {f} does not attain the bound"
                    attained += 1
                    if not _pencil_split(an.splits_into_hyperplanes(X), n):
                        return False, f"{f} attains the bound without pencil structure"
    return True, f"{checked} random forms, {attained} attaining forms split as pencils"


# -- singular loci --------------------------------------------------------------------------

def _defined_over_base(ext, pt):
    image = {int(x): i for i, x in enumerate(ext.embedding)}
    if all(c in image for c in pt):
        return tuple(image[c] for c in pt)
    return None


def singular_union_identity(samples=12):
    """Sing of a union of distinct hyperplanes is the union of pairwise intersections."""
    rng = np.random.default_rng(SEED + 5)
    for t in range(samples):
        q = (2, 3)[t % 2]
        n = 2 + (t // 2) % 2
        d = 2 + t % 2
        F = field_of_order(q)
        lins = []
        while len(lins) < d:
            v = tuple(int(x) for x in rng.integers(0, q, size=n + 1))
            if any(v):
                lin = LinearSubspace.point(F, v).basis[0]
                if lin not in lins:
                    lins.append(lin)
        f = HomoPoly.linear(F, lins[0])
        for lin in lins[1:]:
            f = f * HomoPoly.linear(F, lin)
        X = cat.Hypersurface(f, n)
        got = set(an.singular_points(X, 2))
        ext = extend(F, 2)
        pts = point_array(ext.field, n)
        on = sum((HomoPoly.linear(ext.field, [ext.embed(c) for c in lin]).evaluate_many(pts) == 0)
                 .astype(int) for lin in lins)
        want = set()
        for row in pts[on >= 2]:
            row = tuple(int(x) for x in row)
            base = _defined_over_base(ext, row)
            want.add((base, 1) if base is not None else (row, 2))
        if got != want:
            return False, f"singular points of {f} differ from pairwise intersections"
    return True, f"{samples} unions over F_q and F_q^2"


def nonsingular_descent(samples=8):
    """A point nonsingular on a linear section is nonsingular on X."""
    rng = np.random.default_rng(SEED + 6)
    tested = 0
    for t in range(samples):
        q = (2, 3)[t % 2]
        F = field_of_order(q)
        f = random_form(F, 4, 2 + t % 2, rng)
        X = cat.Hypersurface(f, 3)
        for k in (1, 2):
            S = random_subspace(F, k, 3, rng)
            g = f.restrict(S)
            if g.is_zero():
                continue
            grads = g.gradient()
            for y in point_array(F, k):
                y = tuple(int(v) for v in y)
                if g.evaluate(y) or not any(h.evaluate(y) for h in grads):
                    continue
                Q = tuple(int(v) for v in field_matmul(F, np.array([y]), S.basis_array())[0])
                tested += 1
                if not an.is_nonsingular_point(X, Q):
                    return False, f"{Q} nonsingular on a section of {f} but singular on X"
    return True, f"{tested} points"


# -- cones --------------------------------------------------------------------------------------

def cone_count_law(samples=20):
    rng = np.random.default_rng(SEED + 7)
    for t in range(samples):
        q = (2, 3, 4)[t % 3]
        F = field_of_order(q)
        k = 1 + t % 2
        s = t % 2
        Y = cat.Hypersurface(random_form(F, k + 1, 1 + t % 3, rng), k)
        want = an.count_points(Y).n_points * q ** (s + 1) + theta(q, s)
        if an.count_points(cat.cone(Y, s)).n_points != want:
            return False, f"standard cone over {Y.form} with s={s}"
        m = k + s + 1
        while True:
            rows = rng.integers(0, q, size=(m + 1, m + 1)).tolist()
            if rank(F, rows, m + 1) == m + 1:
                break
        center = LinearSubspace.from_rows(F, m, rows[:s + 1])
        base = LinearSubspace.from_rows(F, m, rows[s + 1:])
        Yb = cat.Hypersurface(Y.form, base.dim)
        if an.count_points(cat.cone_over(center, base, Yb)).n_points != want:
            return False, f"cone over {Y.form} with a random center"
    return True, f"{samples} cones"


def cone_lemma_oracle(q=2):
    """P^3: center (0,0,0,1), plane X3 = 0, Y = X0 X1.  Every quadric whose restriction to the
    plane is a multiple of Y and which contains the cone's points is the cone itself."""
    F = field_of_order(q)
    d = 2
    Y = cat.Hypersurface(HomoPoly.from_text("X0*X1", F, 3), 2)
    if not an.count_points(Y).n_points > (d - 1) * q + theta(q, 0):
        return False, "base conic fails the count hypothesis"
    C = cat.cone(Y, 0)
    mons = an.monomials(4, d)
    coeffs = point_array(F, len(mons) - 1, max_points=10**6)
    cone_pts = an.point_set(C)
    hits = an.count_forms_on(F, cone_pts, np.array(mons), coeffs) == len(cone_pts)
    plane = LinearSubspace.from_equations(F, 3, [(0, 0, 0, 1)])
    survivors = []
    for c in coeffs[hits]:
        f = an.form_from_coeffs(F, mons, c)
        g = f.restrict(plane)
        if g.is_zero() or g.is_scalar_multiple(Y.form) is not None:
            survivors.append(f)
    ok = len(survivors) == 1 and survivors[0].is_scalar_multiple(C.form) is not None
    return ok, f"{len(coeffs)} quadric classes, {int(hits.sum())} contain the cone points, " \
               f"{len(survivors)} satisfy the hypotheses"


SUITE = [
    ("field axioms", field_axioms),
    ("Euler relation", euler_relation),
    ("restrict/evaluate", restrict_commutes),
    ("zero_witness totality", zero_witness_total),
    ("SSS bound and equality", sss_bound_and_equality),
    ("singular locus of unions", singular_union_identity),
    ("nonsingularity descent", nonsingular_descent),
    ("cone count law", cone_count_law),
    ("cone lemma oracle", cone_lemma_oracle),
]
