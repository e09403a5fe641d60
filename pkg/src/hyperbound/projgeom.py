"""Points and linear subspaces of P^m(F_q).

A point is a tuple of element indices whose first nonzero entry is 1.  A
linear subspace is stored by the reduced row-echelon basis of its cone in
F_q^{m+1}, which makes equality and hashing plain tuple comparison.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import DEFAULT_MAX_POINTS, BudgetExceeded, PreconditionError
from .gf import FieldSpec

ProjPoint = tuple


def theta(q: int, m: int) -> int:
    """Number of points of P^m(F_q); theta(q, -1) == 0."""
    if m < -1:
        raise PreconditionError(f"theta is defined for m >= -1, got {m}")
    return sum(q**v for v in range(m + 1))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def normalize(field: FieldSpec, vec: Sequence[int]) -> ProjPoint:
    for c in vec:
        if c:
            s = field.inv(c)
            return tuple(field.mul(s, x) for x in vec)
    raise PreconditionError("the zero vector is not a projective point")


def vector_codes(vecs: np.ndarray, q: int) -> np.ndarray:
    """Integer code sum(v_i * q**i) of each row."""
    weights = q ** np.arange(vecs.shape[-1], dtype=np.int64)
    return vecs @ weights


def field_matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if field.e == 1:
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for l in range(a.shape[1]):
        out = field.add_table[out, field.mul_table[a[:, l][:, None], b[l][None, :]]]
    return out


# -- point enumeration ---------------------------------------------------------

def _tails(q: int, length: int, lo: int, hi: int) -> np.ndarray:
    idx = np.arange(lo, hi, dtype=np.int64)
    cols = [(idx // q ** (length - 1 - i)) % q for i in range(length)]
    if not cols:
        return np.zeros((hi - lo, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def iter_point_chunks(q: int, m: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Points of P^m(F_q) as int64 arrays, in lexicographic order of coordinates."""
    for j in range(m, -1, -1):
        length = m - j
        total = q**length
        for lo in range(0, total, chunk):
            hi = min(total, lo + chunk)
            block = np.zeros((hi - lo, m + 1), dtype=np.int64)
            block[:, j] = 1
            block[:, j + 1:] = _tails(q, length, lo, hi)
            yield block


def check_point_budget(q: int, m: int, max_points: int = DEFAULT_MAX_POINTS) -> int:
    n = theta(q, m)
    if n > max_points:
        raise BudgetExceeded(f"points of P^{m}(F_{q})", n, max_points)
    return n


def point_array(field: FieldSpec | int, m: int, max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """All points of P^m(F_q) in canonical order; small results are cached read-only."""
    q = field if isinstance(field, int) else field.q
    n = check_point_budget(q, m, max_points)
    if n <= 4096:
        return _small_point_array(q, m)
    return np.concatenate(list(iter_point_chunks(q, m, chunk=1 << 30)), axis=0)


@functools.lru_cache(maxsize=256)
def _small_point_array(q: int, m: int) -> np.ndarray:
    out = np.concatenate(list(iter_point_chunks(q, m, chunk=1 << 30)), axis=0)
    out.setflags(write=False)
    return out


def enumerate_points(field: FieldSpec, m: int, max_points: int = DEFAULT_MAX_POINTS) -> Iterator[ProjPoint]:
    check_point_budget(field.q, m, max_points)
    for block in iter_point_chunks(field.q, m):
        for row in block.tolist():
            yield tuple(row)


# -- row reduction ----------------------------------------------------------------

def rref(field: FieldSpec, rows: Sequence[Sequence[int]], ncols: int):
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        s = field.inv(mat[rank][col])
        mat[rank] = [field.mul(s, x) for x in mat[rank]]
        prow = mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                c = mat[r][col]
                mat[r] = [field.sub(x, field.mul(c, y)) for x, y in zip(mat[r], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return [tuple(r) for r in mat[:rank]], pivots


def rank(field: FieldSpec, rows, ncols: int) -> int:
    return len(rref(field, rows, ncols)[0])


def kernel(field: FieldSpec, rows, ncols: int):
    """Basis of {x : r . x = 0 for every row r}."""
    red, pivots = rref(field, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, pc in zip(red, pivots):
            x[pc] = field.neg(r[f])
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class LinearSubspace:
    """An F_q-linear subspace of P^m given by its canonical echelon basis."""

    field: FieldSpec
    m: int
    basis: tuple

    @classmethod
    def from_rows(cls, field: FieldSpec, m: int, rows) -> "LinearSubspace":
        rows = [tuple(int(x) for x in r) for r in rows]
        if any(len(r) != m + 1 for r in rows):
            raise PreconditionError("row length does not match the ambient dimension")
        red, _ = rref(field, rows, m + 1)
        if not red:
            raise PreconditionError("rows span the zero space")
        return cls(field, m, tuple(red))

    @classmethod
    def from_equations(cls, field: FieldSpec, m: int, equations) -> Optional["LinearSubspace"]:
        """Common zero set of linear forms; None if it is empty."""
        ker = kernel(field, [tuple(e) for e in equations], m + 1)
        if not ker:
            return None
        return cls.from_rows(field, m, ker)

    @classmethod
    def whole(cls, field: FieldSpec, m: int) -> "LinearSubspace":
        return cls(field, m, tuple(tuple(int(i == j) for j in range(m + 1)) for i in range(m + 1)))

    @classmethod
    def point(cls, field: FieldSpec, pt) -> "LinearSubspace":
        return cls(field, len(pt) - 1, (normalize(field, pt),))

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @property
    def pivots(self):
        return [next(i for i, x in enumerate(r) if x) for r in self.basis]

    def equations(self):
        """Basis of the linear forms vanishing on the subspace."""
        return kernel(self.field, self.basis, self.m + 1)

    def basis_array(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(len(self.basis), self.m + 1)

    def vectors(self) -> np.ndarray:
        """All q**(dim+1) vectors of the underlying linear space, zero included."""
        q = self.field.q
        coeffs = _tails(q, self.dim + 1, 0, q ** (self.dim + 1))
        return field_matmul(self.field, coeffs, self.basis_array())

    def points(self) -> np.ndarray:
        """The theta(q, dim) normalized points, in the order of the parameter points."""
        params = point_array(self.field, self.dim)
        return field_matmul(self.field, params, self.basis_array())

    def __contains__(self, other) -> bool:
        if isinstance(other, LinearSubspace):
            rows = list(self.basis) + list(other.basis)
        else:
            rows = list(self.basis) + [tuple(other)]
        return rank(self.field, rows, self.m + 1) == len(self.basis)

    def __repr__(self):
        return f"LinearSubspace(dim={self.dim}, m={self.m}, basis={list(self.basis)})"


def hyperplane(field: FieldSpec, coeffs) -> LinearSubspace:
    """The hyperplane sum(c_i X_i) = 0."""
    sub = LinearSubspace.from_equations(field, len(coeffs) - 1, [coeffs])
    if sub is None or sub.dim != len(coeffs) - 2:
        raise PreconditionError("a hyperplane needs a nonzero linear form")
    return sub


def span(a: LinearSubspace, b) -> LinearSubspace:
    rows = list(a.basis)
    if isinstance(b, LinearSubspace):
        if b.m != a.m:
            raise PreconditionError("subspaces live in different ambient spaces")
        rows += list(b.basis)
    else:
        rows.append(tuple(b))
    return LinearSubspace.from_rows(a.field, a.m, rows)


def intersect(a: LinearSubspace, b: LinearSubspace) -> Optional[LinearSubspace]:
    """Intersection of two subspaces; None marks the empty intersection."""
    if b.m != a.m:
        raise PreconditionError("subspaces live in different ambient spaces")
    return LinearSubspace.from_equations(a.field, a.m, a.equations() + b.equations())


def subspace_count(q: int, k: int, m: int) -> int:
    return gaussian_binomial(m + 1, k + 1, q)


def enumerate_subspaces(field: FieldSpec, k: int, m: int,
                        max_count: int = DEFAULT_MAX_POINTS) -> Iterator[LinearSubspace]:
    """Every k-dimensional subspace of P^m once, ordered by pivot set then free entries."""
    if not 0 <= k <= m:
        raise PreconditionError(f"need 0 <= k <= m, got k={k}, m={m}")
    total = subspace_count(field.q, k, m)
    if total > max_count:
        raise BudgetExceeded(f"{k}-subspaces of P^{m}(F_{field.q})", total, max_count)
    q = field.q
    for piv in itertools.combinations(range(m + 1), k + 1):
        pset = set(piv)
        free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, m + 1) if c not in pset]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * (m + 1) for _ in piv]
            for r, pc in enumerate(piv):
                rows[r][pc] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            yield LinearSubspace(field, m, tuple(tuple(r) for r in rows))
