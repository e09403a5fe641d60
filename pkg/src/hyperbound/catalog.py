"""Named hypersurfaces, cones, q-alternating forms and their closed-form counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import PreconditionError
from .gf import FieldSpec, field_of_order
from .homopoly import HomoPoly
from .projgeom import LinearSubspace, field_matmul, rank, theta

FAMILIES = ("hyperbolic", "elliptic", "hermitian", "filling", "parabolic")


@dataclass(frozen=True)
class Hypersurface:
    """The zero scheme of a nonzero form in P^n."""

    form: HomoPoly
    ambient_dim: int
    name: str = ""

    def __post_init__(self):
        if self.form.is_zero():
            raise PreconditionError("a hypersurface needs a nonzero form")
        if self.form.nvars != self.ambient_dim + 1:
            raise PreconditionError("form arity does not match the ambient dimension")

    @property
    def field(self) -> FieldSpec:
        return self.form.field

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def n(self) -> int:
        return self.ambient_dim

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"Hypersurface({label}{self.form.to_text()} in P^{self.ambient_dim}(F_{self.field.q}))"


def _require_odd(n, what):
    if n < 1 or n % 2 == 0:
        raise PreconditionError(f"{what} needs odd n, got {n}")


def hyperbolic_quadric(n: int, field: FieldSpec) -> Hypersurface:
    _require_odd(n, "hyperbolic quadric")
    terms = {}
    for i in range((n + 1) // 2):
        e = [0] * (n + 1)
        e[2 * i] = e[2 * i + 1] = 1
        terms[tuple(e)] = 1
    return Hypersurface(HomoPoly(field, n + 1, 2, terms), n, "hyperbolic")


def irreducible_binary_quadratics(field: FieldSpec):
    """(b, c) with t^2 + b t + c irreducible, ordered by the vector (c, b)."""
    out = []
    for c in field.elements():
        for b in field.elements():
            if all(field.add(field.add(field.mul(t, t), field.mul(b, t)), c) for t in field.elements()):
                out.append((b, c))
    return out


def elliptic_quadric(n: int, field: FieldSpec, f: Optional[tuple] = None) -> Hypersurface:
    """X0^2 + b X0 X1 + c X1^2 + sum_{i>=1} X_{2i} X_{2i+1}, with t^2+bt+c irreducible."""
    _require_odd(n, "elliptic quadric")
    b, c = irreducible_binary_quadratics(field)[0] if f is None else f
    if (b, c) not in irreducible_binary_quadratics(field):
        raise PreconditionError(f"t^2 + {b} t + {c} is reducible over F_{field.q}")
    z = [0] * (n + 1)
    terms = {}
    for exps, coeff in (((2, 0), 1), ((1, 1), b), ((0, 2), c)):
        e = list(z)
        e[0], e[1] = exps
        terms[tuple(e)] = coeff
    for i in range(1, (n + 1) // 2):
        e = list(z)
        e[2 * i] = e[2 * i + 1] = 1
        terms[tuple(e)] = 1
    return Hypersurface(HomoPoly(field, n + 1, 2, terms), n, "elliptic")


def hermitian(n: int, field: FieldSpec) -> Hypersurface:
    """sum (X_{2i}^r X_{2i+1} + X_{2i} X_{2i+1}^r) with r = sqrt(q).

    For even n the molecule X_n^(r+1) is added so that the form stays
    nonsingular.
    """
    if not field.is_square:
        raise PreconditionError("q must be a square")
    if n < 1:
        raise PreconditionError("hermitian hypersurface needs n >= 1")
    r = field.sqrt_q
    z = [0] * (n + 1)
    terms = {}
    for i in range((n + 1) // 2):
        a, b = 2 * i, 2 * i + 1
        for ea, eb in ((r, 1), (1, r)):
            e = list(z)
            e[a], e[b] = ea, eb
            terms[tuple(e)] = 1
    if n % 2 == 0:
        e = list(z)
        e[n] = r + 1
        terms[tuple(e)] = 1
    return Hypersurface(HomoPoly(field, n + 1, r + 1, terms), n, "hermitian")


def is_molecular(form: HomoPoly) -> bool:
    """True when form is an F_q-combination of Hermitian molecules.

    The molecules are X_k^(r+1) and l X_k^r X_j + l^r X_k X_j^r, r = sqrt(q).
    For a pair (k, j) the molecules with l = 1 and with l outside F_r have
    independent coefficient vectors, so their span is all of F_q^2 and the
    test reduces to the support: every monomial is X_k^(r+1) or X_k^r X_j.
    """
    field = form.field
    if not field.is_square or form.is_zero():
        return False
    r = field.sqrt_q
    if form.degree != r + 1:
        return False
    for e in form.terms:
        nz = sorted(x for x in e if x)
        if nz != [r + 1] and nz != [1, r]:
            return False
    return True


def space_filling(n: int, field: FieldSpec) -> Hypersurface:
    _require_odd(n, "space-filling hypersurface")
    A = standard_symplectic(n + 1, field, (n + 1) // 2)
    X = from_alternating(A, field)
    return Hypersurface(X.form, n, "filling")


def parabolic_quadric(m: int, field: FieldSpec) -> Hypersurface:
    if m < 2 or m % 2:
        raise PreconditionError(f"parabolic quadric needs even m >= 2, got {m}")
    z = [0] * (m + 1)
    e = list(z)
    e[0] = 2
    terms = {tuple(e): 1}
    for i in range(1, m // 2 + 1):
        e = list(z)
        e[2 * i - 1] = e[2 * i] = 1
        terms[tuple(e)] = 1
    return Hypersurface(HomoPoly(field, m + 1, 2, terms), m, "parabolic")


# -- cones -------------------------------------------------------------------------

def cone(base: Hypersurface, s: int) -> Hypersurface:
    """P^s * base: the base form in the first coordinates, center on the last s+1."""
    if s < 0:
        raise PreconditionError("cone center must have dimension >= 0")
    f = base.form
    pad = (0,) * (s + 1)
    terms = {e + pad: c for e, c in f.terms.items()}
    n = base.ambient_dim + s + 1
    return Hypersurface(HomoPoly(f.field, n + 1, f.degree, terms), n, f"cone:{s}:{base.name}")


def cone_over(center: LinearSubspace, base_space: LinearSubspace, base: Hypersurface) -> Hypersurface:
    """Cone with arbitrary disjoint center; base is given in the coordinates of base_space."""
    field = center.field
    if center.m != base_space.m:
        raise PreconditionError("center and base space live in different ambient spaces")
    if base_space.dim != base.ambient_dim:
        raise PreconditionError("base hypersurface does not match the base space dimension")
    m = center.m
    rows = list(base_space.basis) + list(center.basis)
    if len(rows) != m + 1 or rank(field, rows, m + 1) != m + 1:
        raise PreconditionError("center meets the base space or they do not span P^m")
    minv = matrix_inverse(field, rows)
    # x = [y z] M  =>  y = x Minv[:, :k]
    k = base_space.dim + 1
    sub = [[minv[j][i] for j in range(m + 1)] for i in range(k)]
    return Hypersurface(base.form.substitute(sub), m, f"cone:{center.dim}:{base.name}")


def matrix_inverse(field: FieldSpec, rows):
    n = len(rows)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise PreconditionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        s = field.inv(aug[col][col])
        aug[col] = [field.mul(s, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [field.sub(x, field.mul(c, y)) for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# -- q-alternating forms --------------------------------------------------------------

def check_alternating(A, field: FieldSpec):
    n = len(A)
    for i in range(n):
        if len(A[i]) != n:
            raise PreconditionError("alternating matrix must be square")
        if A[i][i]:
            raise PreconditionError("alternating matrix needs a zero diagonal")
        for j in range(n):
            if A[i][j] != field.neg(A[j][i]):
                raise PreconditionError("matrix is not antisymmetric")


def standard_symplectic(size: int, field: FieldSpec, s: int):
    """Block matrix with s blocks [[0, 1], [-1, 0]] followed by zeros."""
    A = [[0] * size for _ in range(size)]
    for i in range(s):
        A[2 * i][2 * i + 1] = 1
        A[2 * i + 1][2 * i] = field.neg(1)
    return A


def from_alternating(A, field: FieldSpec) -> Hypersurface:
    """The form (X^q)^T A X = sum_{i<j} a_ij (X_i^q X_j - X_i X_j^q)."""
    check_alternating(A, field)
    n = len(A)
    q = field.q
    terms = {}
    for i in range(n):
        for j in range(i + 1, n):
            a = A[i][j]
            if not a:
                continue
            e1 = [0] * n
            e1[i], e1[j] = q, 1
            e2 = [0] * n
            e2[i], e2[j] = 1, q
            terms[tuple(e1)] = field.add(terms.get(tuple(e1), 0), a)
            terms[tuple(e2)] = field.add(terms.get(tuple(e2), 0), field.neg(a))
    if not terms:
        raise PreconditionError("alternating matrix is zero")
    return Hypersurface(HomoPoly(field, n, q + 1, terms), n - 1, "alternating")


def alternating_normal_form(A, field: FieldSpec):
    """Invertible P with P^T A P = s hyperbolic blocks then zeros; returns (P, 2s).

    Symplectic Gram-Schmidt; the pivot is the least index pair (i, j) of the
    remaining basis vectors with omega(u_i, u_j) != 0.
    """
    check_alternating(A, field)
    n = len(A)
    add, mul, sub = field.add, field.mul, field.sub

    def omega(x, y):
        acc = 0
        for i in range(n):
            if x[i]:
                row = A[i]
                for j in range(n):
                    if y[j] and row[j]:
                        acc = add(acc, mul(mul(x[i], row[j]), y[j]))
        return acc

    remaining = [[int(i == j) for j in range(n)] for i in range(n)]
    cols = []
    while True:
        pair = None
        for i in range(len(remaining)):
            for j in range(i + 1, len(remaining)):
                w = omega(remaining[i], remaining[j])
                if w:
                    pair = (i, j, w)
                    break
            if pair:
                break
        if pair is None:
            break
        i, j, w = pair
        e = remaining[i]
        winv = field.inv(w)
        f = [mul(winv, x) for x in remaining[j]]
        rest = []
        for k, u in enumerate(remaining):
            if k in (i, j):
                continue
            a, b = omega(u, f), omega(u, e)
            rest.append([add(sub(x, mul(a, y)), mul(b, z)) for x, y, z in zip(u, e, f)])
        cols += [e, f]
        remaining = rest
    cols += remaining
    P = [[cols[c][r] for c in range(n)] for r in range(n)]
    return P, len(cols) - len(remaining)


def congruent(A, P, field: FieldSpec):
    """P^T A P."""
    Pa = np.array(P, dtype=np.int64)
    return field_matmul(field, field_matmul(field, Pa.T, np.array(A, dtype=np.int64)), Pa).tolist()


# -- closed forms and CLI family names ------------------------------------------------------

def family_degree(family: str, q: int) -> int:
    family = family.split(":")[-1]
    if family in ("hyperbolic", "elliptic", "parabolic"):
        return 2
    if family == "hermitian":
        field = field_of_order(q)
        return field.sqrt_q + 1
    if family == "filling":
        return q + 1
    raise PreconditionError(f"unknown family {family!r}")


def _parse_cone(family):
    parts = family.split(":")
    if len(parts) != 3 or parts[0] != "cone" or not parts[1].isdigit():
        raise PreconditionError(f"cone family must look like cone:<s>:<family>, got {family!r}")
    return int(parts[1]), parts[2]


def closed_form_count(family: str, n: int, q: int) -> int:
    """Exact number of F_q-points of the named family in P^n."""
    if family.startswith("cone:"):
        s, base = _parse_cone(family)
        return closed_form_count(base, n - s - 1, q) * q ** (s + 1) + theta(q, s)
    if family == "hyperbolic":
        _require_odd(n, family)
        return theta(q, (n - 1) // 2) * (q ** ((n - 1) // 2) + 1)
    if family == "elliptic":
        _require_odd(n, family)
        return theta(q, (n - 3) // 2) * (q ** ((n + 1) // 2) + 1)
    if family == "hermitian":
        field = field_of_order(q)
        if not field.is_square:
            raise PreconditionError("q must be a square")
        r = field.sqrt_q
        return (r ** (n + 1) - (-1) ** (n + 1)) * (r**n - (-1) ** n) // (q - 1)
    if family == "filling":
        _require_odd(n, family)
        return theta(q, n)
    if family == "parabolic":
        if n < 2 or n % 2:
            raise PreconditionError(f"parabolic quadric needs even m >= 2, got {n}")
        return theta(q, n - 1)
    raise PreconditionError(f"unknown family {family!r}")


def build(family: str, n: int, field: FieldSpec) -> Hypersurface:
    """Construct a family by its CLI name, including ``cone:<s>:<family>``."""
    if family.startswith("cone:"):
        s, base = _parse_cone(family)
        if n - s - 1 < 1:
            raise PreconditionError(f"cone center of dimension {s} leaves no base in P^{n}")
        return cone(build(base, n - s - 1, field), s)
    makers = {"hyperbolic": hyperbolic_quadric, "elliptic": elliptic_quadric,
              "hermitian": hermitian, "filling": space_filling, "parabolic": parabolic_quadric}
    if family not in makers:
        raise PreconditionError(f"unknown family {family!r}")
    return makers[family](n, field)
