"""Sparse homogeneous polynomials over a finite field.

A :class:`HomoPoly` maps exponent tuples to nonzero field-element indices.
The degree is stored explicitly so that the zero polynomial still knows
which degree it was declared with.

Text format (used by the CLI): terms ``coeff*X0^e0*...*Xm^em`` joined by
``+``; coefficients are element indices, factors with exponent zero may be
left out, ``Xi`` means ``Xi^1`` and a missing coefficient means 1.  The
zero polynomial is written ``0``.
"""

from __future__ import annotations

import re
from typing import Mapping, Optional, Sequence

import numpy as np

from . import kernels
from .errors import DEFAULT_MAX_POINTS, InternalConsistencyError, PreconditionError
from .gf import Extension, FieldSpec
from .projgeom import LinearSubspace, check_point_budget, iter_point_chunks

_FACTOR = re.compile(r"^X(\d+)(?:\^(\d+))?$")


def _mul_terms(field, a, b):
    out = {}
    add, mul = field._add, field._mul
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = add[out.get(e, 0)][mul[ca][cb]]
    return {e: c for e, c in out.items() if c}


class HomoPoly:
    """Homogeneous polynomial of a declared degree in ``nvars`` variables."""

    __slots__ = ("field", "nvars", "degree", "terms", "_arrays", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, degree: int, terms: Mapping[tuple, int] = ()):
        clean = {}
        for exps, c in dict(terms).items():
            exps = tuple(int(x) for x in exps)
            c = int(c)
            if len(exps) != nvars:
                raise PreconditionError(f"exponent vector {exps} has wrong arity for {nvars} variables")
            if sum(exps) != degree or min(exps, default=0) < 0:
                raise PreconditionError(f"monomial {exps} is not of degree {degree}")
            if not 0 <= c < field.q:
                raise PreconditionError(f"coefficient {c} is not an element of F_{field.q}")
            if c:
                clean[exps] = c
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.terms = clean
        self._arrays = None
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars, degree):
        return cls(field, nvars, degree)

    @classmethod
    def monomial(cls, field, exps, coeff=1):
        return cls(field, len(exps), sum(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, field, nvars, i):
        return cls.monomial(field, tuple(int(j == i) for j in range(nvars)))

    @classmethod
    def linear(cls, field, coeffs):
        n = len(coeffs)
        return cls(field, n, 1, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_text(cls, text: str, field: FieldSpec, nvars: int, degree: Optional[int] = None) -> "HomoPoly":
        text = text.replace(" ", "")
        if text in ("", "0"):
            if degree is None:
                raise PreconditionError("the zero polynomial needs an explicit degree")
            return cls.zero(field, nvars, degree)
        terms = {}
        for raw in text.split("+"):
            if not raw:
                raise PreconditionError(f"empty term in {text!r}")
            coeff = 1
            exps = [0] * nvars
            for factor in raw.split("*"):
                if factor.isdigit():
                    c = int(factor)
                    if c >= field.q:
                        raise PreconditionError(f"coefficient {c} is not an element of F_{field.q}")
                    coeff = field.mul(coeff, c)
                    continue
                mt = _FACTOR.match(factor)
                if not mt:
                    raise PreconditionError(f"cannot parse factor {factor!r}")
                i = int(mt.group(1))
                if i >= nvars:
                    raise PreconditionError(f"variable X{i} out of range for {nvars} variables")
                exps[i] += int(mt.group(2) or 1)
            key = tuple(exps)
            terms[key] = field.add(terms.get(key, 0), coeff)
        degs = {sum(e) for e in terms}
        if len(degs) != 1:
            raise PreconditionError(f"polynomial {text!r} is not homogeneous")
        d = degs.pop()
        if degree is not None and degree != d:
            raise PreconditionError(f"polynomial has degree {d}, expected {degree}")
        return cls(field, nvars, d, terms)

    # -- basic protocol ----------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            factors = [str(self.terms[exps])]
            factors += [f"X{i}^{e}" for i, e in enumerate(exps) if e]
            parts.append("*".join(factors))
        return "+".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"HomoPoly(F{self.field.q}, nvars={self.nvars}, degree={self.degree}, {self.to_text()!r})"

    def _key(self):
        return (self.field, self.nvars, self.degree, frozenset(self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, HomoPoly) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check_compatible(self, other):
        if other.field != self.field or other.nvars != self.nvars:
            raise PreconditionError("polynomials over different rings")

    def __add__(self, other):
        self._check_compatible(other)
        if other.degree != self.degree:
            raise PreconditionError("adding forms of different degrees")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = self.field.add(terms.get(e, 0), c)
        return HomoPoly(self.field, self.nvars, self.degree, terms)

    def __neg__(self):
        return HomoPoly(self.field, self.nvars, self.degree,
                        {e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "HomoPoly":
        return HomoPoly(self.field, self.nvars, self.degree,
                        {e: self.field.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_compatible(other)
        return HomoPoly(self.field, self.nvars, self.degree + other.degree,
                        _mul_terms(self.field, self.terms, other.terms))

    def __pow__(self, k: int):
        out = HomoPoly(self.field, self.nvars, 0, {(0,) * self.nvars: 1})
        for _ in range(k):
            out = out * self
        return out

    def is_scalar_multiple(self, other: "HomoPoly") -> Optional[int]:
        """Nonzero c with self == c * other, or None."""
        self._check_compatible(other)
        if self.degree != other.degree or set(self.terms) != set(other.terms) or not self.terms:
            return None
        e0 = next(iter(other.terms))
        c = self.field.div(self.terms[e0], other.terms[e0])
        return c if self == other.scale(c) else None

    # -- evaluation --------------------------------------------------------------------

    def arrays(self):
        """(exponent matrix, coefficient vector) as int64 arrays for the kernels."""
        if self._arrays is None:
            keys = sorted(self.terms)
            exps = np.array(keys, dtype=np.int64).reshape(len(keys), self.nvars)
            coeffs = np.array([self.terms[k] for k in keys], dtype=np.int64)
            self._arrays = (exps, coeffs)
        return self._arrays

    def evaluate(self, pt: Sequence[int]) -> int:
        if len(pt) != self.nvars:
            raise PreconditionError(f"point has {len(pt)} coordinates, expected {self.nvars}")
        f = self.field
        acc = 0
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(pt, exps):
                if e:
                    term = f.mul(term, f.power(x, e))
            acc = f.add(acc, term)
        return acc

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        exps, coeffs = self.arrays()
        pts = np.ascontiguousarray(points, dtype=np.int64)
        if pts.shape[1] != self.nvars:
            raise PreconditionError("point arity mismatch")
        powt = self.field.power_table(max(self.degree, 1))
        return kernels.eval_poly(pts, exps, coeffs, self.field.add_table, self.field.mul_table, powt)

    def embed(self, ext: Extension) -> "HomoPoly":
        """The same form with coefficients mapped into an extension field."""
        return HomoPoly(ext.field, self.nvars, self.degree,
                        {e: ext.embed(c) for e, c in self.terms.items()})

    # -- calculus and substitution ------------------------------------------------------

    def partial(self, i: int) -> "HomoPoly":
        if not 0 <= i < self.nvars:
            raise PreconditionError(f"variable index {i} out of range")
        f = self.field
        terms = {}
        for exps, c in self.terms.items():
            k = exps[i] % f.p
            if k:
                new = list(exps)
                new[i] -= 1
                terms[tuple(new)] = f.mul(c, f.from_int(k))
        return HomoPoly(f, self.nvars, max(self.degree - 1, 0), terms)

    def gradient(self):
        return [self.partial(i) for i in range(self.nvars)]

    def substitute(self, matrix) -> "HomoPoly":
        """f(A Y): each X_i is replaced by sum_j A[i][j] Y_j."""
        rows = [list(map(int, r)) for r in matrix]
        if len(rows) != self.nvars:
            raise PreconditionError("substitution matrix has the wrong number of rows")
        k = len(rows[0]) if rows else 0
        f = self.field
        unit = [tuple(int(j == i) for j in range(k)) for i in range(k)]
        lin = [{unit[j]: c for j, c in enumerate(r) if c} for r in rows]
        one = {(0,) * k: 1}
        memo = {}

        def power(i, e):
            key = (i, e)
            if key not in memo:
                memo[key] = one if e == 0 else _mul_terms(f, power(i, e - 1), lin[i])
            return memo[key]

        out = {}
        for exps, c in self.terms.items():
            acc = {(0,) * k: c}
            for i, e in enumerate(exps):
                if e:
                    acc = _mul_terms(f, acc, power(i, e))
                    if not acc:
                        break
            for e, v in acc.items():
                out[e] = f.add(out.get(e, 0), v)
        return HomoPoly(f, k, self.degree, out)

    def restrict(self, sub: LinearSubspace) -> "HomoPoly":
        """The form pulled back along the parametrization y -> sum_j y_j * basis_j."""
        if sub.m + 1 != self.nvars:
            raise PreconditionError("subspace lives in a different ambient space")
        cols = list(zip(*sub.basis))
        return self.substitute(cols)

    def vanishes_on(self, sub: LinearSubspace) -> bool:
        return self.restrict(sub).is_zero()

    def zero_witness(self, max_points: int = DEFAULT_MAX_POINTS):
        """A point of P^m(F_q) where f is nonzero, or None for the zero polynomial.

        Requires degree <= q, where a nonzero form cannot vanish on every point.
        """
        if self.degree > self.field.q:
            raise PreconditionError(
                f"degree {self.degree} > q = {self.field.q}: a nonzero form may vanish everywhere")
        if self.is_zero():
            return None
        check_point_budget(self.field.q, self.nvars - 1, max_points)
        for block in iter_point_chunks(self.field.q, self.nvars - 1):
            vals = self.evaluate_many(block)
            nz = np.flatnonzero(vals)
            if nz.size:
                return tuple(int(x) for x in block[nz[0]])
        raise InternalConsistencyError("nonzero form of degree <= q vanished on every point")
