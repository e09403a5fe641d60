"""Table-backed arithmetic in finite fields F_q, q = p^e.

Elements are plain integers in ``[0, q)``.  The integer ``a`` stands for the
polynomial ``sum(c_i * x**i)`` where ``c_0, c_1, ...`` are the base-p digits
of ``a`` (lowest digit first), reduced modulo the field's monic irreducible
modulus.  In particular the prime subfield F_p is ``{0, 1, ..., p-1}`` and
the integer ``p`` is the residue class of ``x``.

Every field carries full ``q x q`` addition and multiplication tables (the
latter built from log/antilog tables over a primitive element), so hot loops
can work with numpy fancy indexing on element indices.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BudgetExceeded, InternalConsistencyError, PreconditionError

MAX_Q = 128


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over F_p as coefficient lists, lowest degree first ---------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a modulo the monic polynomial b over F_p."""
    a = _poly_trim(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _poly_trim(a)
    return a


def _monic_polys(p, degree):
    """All monic polynomials of the given degree, lexicographic low-degree-first."""
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(modulus, p: int) -> bool:
    """Trial division of a monic polynomial by every monic polynomial of degree <= deg/2."""
    e = len(modulus) - 1
    if e < 1:
        return False
    for d in range(1, e // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(modulus, g, p):
                return False
    return True


def least_irreducible(p: int, e: int):
    for cand in _monic_polys(p, e):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise InternalConsistencyError(f"no irreducible polynomial of degree {e} over F_{p}")


class FieldSpec:
    """The finite field F_{p^e} with a fixed monic irreducible modulus.

    Instances are immutable after construction and compare equal when their
    ``(p, e, modulus)`` agree.  Use :func:`field_make` to obtain the canonical
    model of F_q.
    """

    def __init__(self, p: int, e: int, modulus, max_q: int = MAX_Q):
        if not is_prime(p):
            raise PreconditionError(f"characteristic {p} is not prime")
        if e < 1:
            raise PreconditionError(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > max_q:
            raise BudgetExceeded("field size", q, max_q)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise PreconditionError("modulus must be monic of degree e")
        if not is_irreducible(modulus, p):
            raise PreconditionError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = modulus
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        idx = np.arange(q, dtype=np.int64)
        digits = np.stack([(idx // p**i) % p for i in range(e)], axis=1)
        self.digits = digits
        weights = p ** np.arange(e, dtype=np.int64)
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_table = ((-digits) % p) @ weights
        self.sub_table = self.add_table[:, self.neg_table]

        # log/antilog over the least primitive element
        self.primitive = None
        for g in range(1, q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self.schoolbook_mul(x, g)
            if len(powers) == q - 1:
                self.primitive = g
                break
        if self.primitive is None:
            raise InternalConsistencyError("no primitive element found")
        self.exp_table = np.array(powers + powers, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(powers, dtype=np.int64)] = np.arange(q - 1)
        self.log_table = log

        mul = np.zeros((q, q), dtype=np.int64)
        nz = np.arange(1, q)
        mul[1:, 1:] = self.exp_table[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = self.exp_table[(-(log[nz])) % (q - 1)]
        self.inv_table = inv

        for name in ("add_table", "sub_table", "mul_table", "neg_table", "inv_table",
                     "exp_table", "log_table", "digits"):
            getattr(self, name).setflags(write=False)
        self._add = self.add_table.tolist()
        self._sub = self.sub_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = self.inv_table.tolist()

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __len__(self):
        return self.q

    # -- scalar arithmetic on indices ---------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in a finite field")
        return self._mul[a][self._inv[b]]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def power(self, a: int, k: int) -> int:
        """a**k, with the convention 0**0 == 1."""
        if k < 0:
            raise PreconditionError("negative exponent")
        if k == 0:
            return 1
        if a == 0:
            return 0
        return int(self.exp_table[(int(self.log_table[a]) * k) % (self.q - 1)])

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    @property
    def is_square(self) -> bool:
        return self.e % 2 == 0

    @property
    def sqrt_q(self) -> int:
        if not self.is_square:
            raise PreconditionError(f"q = {self.q} is not a square")
        return self.p ** (self.e // 2)

    def sqrt_q_power(self, a: int) -> int:
        return self.power(a, self.sqrt_q)

    def q_power(self, a: int, base_q: int | None = None) -> int:
        """x -> x**Q where Q is base_q (a subfield size) or q itself."""
        return self.power(a, self.q if base_q is None else base_q)

    def elements(self):
        return range(self.q)

    def __call__(self, rep: int) -> "Elem":
        return Elem(self, rep)

    # -- independent reference path -----------------------------------------

    def schoolbook_mul(self, a: int, b: int) -> int:
        """Multiply through polynomial digits, without the log tables."""
        p, e = self.p, self.e
        da = [(a // p**i) % p for i in range(e)]
        db = [(b // p**i) % p for i in range(e)]
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, self.modulus, p)
        return sum(c * p**i for i, c in enumerate(rem))

    def power_table(self, max_exp: int) -> np.ndarray:
        """Array T with T[a, k] = a**k for 0 <= k <= max_exp."""
        t = np.empty((self.q, max_exp + 1), dtype=np.int64)
        t[:, 0] = 1
        for k in range(1, max_exp + 1):
            t[:, k] = self.mul_table[np.arange(self.q), t[:, k - 1]]
        return t


@dataclass(frozen=True)
class Elem:
    """A field element bound to its field, with operator overloading."""

    field: FieldSpec
    rep: int

    def __post_init__(self):
        if not 0 <= self.rep < self.field.q:
            raise PreconditionError(f"{self.rep} is not an element index of F_{self.field.q}")

    def _other(self, other):
        if isinstance(other, Elem):
            if other.field != self.field:
                raise PreconditionError("mixed fields in arithmetic")
            return other.rep
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return Elem(self.field, self.field.add(self.rep, b))

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.field, self.field.sub(self.rep, self._other(other)))

    def __rsub__(self, other):
        return Elem(self.field, self.field.sub(self._other(other), self.rep))

    def __mul__(self, other):
        return Elem(self.field, self.field.mul(self.rep, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Elem(self.field, self.field.div(self.rep, self._other(other)))

    def __neg__(self):
        return Elem(self.field, self.field.neg(self.rep))

    def __pow__(self, k):
        return Elem(self.field, self.field.power(self.rep, k))

    def __int__(self):
        return self.rep

    def __repr__(self):
        return f"F{self.field.q}({self.rep})"


def arith(a: Elem, b: Elem, op: str) -> Elem:
    ops = {"add": Elem.__add__, "sub": Elem.__sub__, "mul": Elem.__mul__, "div": Elem.__truediv__}
    if op not in ops:
        raise PreconditionError(f"unknown operation {op!r}")
    return ops[op](a, b)


@functools.lru_cache(maxsize=None)
def field_make(p: int, e: int = 1, max_q: int = MAX_Q) -> FieldSpec:
    """Canonical F_{p^e}: modulus is the lexicographically least monic irreducible."""
    if not is_prime(p):
        raise PreconditionError(f"characteristic {p} is not prime")
    if e < 1:
        raise PreconditionError(f"extension degree must be >= 1, got {e}")
    if p**e > max_q:
        raise BudgetExceeded("field size", p**e, max_q)
    return FieldSpec(p, e, least_irreducible(p, e), max_q=max_q)


def field_of_order(q: int, max_q: int = MAX_Q) -> FieldSpec:
    """F_q for a prime power q."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise PreconditionError(f"{q} is not a prime power")
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or not is_prime(p):
        raise PreconditionError(f"{q} is not a prime power")
    return field_make(p, e, max_q)


class Extension(NamedTuple):
    field: FieldSpec
    embedding: np.ndarray     # embedding[a] = image of base element a

    def embed(self, a: int) -> int:
        return int(self.embedding[a])


@functools.lru_cache(maxsize=None)
def extend(base: FieldSpec, s: int, max_q: int = MAX_Q) -> Extension:
    """F_{q^s} with the ring embedding sending x to the least-index root of the base modulus."""
    if s < 1:
        raise PreconditionError("extension degree must be >= 1")
    big = field_make(base.p, base.e * s, max_q)
    if s == 1 and big == base:
        return Extension(big, np.arange(base.q, dtype=np.int64))
    root = None
    for r in range(big.q):
        acc = 0
        for c in reversed(base.modulus):
            acc = big.add(big.mul(acc, r), c)
        if acc == 0:
            root = r
            break
    if root is None:
        raise InternalConsistencyError("base modulus has no root in the extension")
    image = np.zeros(base.q, dtype=np.int64)
    for a in range(base.q):
        acc = 0
        for i in reversed(range(base.e)):
            acc = big.add(big.mul(acc, root), int(base.digits[a, i]))
        image[a] = acc
    image.setflags(write=False)
    return Extension(big, image)
