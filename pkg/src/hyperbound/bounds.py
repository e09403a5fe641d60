"""Upper bounds on the number of F_q-points of a hypersurface, in exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple, Union

from .errors import PreconditionError
from .projgeom import theta

Number = Union[int, Fraction]

BOUND_NAMES = ("main", "sss", "phi", "thas", "even", "conjecture")


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: Number
    params: Tuple[Tuple[str, int], ...]
    attained_by: Optional[str] = None
    attained: Optional[bool] = None

    def __post_init__(self):
        if self.value < 0:
            raise PreconditionError(f"bound {self.name} came out negative")

    def render(self) -> str:
        return format_number(self.value)


def format_number(x: Number) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _check_q(q: int):
    if q < 2:
        raise PreconditionError(f"q must be at least 2, got {q}")


def main_bound(n: int, d: int, q: int) -> int:
    """theta((n-1)/2) * ((d-1) q^((n-1)/2) + 1) for odd n >= 3."""
    _check_q(q)
    if n % 2 == 0 or n < 3:
        raise PreconditionError(f"main bound needs odd n >= 3, got {n}")
    if d < 2:
        raise PreconditionError(f"main bound needs d >= 2, got {d}")
    h = (n - 1) // 2
    return theta(q, h) * ((d - 1) * q**h + 1)


def sss_bound(m: int, d: int, q: int) -> int:
    """d q^(m-1) + theta(m-2)."""
    _check_q(q)
    if m < 2 or d < 1:
        raise PreconditionError(f"need m >= 2 and d >= 1, got m={m}, d={d}")
    return d * q ** (m - 1) + theta(q, m - 2)


def phi_bound(m: int, k: int, d: int, q: int) -> int:
    """theta(m-k-1) q^k (d-1) + theta(k), valid for k_X <= k."""
    _check_q(q)
    if not 0 <= k <= m - 1:
        raise PreconditionError(f"need 0 <= k <= m-1, got k={k}, m={m}")
    if d < 1:
        raise PreconditionError(f"need d >= 1, got {d}")
    return theta(q, m - k - 1) * q**k * (d - 1) + theta(q, k)


def phi_step(m: int, k: int, d: int, q: int) -> int:
    """phi(k+1) - phi(k); equals q^k (q+1-d), so positive exactly when d <= q."""
    return phi_bound(m, k + 1, d, q) - phi_bound(m, k, d, q)


def thas_bound(m: int, k: int, d: int, q: int) -> Fraction:
    _check_q(q)
    if not 1 <= k <= m - 2:
        raise PreconditionError(f"need 1 <= k <= m-2, got k={k}, m={m}")
    tail = sum((Fraction(q**i * theta(q, m - 1), theta(q, i) * theta(q, i + 1))
                for i in range(k, m - 1)), Fraction(0))
    return d * q ** (m - 1) + theta(q, m - 2) + (d - (q + 1)) * tail


def thas_gap_closed_form(m: int, k: int, d: int, q: int) -> Fraction:
    t = q + 1 - d
    inner = q ** (k + 1) * theta(q, m - k - 2) * theta(q, k) - theta(q, m - 1) + theta(q, k)
    return Fraction(t * inner, q * theta(q, k))


class ThasComparison(NamedTuple):
    S: int
    T: Fraction
    better: bool
    diff: Fraction
    closed_form: Fraction

    @property
    def consistent(self) -> bool:
        return self.diff == self.closed_form


def compare_thas(m: int, k: int, d: int, q: int) -> ThasComparison:
    """Compare phi_bound (S) with the Thas-type bound (T); better means T - S > 0."""
    if d > q + 1 or d < 1:
        raise PreconditionError(f"need 1 <= d <= q+1, got d={d}, q={q}")
    S = phi_bound(m, k, d, q)
    T = thas_bound(m, k, d, q)
    diff = T - S
    return ThasComparison(S, T, diff > 0, diff, thas_gap_closed_form(m, k, d, q))


def thas_sweep(m_max: int = 6, qs=(2, 3, 4, 5), d_min: int = 2, d_upper=lambda q: q):
    """Rows (m, k, d, q, comparison) over 3 <= m <= m_max, 1 <= k <= m-2, d_min <= d <= d_upper(q)."""
    for q in qs:
        for m in range(3, m_max + 1):
            for k in range(1, m - 1):
                for d in range(d_min, d_upper(q) + 1):
                    yield m, k, d, q, compare_thas(m, k, d, q)


def _check_even(m: int):
    if m % 2 or m < 2:
        raise PreconditionError(f"need even m >= 2, got {m}")


def even_bound(m: int, d: int, q: int) -> int:
    """theta(m/2) q^(m/2-1) (d-1) + theta(m/2-1); never attained."""
    _check_q(q)
    _check_even(m)
    h = m // 2
    return theta(q, h) * q ** (h - 1) * (d - 1) + theta(q, h - 1)


def conjecture_bound(m: int, d: int, q: int) -> int:
    """theta(m/2-1) ((d-1) q^(m/2) + 1)."""
    _check_q(q)
    _check_even(m)
    h = m // 2
    return theta(q, h - 1) * ((d - 1) * q**h + 1)


def all_bounds(n: int, d: int, q: int, k: Optional[int] = None):
    """A BoundReport or None (not applicable) for every name in BOUND_NAMES."""
    if k is None:
        k = (n - 1) // 2
    out = {}

    def attempt(name, fn, params, **extra):
        try:
            out[name] = BoundReport(name, fn(), params, **extra)
        except PreconditionError:
            out[name] = None

    attempt("main", lambda: main_bound(n, d, q), (("n", n), ("d", d), ("q", q)))
    attempt("sss", lambda: sss_bound(n, d, q), (("m", n), ("d", d), ("q", q)))
    attempt("phi", lambda: phi_bound(n, k, d, q), (("m", n), ("k", k), ("d", d), ("q", q)))
    attempt("thas", lambda: thas_bound(n, k, d, q), (("m", n), ("k", k), ("d", d), ("q", q)))
    attempt("even", lambda: even_bound(n, d, q), (("m", n), ("d", d), ("q", q)), attained=False)
    attempt("conjecture", lambda: conjecture_bound(n, d, q), (("m", n), ("d", d), ("q", q)))
    return out
