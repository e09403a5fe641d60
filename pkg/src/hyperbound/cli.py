"""Command-line entry point: ``hyperbound <verb> [options]``, CSV on stdout.

Exit codes: 0 success, 1 a verification failed, 2 usage or precondition
error, 3 an enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import List, Optional

from . import analysis as an
from . import bounds as bd
from . import catalog as cat
from .errors import DEFAULT_MAX_POINTS, BudgetExceeded, PreconditionError
from .gf import MAX_Q, field_of_order
from .homopoly import HomoPoly
from .projgeom import LinearSubspace, point_array

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CATALOG_FAMILIES = ("hyperbolic", "elliptic", "hermitian", "filling", "parabolic",
                    "cone:0:parabolic", "cone:1:elliptic")


# -- rendering -------------------------------------------------------------------

def render_vector(v) -> str:
    return " ".join(str(int(x)) for x in v)


def render_subspace(S: Optional[LinearSubspace]) -> str:
    if S is None:
        return ""
    return "|".join(render_vector(r) for r in S.basis)


def parse_subspace(text: str, field, n: int) -> LinearSubspace:
    rows = [r.split() for r in text.replace(";", "|").split("|") if r.strip()]
    try:
        rows = [[int(x) for x in r] for r in rows]
    except ValueError:
        raise PreconditionError(f"cannot parse subspace {text!r}") from None
    if any(x < 0 or x >= field.q for r in rows for x in r):
        raise PreconditionError("subspace entries must be field elements")
    return LinearSubspace.from_rows(field, n, rows)


class Table:
    def __init__(self, header):
        self.buf = io.StringIO()
        self.writer = csv.writer(self.buf, lineterminator="\n")
        self.writer.writerow(header)

    def row(self, *values):
        self.writer.writerow(["NA" if v is None else v for v in values])

    def text(self) -> str:
        return self.buf.getvalue()


# -- argument handling --------------------------------------------------------------

def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise PreconditionError(f"{args.verb} needs {', '.join(missing)}")


def _field(args):
    _require(args, "q")
    if not 2 <= args.q <= MAX_Q:
        raise PreconditionError(f"q must lie in 2..{MAX_Q}, got {args.q}")
    return field_of_order(args.q)


def _hypersurface(args):
    _require(args, "n")
    if args.n < 1:
        raise PreconditionError(f"n must be at least 1, got {args.n}")
    F = _field(args)
    if args.form is not None:
        if args.family is not None:
            raise PreconditionError("give either --family or --form, not both")
        f = HomoPoly.from_text(args.form, F, args.n + 1)
        if args.d is not None and args.d != f.degree:
            raise PreconditionError(f"form has degree {f.degree}, not {args.d}")
        return "form", cat.Hypersurface(f, args.n, "form")
    _require(args, "family")
    X = cat.build(args.family, args.n, F)
    return args.family, X


# -- verbs -----------------------------------------------------------------------

def cmd_count(args):
    name, X = _hypersurface(args)
    if args.s < 1:
        raise PreconditionError("--s must be at least 1")
    rep = an.count_points(X, args.s, args.max_points)
    t = Table(["family", "n", "q", "d", "count"] + (["s"] if args.s > 1 else []))
    t.row(name, X.n, X.field.q, X.degree, rep.n_points, *([args.s] if args.s > 1 else []))
    return t, EXIT_OK


def cmd_kmax(args):
    name, X = _hypersurface(args)
    t = Table(["family", "n", "q", "k"])
    t.row(name, X.n, X.field.q, an.max_linear_dim(X, args.k, args.max_points))
    return t, EXIT_OK


def cmd_singular(args):
    name, X = _hypersurface(args)
    if args.s_max < 1:
        raise PreconditionError("--s-max must be at least 1")
    pts = an.singular_points(X, args.s_max, args.max_points)
    t = Table(["family", "n", "q", "s_max", "s", "point"])
    for pt, s in pts:
        t.row(name, X.n, X.field.q, args.s_max, s, render_vector(pt))
    return t, EXIT_OK


def cmd_bounds(args):
    _require(args, "n", "d", "q")
    _field(args)
    t = Table(["bound", "params", "value"])
    for key, rep in bd.all_bounds(args.n, args.d, args.q, args.k).items():
        if rep is None:
            t.row(key, "", None)
        else:
            t.row(key, ";".join(f"{k}={v}" for k, v in rep.params), rep.render())
    return t, EXIT_OK


def cmd_catalog(args):
    F = _field(args)
    n = args.n if args.n is not None else 3
    t = Table(["family", "n", "q", "d", "closed_form", "form"])
    names = [args.family] if args.family else CATALOG_FAMILIES
    for fam in names:
        try:
            X = cat.build(fam, n, F)
        except PreconditionError:
            if args.family:
                raise
            continue
        t.row(fam, n, F.q, X.degree, cat.closed_form_count(fam, n, F.q), X.form.to_text())
    return t, EXIT_OK


def _default_M(X):
    """Span of the first contained (n-1)/2-space and the first point of P^n off it."""
    subs = an.contained_subspaces(X, (X.n - 1) // 2)
    if not subs:
        raise PreconditionError("X contains no subspace of dimension (n-1)/2; pass --subspace")
    L = subs[0]
    P = next(p for p in point_array(X.field, X.n) if tuple(p) not in L)
    return LinearSubspace.from_rows(X.field, X.n, list(L.basis) + [tuple(int(x) for x in P)])


def cmd_type_s(args):
    name, X = _hypersurface(args)
    M = parse_subspace(args.subspace, X.field, X.n) if args.subspace else _default_M(X)
    rep = an.type_S(M, X)
    t = Table(["family", "n", "q", "M", "type_S", "degenerate", "points", "components", "core"])
    t.row(name, X.n, X.field.q, render_subspace(M), int(rep.is_type_S), int(rep.degenerate),
          rep.n_points, "/".join(render_subspace(c) for c in rep.components), render_subspace(rep.core))
    return t, EXIT_OK


def cmd_compare_thas(args):
    t = Table(["m", "k", "d", "q", "S", "T", "T_minus_S", "closed_form", "better"])
    if args.sweep:
        rows = bd.thas_sweep(6, (2, 3, 4, 5))
    else:
        _require(args, "n", "k", "d", "q")
        _field(args)
        rows = [(args.n, args.k, args.d, args.q, bd.compare_thas(args.n, args.k, args.d, args.q))]
    f = bd.format_number
    for m, k, d, q, c in rows:
        t.row(m, k, d, q, c.S, f(c.T), f(c.diff), f(c.closed_form), int(c.better))
    return t, EXIT_OK


def cmd_verify(args):
    from . import verify
    t = Table(["criterion", "title", "status", "detail"])
    results = verify.run_all(echo=lambda line: print(line, file=args.stderr, flush=True))
    for r in results:
        t.row(r.key, r.title, "pass" if r.passed else "fail", r.detail)
    return t, EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


VERBS = {
    "count": cmd_count, "kmax": cmd_kmax, "singular": cmd_singular, "bounds": cmd_bounds,
    "catalog": cmd_catalog, "type-s": cmd_type_s, "compare-thas": cmd_compare_thas,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperbound", description="Point counts and bounds for hypersurfaces over F_q.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("--family", help="hyperbolic, elliptic, hermitian, filling, parabolic or cone:<s>:<family>")
    p.add_argument("--form", help='polynomial text, e.g. "X0*X1+X2*X3"')
    p.add_argument("--n", "--m", dest="n", type=int, help="ambient dimension")
    p.add_argument("--q", type=int, help="field order")
    p.add_argument("--d", type=int, help="degree")
    p.add_argument("--k", type=int, help="subspace dimension parameter")
    p.add_argument("--s", type=int, default=1, help="extension degree for count")
    p.add_argument("--subspace", help='rows separated by "|", entries by spaces')
    p.add_argument("--sweep", action="store_true", help="compare-thas over the full sweep")
    p.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    p.add_argument("--s-max", type=int, default=an.DEFAULT_S_MAX)
    return p


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        if args.max_points < 1:
            raise PreconditionError("--max-points must be positive")
        args.stderr = stderr
        table, code = VERBS[args.verb](args)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(table.text())
    stdout.flush()
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
