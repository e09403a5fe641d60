"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload is run on both backends; results must agree exactly.
"""

import argparse
import time

import numpy as np

from hyperbound import catalog, kernels
from hyperbound.analysis import member_table, monomials, point_set
from hyperbound.gf import field_of_order
from hyperbound.projgeom import LinearSubspace, point_array


def workloads():
    F4 = field_of_order(4)
    herm = catalog.hermitian(5, F4)
    pts = point_array(F4, 5)
    exps, coeffs = herm.form.arrays()
    powt = F4.power_table(herm.degree)
    yield "count_zeros hermitian P^5(F_4)", "count_zeros", (pts, exps, coeffs, F4.add_table, F4.mul_table, powt)

    F16 = field_of_order(16)
    big = point_array(F16, 4)
    h16 = catalog.hermitian(4, F16)
    e16, c16 = h16.form.arrays()
    p16 = F16.power_table(h16.degree)
    yield "eval_poly hermitian P^4(F_16)", "eval_poly", (big, e16, c16, F16.add_table, F16.mul_table, p16)

    F2 = field_of_order(2)
    mons = np.array(monomials(5, 2), dtype=np.int64)
    p4 = point_array(F2, 4)
    mv = kernels.monomial_values(p4, mons, F2.mul_table, F2.power_table(2))
    batch = point_array(F2, len(mons) - 1)
    yield "count_zeros_batch all quadrics P^4(F_2)", "count_zeros_batch", (mv, batch, F2.add_table, F2.mul_table)

    on = point_set(herm)
    member = member_table(herm)
    L = LinearSubspace.point(F4, tuple(int(x) for x in on[0]))
    yield "all_members hermitian line screen", "all_members", (L.vectors(), on, member, F4.add_table, 4)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.cython_backend is None:
        print("compiled extension not built; only the numpy backend is available")
    print(f"{'workload':45s} {'numpy ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn, data in workloads():
        out = {}
        times = {}
        for label, mod in (("python", kernels.python_backend), ("cython", kernels.cython_backend)):
            if mod is None:
                continue
            f = getattr(mod, fn)
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                out[label] = f(*data)
                best = min(best, time.perf_counter() - t0)
            times[label] = best * 1e3
        if len(out) == 2 and not np.array_equal(np.asarray(out["python"]), np.asarray(out["cython"])):
            raise SystemExit(f"backends disagree on {name}")
        py, cy = times.get("python"), times.get("cython")
        speed = f"{py / cy:8.1f}" if cy else "     n/a"
        print(f"{name:45s} {py:10.2f} {cy if cy else float('nan'):10.2f} {speed}")


if __name__ == "__main__":
    main()
