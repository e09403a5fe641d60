# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same signatures as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64

cnp.import_array()


cdef inline i64 _eval_one(const i64[:, ::1] points, Py_ssize_t r,
                          const i64[:, ::1] exps, const i64[::1] coeffs,
                          const i64[:, ::1] add, const i64[:, ::1] mul,
                          const i64[:, ::1] powt) noexcept nogil:
    cdef Py_ssize_t t, i
    cdef i64 acc = 0, term, e
    for t in range(exps.shape[0]):
        term = coeffs[t]
        for i in range(exps.shape[1]):
            e = exps[t, i]
            if e:
                term = mul[term, powt[points[r, i], e]]
                if term == 0:
                    break
        acc = add[acc, term]
    return acc


def eval_poly(const i64[:, ::1] points, const i64[:, ::1] exps, const i64[::1] coeffs,
              const i64[:, ::1] add, const i64[:, ::1] mul, const i64[:, ::1] powt):
    cdef Py_ssize_t r, n = points.shape[0]
    out = np.empty(n, dtype=np.int64)
    cdef i64[::1] o = out
    with nogil:
        for r in range(n):
            o[r] = _eval_one(points, r, exps, coeffs, add, mul, powt)
    return out


def count_zeros(const i64[:, ::1] points, const i64[:, ::1] exps, const i64[::1] coeffs,
                const i64[:, ::1] add, const i64[:, ::1] mul, const i64[:, ::1] powt):
    cdef Py_ssize_t r, n = points.shape[0]
    cdef i64 count = 0
    with nogil:
        for r in range(n):
            if _eval_one(points, r, exps, coeffs, add, mul, powt) == 0:
                count += 1
    return int(count)


def monomial_values(const i64[:, ::1] points, const i64[:, ::1] exps,
                    const i64[:, ::1] mul, const i64[:, ::1] powt):
    cdef Py_ssize_t r, t, i, n = points.shape[0], nt = exps.shape[0]
    cdef i64 term, e
    out = np.empty((n, nt), dtype=np.int64)
    cdef i64[:, ::1] o = out
    with nogil:
        for r in range(n):
            for t in range(nt):
                term = 1
                for i in range(exps.shape[1]):
                    e = exps[t, i]
                    if e:
                        term = mul[term, powt[points[r, i], e]]
                o[r, t] = term
    return out


def count_zeros_batch(const i64[:, ::1] monvals, const i64[:, ::1] coeff_batch,
                      const i64[:, ::1] add, const i64[:, ::1] mul):
    cdef Py_ssize_t f, r, t, nf = coeff_batch.shape[0], n = monvals.shape[0]
    cdef Py_ssize_t nt = coeff_batch.shape[1]
    cdef i64 acc, c
    out = np.zeros(nf, dtype=np.int64)
    cdef i64[::1] o = out
    with nogil:
        for f in range(nf):
            c = 0
            for r in range(n):
                acc = 0
                for t in range(nt):
                    if coeff_batch[f, t]:
                        acc = add[acc, mul[coeff_batch[f, t], monvals[r, t]]]
                if acc == 0:
                    c += 1
            o[f] = c
    return out


def all_members(const i64[:, ::1] base_vecs, const i64[:, ::1] cands,
                const cnp.uint8_t[::1] member, const i64[:, ::1] add, i64 q):
    cdef Py_ssize_t c, k, i, nc = cands.shape[0], nk = base_vecs.shape[0]
    cdef Py_ssize_t v = base_vecs.shape[1]
    cdef i64 code, w
    cdef cnp.uint8_t ok
    out = np.empty(nc, dtype=np.uint8)
    cdef cnp.uint8_t[::1] o = out
    with nogil:
        for c in range(nc):
            ok = 1
            for k in range(nk):
                code = 0
                w = 1
                for i in range(v):
                    code += add[base_vecs[k, i], cands[c, i]] * w
                    w *= q
                if not member[code]:
                    ok = 0
                    break
            o[c] = ok
    return out
