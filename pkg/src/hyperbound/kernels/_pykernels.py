"""Pure numpy implementations of the enumeration kernels.

Every function works on element indices and the table arrays of a
:class:`~hyperbound.gf.FieldSpec`; all integer arrays are ``int64``.
"""

import numpy as np


def eval_poly(points, exps, coeffs, add, mul, powt):
    n = points.shape[0]
    vals = np.zeros(n, dtype=np.int64)
    for t in range(exps.shape[0]):
        term = np.full(n, coeffs[t], dtype=np.int64)
        for i in np.flatnonzero(exps[t]):
            term = mul[term, powt[points[:, i], exps[t, i]]]
        vals = add[vals, term]
    return vals


def count_zeros(points, exps, coeffs, add, mul, powt):
    return int(np.count_nonzero(eval_poly(points, exps, coeffs, add, mul, powt) == 0))


def monomial_values(points, exps, mul, powt):
    n, nt = points.shape[0], exps.shape[0]
    out = np.ones((n, nt), dtype=np.int64)
    for t in range(nt):
        col = out[:, t]
        for i in np.flatnonzero(exps[t]):
            col = mul[col, powt[points[:, i], exps[t, i]]]
        out[:, t] = col
    return out


def count_zeros_batch(monvals, coeff_batch, add, mul):
    nf, nt = coeff_batch.shape
    n = monvals.shape[0]
    counts = np.empty(nf, dtype=np.int64)
    step = max(1, (1 << 20) // max(n, 1))
    for lo in range(0, nf, step):
        cb = coeff_batch[lo:lo + step]
        acc = np.zeros((cb.shape[0], n), dtype=np.int64)
        for t in range(nt):
            acc = add[acc, mul[cb[:, t][:, None], monvals[None, :, t]]]
        counts[lo:lo + step] = np.count_nonzero(acc == 0, axis=1)
    return counts


def all_members(base_vecs, cands, member, add, q):
    v = base_vecs.shape[1]
    weights = q ** np.arange(v, dtype=np.int64)
    out = np.empty(cands.shape[0], dtype=np.uint8)
    step = max(1, (1 << 20) // max(base_vecs.shape[0], 1))
    for lo in range(0, cands.shape[0], step):
        s = add[base_vecs[None, :, :], cands[lo:lo + step, None, :]]
        out[lo:lo + step] = member[s @ weights].all(axis=1)
    return out
