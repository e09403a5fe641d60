"""Enumeration kernels with a compiled core and a numpy fallback.

The compiled extension ``_ckernels`` is used when it was built; otherwise, or
when ``HYPERBOUND_KERNEL=python`` is set, the numpy implementations in
``_pykernels`` are used.  Both expose the same functions.
"""

import os

from . import _pykernels as python_backend

try:
    from . import _ckernels as cython_backend
except ImportError:  # extension not built
    cython_backend = None

if cython_backend is not None and os.environ.get("HYPERBOUND_KERNEL", "").lower() != "python":
    backend = cython_backend
    BACKEND = "cython"
else:
    backend = python_backend
    BACKEND = "python"

eval_poly = backend.eval_poly
count_zeros = backend.count_zeros
monomial_values = backend.monomial_values
count_zeros_batch = backend.count_zeros_batch
all_members = backend.all_members

__all__ = ["BACKEND", "backend", "python_backend", "cython_backend", "eval_poly",
           "count_zeros", "monomial_values", "count_zeros_batch", "all_members"]
