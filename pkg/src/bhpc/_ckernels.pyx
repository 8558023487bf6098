# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled F_p contraction kernel.

Residues are int64 in [0, p) with p < 2**25, so every product fits in 50
bits and is reduced immediately.  The loops run without the GIL.
"""

import numpy as np

from libc.stdint cimport int64_t


def bilinear_outer_modp(const int64_t[:, :, ::1] C,
                        const int64_t[:, ::1] X,
                        const int64_t[:, ::1] Y,
                        int64_t p):
    """U[r, s, m] = sum_{a,b} X[r, a] Y[s, b] C[a, b, m] mod p."""
    cdef Py_ssize_t n = C.shape[0]
    cdef Py_ssize_t nr = X.shape[0]
    cdef Py_ssize_t ns = Y.shape[0]
    cdef Py_ssize_t r, s, a, b, m
    cdef int64_t x, y, c, z

    Z = np.zeros((n, n), dtype=np.int64)
    U = np.zeros((nr, ns, n), dtype=np.int64)
    cdef int64_t[:, ::1] Zv = Z
    cdef int64_t[:, :, ::1] Uv = U

    with nogil:
        for r in range(nr):
            for b in range(n):
                for m in range(n):
                    Zv[b, m] = 0
            for a in range(n):
                x = X[r, a]
                if x == 0:
                    continue
                for b in range(n):
                    for m in range(n):
                        c = C[a, b, m]
                        if c != 0:
                            Zv[b, m] = (Zv[b, m] + x * c) % p
            for s in range(ns):
                for b in range(n):
                    y = Y[s, b]
                    if y == 0:
                        continue
                    for m in range(n):
                        z = Zv[b, m]
                        if z != 0:
                            Uv[r, s, m] = (Uv[r, s, m] + y * z) % p
    return U
