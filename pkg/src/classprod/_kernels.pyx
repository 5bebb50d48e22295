# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np

cimport cython
from libc.stdlib cimport malloc, free


def product_marks(
    const int[:, ::1] elems,
    const int[:, ::1] reps,
    const int[:, ::1] add,
    const int[:, ::1] mul,
    const int[::1] lookup,
    int nlabels,
    int n,
    int q,
):
    cdef Py_ssize_t nel = elems.shape[0]
    cdef Py_ssize_t nrep = reps.shape[0]
    marks_arr = np.zeros((nrep, nlabels), dtype=np.uint8)
    cdef unsigned char[:, ::1] marks = marks_arr
    cdef Py_ssize_t i, j, r, c, k
    cdef long long code, place
    cdef int s, label
    with nogil:
        for j in range(nrep):
            for i in range(nel):
                code = 0
                place = 1
                for r in range(n):
                    for c in range(n):
                        s = 0
                        for k in range(n):
                            s = add[s, mul[elems[i, r * n + k], reps[j, k * n + c]]]
                        code += s * place
                        place *= q
                label = lookup[code]
                marks[j, label] = 1
    return marks_arr


def conjugation_codes(
    const int[:, ::1] elems,
    const int[::1] g,
    const int[::1] ginv,
    const int[:, ::1] add,
    const int[:, ::1] mul,
    int n,
    int q,
):
    cdef Py_ssize_t nel = elems.shape[0]
    out_arr = np.empty(nel, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef int* tmp = <int*> malloc(n * n * sizeof(int))
    cdef Py_ssize_t i, r, c, k
    cdef long long code, place
    cdef int s
    if tmp == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(nel):
                for r in range(n):
                    for c in range(n):
                        s = 0
                        for k in range(n):
                            s = add[s, mul[ginv[r * n + k], elems[i, k * n + c]]]
                        tmp[r * n + c] = s
                code = 0
                place = 1
                for r in range(n):
                    for c in range(n):
                        s = 0
                        for k in range(n):
                            s = add[s, mul[tmp[r * n + k], g[k * n + c]]]
                        code += s * place
                        place *= q
                out[i] = code
    finally:
        free(tmp)
    return out_arr
