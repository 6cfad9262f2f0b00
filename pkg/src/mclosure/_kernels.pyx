# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; same contracts as _kernels_py."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline Py_ssize_t _find(Py_ssize_t[::1] parent, Py_ssize_t x) nogil:
    cdef Py_ssize_t r = x
    while parent[r] != r:
        r = parent[r]
    cdef Py_ssize_t nxt
    while parent[x] != r:
        nxt = parent[x]
        parent[x] = r
        x = nxt
    return r


def tuple_orbit_labels(images):
    cdef cnp.int64_t[:, ::1] img = np.ascontiguousarray(images, dtype=np.int64)
    cdef Py_ssize_t g = img.shape[0]
    cdef Py_ssize_t N = img.shape[1]
    parent_arr = np.arange(N, dtype=np.intp)
    cdef Py_ssize_t[::1] parent = parent_arr
    labels_arr = np.empty(N, dtype=np.int64)
    cdef cnp.int64_t[::1] labels = labels_arr
    cdef Py_ssize_t i, k, a, b, ra, rb
    cdef cnp.int64_t count = 0
    with nogil:
        for k in range(g):
            for i in range(N):
                ra = _find(parent, i)
                rb = _find(parent, img[k, i])
                if ra != rb:
                    # keep the smaller index as root
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
        for i in range(N):
            a = _find(parent, i)
            if a == i:
                labels[i] = count
                count += 1
            else:
                labels[i] = labels[a]
    return labels_arr, int(count)


def signature_counts(C, cells, int ncolors, int ncells):
    cdef cnp.int32_t[:, ::1] c = np.ascontiguousarray(C, dtype=np.int32)
    cdef cnp.int32_t[::1] cl = np.ascontiguousarray(cells, dtype=np.int32)
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t K = ncolors * ncells
    out_arr = np.zeros((n, 2 * K), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] out = out_arr
    cdef Py_ssize_t v, w
    with nogil:
        for v in range(n):
            for w in range(n):
                out[v, c[v, w] * ncells + cl[w]] += 1
                out[v, K + c[w, v] * ncells + cl[w]] += 1
    return out_arr


def preserving_rows(P, C):
    cdef cnp.int64_t[:, ::1] p = np.ascontiguousarray(P, dtype=np.int64)
    cdef cnp.int32_t[:, ::1] c = np.ascontiguousarray(C, dtype=np.int32)
    cdef Py_ssize_t m = p.shape[0]
    cdef Py_ssize_t n = c.shape[0]
    mask_arr = np.ones(m, dtype=np.bool_)
    cdef cnp.npy_bool[::1] mask = mask_arr
    cdef Py_ssize_t r, i, j
    with nogil:
        for r in range(m):
            for i in range(n):
                for j in range(n):
                    if c[p[r, i], p[r, j]] != c[i, j]:
                        mask[r] = 0
                        break
                if not mask[r]:
                    break
    return mask_arr
