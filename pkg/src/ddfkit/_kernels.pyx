# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; mirrors :mod:`ddfkit._kernels_py` exactly."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def pair_difference_counts(const i64[:] labels, Py_ssize_t nclasses):
    cdef Py_ssize_t v = labels.shape[0]
    out = np.zeros((nclasses, nclasses, v), dtype=np.int64)
    cdef i64[:, :, :] c = out
    cdef Py_ssize_t a, b, d
    cdef i64 la, lb
    for a in range(v):
        la = labels[a]
        if la < 0:
            continue
        for b in range(v):
            lb = labels[b]
            if lb < 0 or a == b:
                continue
            d = a - b
            if d < 0:
                d += v
            c[la, lb, d] += 1
    return out


def correlation_table(const i64[:] x, const i64[:] y):
    cdef Py_ssize_t n = x.shape[0]
    out = np.zeros(n, dtype=np.int64)
    cdef i64[:] h = out
    cdef Py_ssize_t t, i, j
    cdef i64 acc
    for t in range(n):
        acc = 0
        j = t
        for i in range(n):
            if x[i] == y[j]:
                acc += 1
            j += 1
            if j == n:
                j = 0
        h[t] = acc
    return out


def relabel_first_occurrence(const i64[:] labels):
    cdef Py_ssize_t v = labels.shape[0]
    out = np.empty(v, dtype=np.int64)
    cdef i64[:] o = out
    cdef i64 mx = -1
    cdef Py_ssize_t i
    for i in range(v):
        if labels[i] > mx:
            mx = labels[i]
    seen = np.full(mx + 2, -1, dtype=np.int64)
    cdef i64[:] s = seen
    cdef i64 nxt = 0
    for i in range(v):
        if labels[i] < 0:
            o[i] = -1
        else:
            if s[labels[i]] < 0:
                s[labels[i]] = nxt
                nxt += 1
            o[i] = s[labels[i]]
    return out


def affine_search(const i64[:] labels, const i64[:] target, const i64[:] multipliers,
                  const i64[:] offsets):
    """First (a, b) whose affine image of ``labels`` matches ``target``.

    Both label arrays must already be in first-occurrence form; the image is
    compared after the same relabeling.  Returns (-1, -1) when nothing matches.
    """
    cdef Py_ssize_t v = labels.shape[0]
    cdef Py_ssize_t na = multipliers.shape[0], nb = offsets.shape[0]
    cdef i64 mx = -1
    cdef Py_ssize_t i, ia, ib, pos
    for i in range(v):
        if labels[i] > mx:
            mx = labels[i]
    img_arr = np.empty(v, dtype=np.int64)
    seen_arr = np.empty(mx + 2, dtype=np.int64)
    cdef i64[:] img = img_arr
    cdef i64[:] seen = seen_arr
    cdef i64 a, b, nxt, lab, r
    cdef bint ok
    for ia in range(na):
        a = multipliers[ia]
        for ib in range(nb):
            b = offsets[ib]
            for i in range(v):
                pos = (a * i + b) % v
                img[pos] = labels[i]
            for i in range(mx + 2):
                seen[i] = -1
            nxt = 0
            ok = True
            for i in range(v):
                lab = img[i]
                if lab < 0:
                    r = -1
                else:
                    if seen[lab] < 0:
                        seen[lab] = nxt
                        nxt += 1
                    r = seen[lab]
                if r != target[i]:
                    ok = False
                    break
            if ok:
                return int(a), int(b)
    return -1, -1


def min_pairwise_distance(const i64[:, :] words):
    cdef Py_ssize_t m = words.shape[0], n = words.shape[1]
    cdef Py_ssize_t i, j, k
    cdef i64 best = n + 1, d
    for i in range(m):
        for j in range(i + 1, m):
            d = 0
            for k in range(n):
                if words[i, k] != words[j, k]:
                    d += 1
            if d < best:
                best = d
    return int(best)
