# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pure.py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def interval_overlap(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef double alo, ahi, blo, bhi, lo, hi
    cdef double length = 0.0
    cdef long pieces = 0
    while i < na and j < nb:
        alo = <double>a[i]
        ahi = <double>a[i + 1]
        blo = <double>b[j]
        bhi = <double>b[j + 1]
        lo = alo if alo > blo else blo
        hi = ahi if ahi < bhi else bhi
        if lo <= hi:
            length += hi - lo
            pieces += 1
        if ahi < bhi:
            i += 2
        else:
            j += 2
    return length, pieces


def odp_scores(const double[:, ::1] cells, const double[::1] max_yd, candidates):
    cdef Py_ssize_t[::1] cand = np.ascontiguousarray(candidates, dtype=np.intp)
    cdef Py_ssize_t nc = cand.shape[0], k = cells.shape[1]
    cdef Py_ssize_t c, p, row
    cdef double acc, d
    out = np.zeros(nc)
    cdef double[::1] res = out
    for c in range(nc):
        row = cand[c]
        acc = 0.0
        for p in range(k):
            d = cells[row, p] - max_yd[p]
            if d > 0.0:
                acc += d
        res[c] = acc
    return out


def leave_one_out(const double[:, ::1] cells, rows):
    cdef Py_ssize_t[::1] idx = np.ascontiguousarray(rows, dtype=np.intp)
    cdef Py_ssize_t m = idx.shape[0], k = cells.shape[1]
    cdef Py_ssize_t r, p, q
    cdef double v, top, second, other, d, acc, best
    cdef Py_ssize_t argtop
    sums_arr = np.zeros(m)
    margins_arr = np.zeros(m)
    cdef double[::1] sums = sums_arr
    cdef double[::1] margins = margins_arr
    if m == 0:
        return sums_arr, margins_arr
    tops_arr = np.empty(k)
    seconds_arr = np.empty(k)
    args_arr = np.empty(k, dtype=np.intp)
    cdef double[::1] tops = tops_arr
    cdef double[::1] seconds = seconds_arr
    cdef Py_ssize_t[::1] args = args_arr
    for p in range(k):
        top = -1.0e300
        second = 0.0 if m == 1 else -1.0e300
        argtop = 0
        for q in range(m):
            v = cells[idx[q], p]
            if v > top:
                second = top if q > 0 else second
                top = v
                argtop = q
            elif v > second:
                second = v
        if m == 1:
            second = 0.0
        tops[p] = top
        seconds[p] = second
        args[p] = argtop
    for r in range(m):
        acc = 0.0
        best = -1.0e300
        for p in range(k):
            other = seconds[p] if args[p] == r else tops[p]
            d = cells[idx[r], p] - other
            if d > 0.0:
                acc += d
            if d > best:
                best = d
        sums[r] = acc
        margins[r] = best if k > 0 else 0.0
    return sums_arr, margins_arr
