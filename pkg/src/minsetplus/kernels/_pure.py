"""Pure-Python/numpy versions of the hot kernels.

Used when the compiled extension is not built, or when ``MINSETPLUS_PURE=1``.
Every function here has the same signature and results as its counterpart in
``_ckernels.pyx``.
"""
import numpy as np


def interval_overlap(a, b):
    """Length and piece count of the intersection of two interval unions.

    ``a`` and ``b`` are flat endpoint tuples ``(lo0, hi0, lo1, hi1, ...)`` of
    canonical (sorted, disjoint) unions. Closed endpoints: two intervals that
    only touch produce a zero-length piece.
    """
    i = j = 0
    na, nb = len(a), len(b)
    length = 0.0
    pieces = 0
    while i < na and j < nb:
        ahi = a[i + 1]
        bhi = b[j + 1]
        lo = a[i] if a[i] > b[j] else b[j]
        hi = ahi if ahi < bhi else bhi
        if lo <= hi:
            length += hi - lo
            pieces += 1
        if ahi < bhi:
            i += 2
        else:
            j += 2
    return length, pieces


def odp_scores(cells, max_yd, candidates):
    """ODP of each candidate row against the cached column maxima."""
    rows = cells[np.asarray(candidates, dtype=np.intp)]
    return np.maximum(rows - max_yd, 0.0).sum(axis=1)


def leave_one_out(cells, rows):
    """For each row in ``rows``: its ODP against the other rows, and its best margin.

    Returns two arrays aligned with ``rows``: the summed positive excess over
    the column maximum of the remaining rows, and the largest single-column
    excess (which may be negative).
    """
    rows = np.asarray(rows, dtype=np.intp)
    m = len(rows)
    k = cells.shape[1]
    if m == 0:
        return np.zeros(0), np.zeros(0)
    if m == 1:
        row = cells[rows[0]]
        return np.array([row.sum()]), np.array([row.max() if k else 0.0])
    sub = cells[rows]
    order = np.argsort(-sub, axis=0, kind="stable")
    top = np.take_along_axis(sub, order[:1], axis=0)[0]
    second = np.take_along_axis(sub, order[1:2], axis=0)[0]
    argtop = order[0]
    sums = np.empty(m)
    margins = np.empty(m)
    for r in range(m):
        others = np.where(argtop == r, second, top)
        diff = sub[r] - others
        sums[r] = np.maximum(diff, 0.0).sum()
        margins[r] = diff.max() if k else 0.0
    return sums, margins
