# cython: language_level=3, boundscheck=False, wraparound=False
"""Sparse fraction-free integer elimination, compiled backend.

Algorithmically identical to _elim_py (same pivot choices, same output);
loop bookkeeping is typed, entries stay arbitrary-precision Python ints.
"""

import heapq
from math import gcd

BACKEND = "cython"


cdef _strip(list cols, list vals):
    cdef Py_ssize_t i, n = len(vals)
    g = 0
    for i in range(n):
        g = gcd(g, vals[i])
        if g == 1:
            break
    if g > 1:
        vals = [v // g for v in vals]
    if n and vals[0] < 0:
        vals = [-v for v in vals]
    return cols, vals


cdef _combine(list pcols, list pvals, list ocols, list ovals):
    cdef Py_ssize_t i, j, k, np_, no
    cdef long cp, co
    p = pvals[0]
    q = ovals[0]
    g = gcd(p, q)
    a = p // g
    b = q // g
    i = 1
    j = 1
    np_ = len(pcols)
    no = len(ocols)
    cdef list ncols = [0] * (np_ + no - 2)
    cdef list nvals = [0] * (np_ + no - 2)
    k = 0
    while i < np_ and j < no:
        cp = pcols[i]
        co = ocols[j]
        if co < cp:
            ncols[k] = co
            nvals[k] = a * ovals[j]
            k += 1
            j += 1
        elif cp < co:
            ncols[k] = cp
            nvals[k] = -b * pvals[i]
            k += 1
            i += 1
        else:
            v = a * ovals[j] - b * pvals[i]
            if v:
                ncols[k] = co
                nvals[k] = v
                k += 1
            i += 1
            j += 1
    while j < no:
        ncols[k] = ocols[j]
        nvals[k] = a * ovals[j]
        k += 1
        j += 1
    while i < np_:
        ncols[k] = pcols[i]
        nvals[k] = -b * pvals[i]
        k += 1
        i += 1
    del ncols[k:]
    del nvals[k:]
    return _strip(ncols, nvals)


def echelon(rows, ncols, stop_at=None):
    """Reduce sparse rows to echelon form; see _elim_py.echelon."""
    cdef list heap = []
    cdef Py_ssize_t seq = 0
    cdef Py_ssize_t limit = -1 if stop_at is None else <Py_ssize_t> stop_at
    cdef list cols, vals
    for rcols, rvals in rows:
        if any(v == 0 for v in rvals):
            rcols = [c for c, v in zip(rcols, rvals) if v]
            rvals = [v for v in rvals if v]
        if rcols:
            cols, vals = _strip(list(rcols), list(rvals))
            heapq.heappush(heap, (cols[0], len(cols), seq, cols, vals))
            seq += 1
    cdef list pivots = []
    cdef list group
    while heap:
        if limit >= 0 and len(pivots) >= limit:
            break
        lead = heap[0][0]
        group = []
        while heap and heap[0][0] == lead:
            group.append(heapq.heappop(heap))
        piv = group[0]
        for cand in group[1:]:
            if (cand[1], cand[2]) < (piv[1], piv[2]):
                piv = cand
        pivots.append((piv[3], piv[4]))
        for cand in group:
            if cand is piv:
                continue
            cols, vals = _combine(piv[3], piv[4], cand[3], cand[4])
            if cols:
                heapq.heappush(heap, (cols[0], len(cols), seq, cols, vals))
                seq += 1
    return pivots


def rank_rows(rows, ncols, stop_at=None):
    """Rank of the sparse integer matrix given by rows."""
    return len(echelon(rows, ncols, stop_at))


def det_int(mat):
    """Determinant of a dense square integer matrix by Bareiss elimination."""
    cdef Py_ssize_t n = len(mat)
    if n == 0:
        return 1
    cdef list m = [list(row) for row in mat]
    cdef Py_ssize_t i, j, k
    cdef int sign = 1
    cdef list row, prow
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        prow = m[k]
        for i in range(k + 1, n):
            row = m[i]
            mik = row[k]
            for j in range(k + 1, n):
                row[j] = (pk * row[j] - mik * prow[j]) // prev
            row[k] = 0
        prev = pk
    if sign == 1:
        return m[n - 1][n - 1]
    return -m[n - 1][n - 1]
