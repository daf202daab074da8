# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free sparse row reduction.

Same contract as ``superdecomp._elim_py``; entries stay Python ints so no
precision is ever lost.
"""

from heapq import heapify, heappop, heappush
from math import gcd


cpdef dict normalize(dict row):
    cdef object g = 0
    cdef object v
    if not row:
        return row
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        for k in row:
            row[k] = row[k] // g
    return row


cdef inline void _axpy(dict row, dict prow, object ma, object mb):
    cdef object k, v, nv
    if ma != 1:
        for k in row:
            row[k] = row[k] * ma
    for k, v in prow.items():
        nv = row.get(k, 0) - mb * v
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)


cpdef dict reduce_row(dict row, dict pivots):
    cdef list heap = [c for c in row if c in pivots]
    cdef Py_ssize_t c, last = -1, k
    cdef object a, b, g, ma, mb, v, nv
    cdef dict prow
    heapify(heap)
    while heap:
        c = heappop(heap)
        if c == last:
            continue
        last = c
        a = row.get(c)
        if not a:
            continue
        prow = pivots[c]
        b = prow[c]
        g = gcd(a, b)
        ma = b // g
        mb = a // g
        if ma != 1:
            for k in row:
                row[k] = row[k] * ma
        for k, v in prow.items():
            nv = row.get(k, 0) - mb * v
            if nv:
                if k not in row and k > c and k in pivots:
                    heappush(heap, k)
                row[k] = nv
            else:
                row.pop(k, None)
    return normalize(row)


def echelon(rows, bint full=True):
    cdef dict pivots = {}
    cdef list order = []
    cdef dict row, prow
    cdef object a, b, g
    cdef Py_ssize_t c, k
    for r in rows:
        if not r:
            continue
        row = reduce_row(dict(r), pivots)
        if row:
            c = min(row)
            pivots[c] = row
            order.append(c)
    if full:
        for c in sorted(pivots, reverse=True):
            row = pivots[c]
            hits = sorted([k for k in row if k != c and k in pivots])
            if not hits:
                continue
            for k in hits:
                a = row.get(k)
                if not a:
                    continue
                prow = pivots[k]
                b = prow[k]
                g = gcd(a, b)
                _axpy(row, prow, b // g, a // g)
            normalize(row)
    return pivots, order
