"""Fraction-free sparse row reduction over the integers (pure-Python kernel).

Rows are ``dict`` objects mapping a column index to a nonzero ``int``.
Every stored row is primitive (content 1) with a positive leading entry.
The compiled kernel in ``_elim.pyx`` implements the same three functions.
"""

from heapq import heapify, heappop, heappush
from math import gcd


def normalize(row):
    """Divide ``row`` in place by its content; make the leading entry positive."""
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        for k in row:
            row[k] //= g
    return row


def reduce_row(row, pivots):
    """Eliminate from ``row`` every column that carries a pivot.

    ``pivots`` maps a pivot column to its stored row. The row is modified in
    place and returned normalized; the result may be empty.
    """
    heap = [c for c in row if c in pivots]
    heapify(heap)
    last = -1
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
                row[k] *= ma
        for k, v in prow.items():
            nv = row.get(k, 0) - mb * v
            if nv:
                if k not in row and k in pivots and k > c:
                    heappush(heap, k)
                row[k] = nv
            else:
                row.pop(k, None)
    return normalize(row)


def echelon(rows, full=True):
    """Row-reduce an iterable of sparse integer rows.

    Returns ``(pivots, order)``: ``pivots`` maps each pivot column to its row
    and ``order`` lists pivot columns in insertion order. With ``full`` the
    rows are back-substituted so no pivot row holds another pivot column.
    Input rows are copied, never mutated.
    """
    pivots = {}
    order = []
    for r in rows:
        if not r:
            continue
        row = reduce_row(dict(r), pivots)
        if row:
            c = min(row)
            pivots[c] = row
            order.append(c)
    if full:
        cols = sorted(pivots, reverse=True)
        for c in cols:
            row = pivots[c]
            hits = [k for k in row if k != c and k in pivots]
            if not hits:
                continue
            for k in sorted(hits):
                a = row.get(k)
                if not a:
                    continue
                prow = pivots[k]
                b = prow[k]
                g = gcd(a, b)
                ma = b // g
                mb = a // g
                if ma != 1:
                    for j in row:
                        row[j] *= ma
                for j, v in prow.items():
                    nv = row.get(j, 0) - mb * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            normalize(row)
    return pivots, order
