"""Exact rational matrices and the kernel/image/solve primitives.

Matrices are numpy object arrays of :class:`fractions.Fraction`. All
elimination is delegated to a fraction-free integer kernel: the compiled
``_elim`` extension when it is importable, otherwise ``_elim_py``. Set
``SUPERDECOMP_PURE=1`` to force the pure-Python kernel.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

import numpy as np

if os.environ.get("SUPERDECOMP_PURE"):
    from superdecomp import _elim_py as _kernel

    BACKEND = "python"
else:
    try:
        from superdecomp import _elim as _kernel

        BACKEND = "cython"
    except ImportError:  # extension not built
        from superdecomp import _elim_py as _kernel

        BACKEND = "python"

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like ``"3/2"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point input is not accepted")
    return Fraction(x)


def fstr(x) -> str:
    """Canonical ``num/den`` string (denominator always written)."""
    x = frac(x)
    return f"{x.numerator}/{x.denominator}"


def zeros(m: int, n: int | None = None) -> np.ndarray:
    if n is None:
        n = m
    a = np.empty((m, n), dtype=object)
    a.fill(ZERO)
    return a


def eye(n: int) -> np.ndarray:
    a = zeros(n)
    for i in range(n):
        a[i, i] = ONE
    return a


def matrix(rows) -> np.ndarray:
    """Build an object matrix of Fractions from nested sequences."""
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = zeros(m, n)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError("ragged matrix")
        for j, v in enumerate(r):
            a[i, j] = frac(v)
    return a


def vector(vals) -> np.ndarray:
    v = np.empty(len(vals), dtype=object)
    for i, x in enumerate(vals):
        v[i] = frac(x)
    return v


def is_zero(a: np.ndarray) -> bool:
    return not any(x != 0 for x in a.flat)


def block_diag(*blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    m = sum(b.shape[1] for b in blocks)
    out = zeros(n, m)
    i = j = 0
    for b in blocks:
        out[i : i + b.shape[0], j : j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


# --------------------------------------------------------------------------
# sparse integer rows


def int_row(vals) -> dict:
    """Scale a sparse row (``dict`` col -> rational, or a dense sequence) to
    an integer row with the same row space."""
    if not isinstance(vals, dict):
        vals = {j: v for j, v in enumerate(vals) if v != 0}
    if not vals:
        return {}
    den = 1
    for v in vals.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        if d != 1:
            den = lcm(den, d)
    if den == 1:
        return {k: int(v) for k, v in vals.items() if v}
    return {k: int(v * den) for k, v in vals.items() if v}


def echelon_rows(rows, full=True):
    """Echelonize sparse rows; rows may hold Fractions or ints."""
    return _kernel.echelon((int_row(r) for r in rows), full)


def rank_rows(rows) -> int:
    pivots, _ = _kernel.echelon((int_row(r) for r in rows), False)
    return len(pivots)


def kernel_rows(rows, ncols: int) -> list[dict]:
    """Null space of the sparse system; returns sparse Fraction vectors."""
    pivots, _ = echelon_rows(rows, True)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    # column -> list of (pivot col, coefficient) for quick assembly
    by_col: dict[int, list] = {}
    for p, row in pivots.items():
        lead = row[p]
        for c, v in row.items():
            if c != p:
                by_col.setdefault(c, []).append((p, Fraction(-v, lead)))
    for f in free:
        vec = {f: ONE}
        for p, coeff in by_col.get(f, ()):
            vec[p] = coeff
        basis.append(vec)
    return basis


# --------------------------------------------------------------------------
# dense wrappers


def _rows_of(a: np.ndarray):
    for i in range(a.shape[0]):
        yield {j: x for j, x in enumerate(a[i]) if x != 0}


def rank(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return rank_rows(_rows_of(a))


def kernel_basis(a: np.ndarray) -> list[np.ndarray]:
    """Exact basis of ``{x : a @ x = 0}`` as dense vectors."""
    n = a.shape[1]
    out = []
    for vec in kernel_rows(_rows_of(a), n):
        v = np.empty(n, dtype=object)
        v.fill(ZERO)
        for k, x in vec.items():
            v[k] = x
        out.append(v)
    return out


def pivot_columns(a: np.ndarray) -> list[int]:
    if a.size == 0:
        return []
    pivots, _ = echelon_rows(_rows_of(a), False)
    return sorted(pivots)


def image_basis(a: np.ndarray) -> list[np.ndarray]:
    """Columns of ``a`` forming a basis of its column space."""
    return [a[:, j].copy() for j in pivot_columns(a)]


def columns(vectors, n: int | None = None) -> np.ndarray:
    """Stack vectors as the columns of a matrix."""
    vectors = list(vectors)
    if not vectors:
        return zeros(n or 0, 0)
    m = zeros(len(vectors[0]), len(vectors))
    for j, v in enumerate(vectors):
        m[:, j] = v
    return m


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x = b`` (``b`` a matrix), or ``None``."""
    m, n = a.shape
    k = b.shape[1]
    aug = np.concatenate([a, b], axis=1)
    pivots, _ = echelon_rows(_rows_of(aug), True)
    if any(p >= n for p in pivots):
        return None
    x = zeros(n, k)
    for p, row in pivots.items():
        lead = row[p]
        for c, v in row.items():
            if c >= n:
                x[p, c - n] = Fraction(v, lead)
    return x


def inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    x = solve(a, eye(n))
    if x is None or rank(a) != n:
        raise ValueError("matrix is singular")
    return x


def coordinates(basis_cols: np.ndarray, v: np.ndarray) -> np.ndarray | None:
    """Coordinates of ``v`` in the column basis, or ``None`` if outside."""
    x = solve(basis_cols, v.reshape(-1, 1))
    return None if x is None else x[:, 0]


def det(a: np.ndarray) -> Fraction:
    """Exact determinant by Gaussian elimination over Fractions."""
    m = a.copy()
    n = m.shape[0]
    d = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if m[r, c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            m[[c, p]] = m[[p, c]]
            d = -d
        d *= m[c, c]
        inv = 1 / m[c, c]
        for r in range(c + 1, n):
            if m[r, c] != 0:
                f = m[r, c] * inv
                m[r, c:] = m[r, c:] - f * m[c, c:]
    return d


def min_poly(a: np.ndarray) -> list[Fraction]:
    """Monic minimal polynomial, coefficients from the constant term up."""
    n = a.shape[0]
    powers = [eye(n).reshape(-1)]
    cur = eye(n)
    while True:
        cur = cur @ a
        flat = cur.reshape(-1)
        basis = columns(powers)
        x = coordinates(basis, flat)
        if x is not None:
            return [-c for c in x] + [ONE]
        powers.append(flat)


def poly_eval(coeffs, a: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial (constant term first) at a square matrix."""
    n = a.shape[0]
    out = zeros(n)
    for c in reversed(coeffs):
        out = out @ a
        if c:
            for i in range(n):
                out[i, i] += c
    return out


# --------------------------------------------------------------------------
# integer-scaled products (fast exact equality checks)

_I64_SAFE = 1 << 62


def to_int(a: np.ndarray):
    """Return ``(M, d)`` with ``a = M / d``; M is int64 when small enough."""
    den = 1
    for x in a.flat:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    big = max((abs(x.numerator) * (den // x.denominator) for x in a.flat), default=0)
    m = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        m[idx] = x.numerator * (den // x.denominator)
    if big < (1 << 30):
        m = m.astype(np.int64)
    return m, den, big


def int_matmul(a, b, bound_a: int, bound_b: int):
    """Exact product of integer arrays, promoting to Python ints on overflow risk."""
    inner = a.shape[1] if a.ndim == 2 else 1
    if (
        a.dtype == np.int64
        and b.dtype == np.int64
        and bound_a * bound_b * max(inner, 1) < _I64_SAFE
    ):
        return a @ b
    return a.astype(object) @ b.astype(object)


def from_int(m: np.ndarray, den: int) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        out[idx] = Fraction(int(x), den)
    return out
