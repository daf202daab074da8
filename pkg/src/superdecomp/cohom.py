"""Chevalley-Eilenberg cohomology in degrees 0..2 and Ext^1 between modules.

A k-cochain is stored by its values on sorted index tuples ``(i_1 <= ... <= i_k)``;
repeated indices are allowed only for odd basis elements (super-alternating
cochains are symmetric in odd arguments). For a cochain of parity ``gamma``::

    dc(x_0..x_k) = sum_i (-1)^{i + p_i (gamma + p_0 + .. + p_{i-1})} x_i . c(.. ^x_i ..)
                 + sum_{i<j} (-1)^{i + j + p_i s_i + p_j s_j + p_i p_j} c([x_i, x_j], .. ^x_i .. ^x_j ..)

with ``s_i = p_0 + .. + p_{i-1}``. For ``k = 0`` this is ``(-1)^{p(x) gamma} x.m``.

Every even element that acts diagonally on g and on M acts trivially on
cohomology, so the complex is cut down to its weight-zero part for such
a torus whenever one is available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from superdecomp import linalg
from superdecomp.algebras import LieSuperAlgebra
from superdecomp.linalg import ZERO
from superdecomp.repcore import (
    Representation,
    extension_from_cocycle,
    hom,
    hom_vec_to_matrix,
)
from superdecomp.superlinalg import EVEN, ODD, Format, homogeneous_kernel


class CohomologyError(ValueError):
    pass


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def cochain_tuples(g: LieSuperAlgebra, k: int) -> list[tuple]:
    """Sorted argument tuples indexing super-alternating k-cochains."""
    out = []
    for t in combinations_with_replacement(range(g.dim), k):
        if any(t[a] == t[a + 1] and g.parities[t[a]] == EVEN for a in range(k - 1)):
            continue
        out.append(t)
    return out


def super_exterior_square_dim(g: LieSuperAlgebra) -> int:
    return len(cochain_tuples(g, 2))


def sort_args(g: LieSuperAlgebra, args):
    """``(sign, sorted tuple)`` for ``c(args) = sign * c(sorted)``; sign 0 if forced zero."""
    a = list(args)
    sign = 1
    n = len(a)
    for i in range(n):
        for j in range(n - 1 - i):
            x, y = a[j], a[j + 1]
            if x > y:
                a[j], a[j + 1] = y, x
                if not (g.parities[x] and g.parities[y]):
                    sign = -sign
    for j in range(n - 1):
        if a[j] == a[j + 1] and g.parities[a[j]] == EVEN:
            return 0, None
    return sign, tuple(a)


# --------------------------------------------------------------------------
# torus weights


def diagonal_torus(g: LieSuperAlgebra) -> list[int]:
    """Even basis elements with diagonal, pairwise commuting adjoint action."""
    cand = []
    for i in range(g.dim):
        if g.parities[i] != EVEN:
            continue
        ok = True
        for j in range(g.dim):
            br = g.bracket(i, j)
            if any(k != j for k, c in br.items() if c != 0):
                ok = False
                break
        if ok:
            cand.append(i)
    return cand


def _ad_weight(g: LieSuperAlgebra, t: int, j: int) -> Fraction:
    return g.bracket(t, j).get(j, ZERO)


def _is_diagonal(m: np.ndarray) -> bool:
    n = m.shape[0]
    return all(m[i, j] == 0 for i in range(n) for j in range(n) if i != j)


def weight_basis(v: Representation, torus) -> tuple[np.ndarray, Format, list[int]]:
    """Homogeneous joint eigenbasis for the torus elements that act semisimply
    with rational eigenvalues. Returns ``(P, format, kept torus)``."""
    from superdecomp.decomp import _poly_factors

    blocks = [(linalg.eye(v.dim), v.format)]
    kept = []
    for t in torus:
        rho = v.matrices[t]
        new_blocks = []
        good = True
        for basis, fmt in blocks:
            if basis.shape[1] == 0:
                continue
            a = linalg.solve(basis, rho @ basis)
            facs = _poly_factors(linalg.min_poly(a))
            if any(len(f) != 2 or m != 1 for f, m in facs):
                good = False
                break
            for f, _ in facs:
                lam = -f[0] / f[1]
                shifted = a - linalg.eye(a.shape[0]) * lam
                vecs, sub_fmt = homogeneous_kernel(shifted, fmt)
                new_blocks.append((basis @ linalg.columns(vecs, a.shape[0]), sub_fmt))
        if good:
            blocks = new_blocks
            kept.append(t)
    cols = [b for b, _ in blocks if b.shape[1]]
    p = np.concatenate(cols, axis=1)
    fmt = Format(sum((tuple(f) for b, f in blocks if b.shape[1]), ()))
    return p, fmt, kept


def to_weight_basis(v: Representation, torus=None):
    """``(conjugated module, P, kept torus)`` with torus matrices diagonal."""
    torus = diagonal_torus(v.algebra) if torus is None else list(torus)
    p, fmt, kept = weight_basis(v, torus)
    return v.conjugate(p, fmt), p, kept


# --------------------------------------------------------------------------
# the window


@dataclass
class CochainComplexWindow:
    algebra: LieSuperAlgebra
    module: Representation
    torus: list
    keys: dict = field(default_factory=dict)  # k -> list of (tuple, r)
    index: dict = field(default_factory=dict)  # k -> {(tuple, r): position}
    parity: dict = field(default_factory=dict)  # k -> list of parities
    d: dict = field(default_factory=dict)  # k -> rows {row: {col: Fraction}} for d^k

    def dim(self, k: int) -> int:
        return len(self.keys[k])

    def dim_split(self, k: int) -> tuple[int, int]:
        odd = sum(self.parity[k])
        return self.dim(k) - odd, odd

    def full_dim(self, k: int) -> int:
        """Dimension of the unreduced cochain space."""
        return len(cochain_tuples(self.algebra, k)) * self.module.dim

    def matrix(self, k: int) -> np.ndarray:
        out = linalg.zeros(self.dim(k + 1), self.dim(k))
        for r, row in self.d[k].items():
            for c, x in row.items():
                out[r, c] = x
        return out

    def rank_split(self, k: int) -> tuple[int, int]:
        if k < 0 or k not in self.d:
            return 0, 0
        res = []
        for par in (EVEN, ODD):
            rows = [row for r, row in self.d[k].items() if self.parity[k + 1][r] == par and row]
            res.append(linalg.rank_rows(rows))
        return tuple(res)

    def cohomology(self, k: int) -> tuple[int, int]:
        if k not in self.d:
            raise CohomologyError(f"degree {k} outside the window")
        ce = self.dim_split(k)
        rk = self.rank_split(k)
        rprev = self.rank_split(k - 1)
        return tuple(ce[i] - rk[i] - rprev[i] for i in range(2))

    def cocycles(self, k: int) -> list[dict]:
        """Sparse basis of ker d^k."""
        rows = [row for row in self.d[k].values() if row]
        return linalg.kernel_rows(rows, self.dim(k))

    def coboundaries(self, k: int) -> list[dict]:
        if k == 0:
            return []
        return list(_transpose(self.d[k - 1]).values())

    def cohomology_basis(self, k: int) -> list[tuple[int, dict]]:
        """Cocycles whose classes form a basis of H^k, as (parity, vector)."""
        pivots: dict = {}

        def add(vec) -> bool:
            row = linalg.int_row(vec)
            if not row:
                return False
            row = linalg._kernel.reduce_row(row, pivots)
            if not row:
                return False
            pivots[min(row)] = row
            return True

        for b in self.coboundaries(k):
            add(b)
        out = []
        for z in self.cocycles(k):
            if add(z):
                par = self.parity[k][next(iter(z))]
                out.append((par, z))
        return out

    def check_dd(self) -> bool:
        """``d^{k+1} d^k = 0`` for every consecutive pair in the window."""
        for k in sorted(self.d):
            if k + 1 not in self.d:
                continue
            cols = _transpose(self.d[k])
            second = _transpose(self.d[k + 1])
            for col in cols.values():
                out: dict = {}
                for mid, x in col.items():
                    for r2, y in second.get(mid, {}).items():
                        out[r2] = out.get(r2, ZERO) + x * y
                if any(v != 0 for v in out.values()):
                    return False
        return True

    def to_json(self, k: int) -> dict:
        e, o = self.cohomology(k)
        return {"k": k, "dim_even": e, "dim_odd": o}


def _transpose(rows: dict) -> dict:
    cols: dict = {}
    for r, row in rows.items():
        for c, x in row.items():
            cols.setdefault(c, {})[r] = x
    return cols


def build_window(g: LieSuperAlgebra, m: Representation, torus="auto", max_degree: int = 2,
                 self_test: bool = True) -> CochainComplexWindow:
    if m.algebra is not g and m.algebra.dim != g.dim:
        raise CohomologyError("module over a different algebra")
    if torus == "auto":
        torus = diagonal_torus(g)
    torus = [t for t in (torus or []) if _is_diagonal(m.matrices[t])]
    mweights = [tuple(m.matrices[t][r, r] for t in torus) for r in range(m.dim)]
    gweights = [tuple(_ad_weight(g, t, j) for t in torus) for j in range(g.dim)]

    def weight(tup, r):
        return tuple(mweights[r][a] - sum((gweights[j][a] for j in tup), ZERO) for a in range(len(torus)))

    zero = tuple(ZERO for _ in torus)
    w = CochainComplexWindow(g, m, torus)
    for k in range(max_degree + 2):
        keys = [(t, r) for t in cochain_tuples(g, k) for r in range(m.dim) if weight(t, r) == zero]
        w.keys[k] = keys
        w.index[k] = {key: i for i, key in enumerate(keys)}
        w.parity[k] = [(sum(g.parities[j] for j in t) + m.format[r]) % 2 for t, r in keys]
    for k in range(max_degree + 1):
        w.d[k] = _differential(g, m, w, k)
    if self_test and not w.check_dd():
        raise CohomologyError("d o d != 0: sign convention broken")
    return w


def _differential(g, m, w: CochainComplexWindow, k: int) -> dict:
    p = g.parities
    src_index = w.index[k]
    rows_nz = []
    for mat in m.matrices:
        nz: dict = {}
        for (a, b), x in np.ndenumerate(mat):
            if x != 0:
                nz.setdefault(a, []).append((b, x))
        rows_nz.append(nz)
    rows: dict = {}
    for ridx, (s, r_out) in enumerate(w.keys[k + 1]):
        row: dict = {}
        prefix = [0]
        for x in s:
            prefix.append(prefix[-1] + p[x])
        # action terms
        for i, xi in enumerate(s):
            rest = s[:i] + s[i + 1 :]
            # x_i . c(rest): contributions from every r with rho(x_i)[r_out, r] != 0
            for r, coef in rows_nz[xi].get(r_out, ()):
                col = src_index.get((rest, r))
                if col is None:
                    continue
                gamma = (sum(p[j] for j in rest) + m.format[r]) % 2
                sign = _sgn(i + p[xi] * (gamma + prefix[i]))
                row[col] = row.get(col, ZERO) + sign * coef
        # bracket terms
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                xi, xj = s[i], s[j]
                br = g.bracket(xi, xj)
                if not br:
                    continue
                sign0 = _sgn(i + j + p[xi] * prefix[i] + p[xj] * prefix[j] + p[xi] * p[xj])
                rest = s[:i] + s[i + 1 : j] + s[j + 1 :]
                for l, c in br.items():
                    if c == 0:
                        continue
                    sg, tup = sort_args(g, (l,) + rest)
                    if not sg:
                        continue
                    col = src_index.get((tup, r_out))
                    if col is None:
                        continue
                    row[col] = row.get(col, ZERO) + sign0 * sg * c
        row = {c: x for c, x in row.items() if x != 0}
        if row:
            rows[ridx] = row
    return rows


def cohomology_dims(g: LieSuperAlgebra, m: Representation, k: int, torus="auto") -> tuple[int, int]:
    if k not in (0, 1, 2):
        raise CohomologyError("degree must be 0, 1 or 2")
    return build_window(g, m, torus, max_degree=max(k, 1)).cohomology(k)


def euler_ledger(w: CochainComplexWindow) -> bool:
    """Rank-nullity bookkeeping: dim C^k = dim H^k + rank d^k + rank d^{k-1}."""
    for k in sorted(w.d):
        for par in (0, 1):
            lhs = w.dim_split(k)[par]
            rhs = w.cohomology(k)[par] + w.rank_split(k)[par] + w.rank_split(k - 1)[par]
            if lhs != rhs:
                return False
    return True


# --------------------------------------------------------------------------
# Ext^1


@dataclass
class Ext1Result:
    dim_even: int
    dim_odd: int
    cocycles: list  # (parity, [dim V x dim W matrices per basis element])
    v: Representation
    w: Representation

    @property
    def dim(self) -> int:
        return self.dim_even + self.dim_odd

    def extension(self, index: int) -> Representation:
        par, c = self.cocycles[index]
        return extension_for(self.v, self.w, c, par)

    def to_json(self) -> dict:
        return {"dim": self.dim, "dim_even": self.dim_even, "dim_odd": self.dim_odd}


def extension_for(v: Representation, w: Representation, c, parity: int) -> Representation:
    """Extension ``0 -> V' -> E -> W -> 0`` for a cocycle of the given parity.

    For an odd cocycle V' is the parity change of V, written with
    ``(-1)^{p(x)} rho_V(x)`` so that the cocycle matrices can be used as is.
    """
    if parity == EVEN:
        return extension_from_cocycle(v, w, c)
    g = v.algebra
    mats = [v.matrices[i] * _sgn(g.parities[i]) for i in range(g.dim)]
    vp = Representation(g, v.format.flipped(), mats, f"Pi({v.name})")
    return extension_from_cocycle(vp, w, c)


def ext1(v: Representation, w: Representation, torus="auto", with_cocycles: bool = True) -> Ext1Result:
    """``Ext^1(W, V)`` (extensions with V as the submodule), computed as
    ``H^1(g; Hom(W, V))``; cocycles are returned in the original bases."""
    g = v.algebra
    tor = diagonal_torus(g) if torus == "auto" else list(torus or [])
    v2, pv, kv = to_weight_basis(v, tor)
    w2, pw, kw = to_weight_basis(w, tor)
    kept = [t for t in tor if t in kv and t in kw]
    m = hom(w2, v2)
    win = build_window(g, m, kept, max_degree=1)
    de, do = win.cohomology(1)
    cocycles = []
    if with_cocycles:
        pw_inv = linalg.inverse(pw)
        for par, vec in win.cohomology_basis(1):
            mats = [linalg.zeros(v.dim, w.dim) for _ in range(g.dim)]
            per_x: dict = {}
            for col, x in vec.items():
                (tup, r) = win.keys[1][col]
                per_x.setdefault(tup[0], {})[r] = x
            for xi, entries in per_x.items():
                flat = [entries.get(r, ZERO) for r in range(m.dim)]
                t = hom_vec_to_matrix(flat, w.dim, v.dim)
                mats[xi] = pv @ t @ pw_inv
            cocycles.append((par, mats))
    return Ext1Result(de, do, cocycles, v, w)


def end_cohomology(v: Representation, k: int = 1, torus="auto") -> tuple[int, int]:
    """``H^k(g; End V)`` split by parity."""
    g = v.algebra
    tor = diagonal_torus(g) if torus == "auto" else list(torus or [])
    v2, _, kept = to_weight_basis(v, tor)
    return build_window(g, hom(v2, v2), kept, max_degree=max(k, 1)).cohomology(k)
