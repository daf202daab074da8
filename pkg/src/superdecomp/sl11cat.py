"""Finite-dimensional indecomposable sl(1|1)-modules and their labels.

sl(1|1) has basis ``X+, X-, E`` with ``[X+, X-] = E`` central. On modules
where E vanishes, ``a = rho(X+)`` and ``b = rho(X-)`` make V a module over the
Grassmann algebra on two generators.

Label strings::

    Vh(3/1,2)            V^hbar(n) with hbar = 3, n = 2
    I(3+2e,out)          string module, first letter a, first edge leaving node 1
    I(2+2e,out,b)        even-length string whose end letters are b
    II(1;2+0e,out;5/1)   band with one source/sink pair, node 2|0, Jordan value 5
    free(2)[0]           regular module of the Grassmann algebra on 2 generators
    trivial              the 1|0 trivial module

A ``Pi.`` prefix marks the parity-changed module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from superdecomp import linalg
from superdecomp.algebras import sl11
from superdecomp.decomp import (
    DecompositionError,
    are_isomorphic,
    decompose,
)
from superdecomp.grassmann import merge_sign, monomials
from superdecomp.linalg import ONE, ZERO, frac, fstr
from superdecomp.repcore import Representation, pi
from superdecomp.superlinalg import EVEN, ODD, Format

XP, XM, E = 0, 1, 2

_SL11 = None


def algebra():
    global _SL11
    if _SL11 is None:
        _SL11 = sl11()
    return _SL11


class CatalogError(ValueError):
    pass


def _rep(fmt, a, b, e=None, name="") -> Representation:
    n = len(Format(fmt))
    return Representation(algebra(), fmt, [a, b, linalg.zeros(n) if e is None else e], name)


def jordan(n: int, lam) -> np.ndarray:
    lam = frac(lam)
    m = linalg.zeros(n)
    for i in range(n):
        m[i, i] = lam
        if i + 1 < n:
            m[i, i + 1] = ONE
    return m


# --------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class CatalogLabel:
    kind: str  # Vhbar_n, typeI, typeII, free, trivial
    params: tuple = ()
    pi: bool = False

    def __str__(self):
        return ("Pi." if self.pi else "") + _label_body(self)

    @classmethod
    def parse(cls, text: str) -> "CatalogLabel":
        return parse_label(text)


def _mu_str(mu):
    return "inf" if mu == "inf" else fstr(mu)


def _label_body(lab: CatalogLabel) -> str:
    k, p = lab.kind, lab.params
    if k == "Vhbar_n":
        return f"Vh({fstr(p[0])},{p[1]})"
    if k == "typeI":
        pp, qq, d = p[0], p[1], p[2]
        tail = f",{p[3]}" if len(p) > 3 and p[3] != "a" else ""
        return f"I({pp}+{qq}e,{d}{tail})"
    if k == "typeII":
        pp, m, n, d, mu = p
        return f"II({pp};{m}+{n}e,{d};{_mu_str(mu)})"
    if k == "free":
        return f"free({p[0]})[{p[1]}]"
    if k == "trivial":
        return "trivial"
    raise CatalogError(f"unknown label kind {k}")


_RX = {
    "Vhbar_n": re.compile(r"Vh\(([-\d/]+),(\d+)\)"),
    "typeI": re.compile(r"I\((\d+)\+(\d+)e,(in|out)(?:,([ab]))?\)"),
    "typeII": re.compile(r"II\((\d+);(\d+)\+(\d+)e,(in|out);([-\d/]+|inf)\)"),
    "free": re.compile(r"free\((\d+)\)\[(-?\d+)\]"),
}


def parse_label(text: str) -> CatalogLabel:
    s = text.strip().replace(" ", "")
    flag = False
    while s.startswith("Pi."):
        flag = not flag
        s = s[3:]
    if s == "trivial":
        return CatalogLabel("trivial", (), flag)
    m = _RX["Vhbar_n"].fullmatch(s)
    if m:
        return CatalogLabel("Vhbar_n", (frac(m.group(1)), int(m.group(2))), flag)
    m = _RX["typeII"].fullmatch(s)
    if m:
        mu = m.group(5)
        mu = "inf" if mu == "inf" else frac(mu)
        return CatalogLabel(
            "typeII", (int(m.group(1)), int(m.group(2)), int(m.group(3)), m.group(4), mu), flag
        )
    m = _RX["typeI"].fullmatch(s)
    if m:
        letter = m.group(4) or "a"
        params = (int(m.group(1)), int(m.group(2)), m.group(3))
        if letter != "a":
            params = params + (letter,)
        return CatalogLabel("typeI", params, flag)
    m = _RX["free"].fullmatch(s)
    if m:
        return CatalogLabel("free", (int(m.group(1)), int(m.group(2)) % 2), flag)
    raise CatalogError(f"cannot parse label {text!r}")


# --------------------------------------------------------------------------
# Clifford part


def clifford_irreducible(hbar, pi_flag: bool = False) -> Representation:
    """``V^hbar`` (1|1, even highest vector) for hbar != 0, the trivial 1|0 module for 0."""
    hbar = frac(hbar)
    if hbar == 0:
        v = _rep("0", linalg.zeros(1), linalg.zeros(1), name="trivial")
    else:
        v = build_Vhbar_n(hbar, 1)
    return pi(v) if pi_flag else v


def build_Vhbar_n(hbar, n: int) -> Representation:
    """``X- = [[0,0],[1,0]]``, ``E = diag(J, J)``, ``X+ = [[0,J],[0,0]]`` with ``J = J_n(hbar)``."""
    hbar = frac(hbar)
    if hbar == 0:
        raise CatalogError("V^hbar(n) needs hbar != 0")
    if n < 1:
        raise CatalogError("n must be positive")
    j = jordan(n, hbar)
    z = linalg.zeros(n)
    xm = np.block([[z, z], [linalg.eye(n), z]])
    xp = np.block([[z, j], [z, z]])
    e = np.block([[j, z], [z, j]])
    fmt = Format.standard(n, n)
    return Representation(algebra(), fmt, [xp, xm, e], f"Vh({fstr(hbar)},{n})")


# --------------------------------------------------------------------------
# reduced Lambda(2)-modules


def _string(n_nodes: int, first_letter: str, first_dir: str, node1_parity: int):
    """String of 1-dimensional nodes, alternating letters and orientation."""
    fmt = Format((node1_parity + i) % 2 for i in range(n_nodes))
    a = linalg.zeros(n_nodes)
    b = linalg.zeros(n_nodes)
    other = "b" if first_letter == "a" else "a"
    for e in range(n_nodes - 1):
        letter = first_letter if e % 2 == 0 else other
        forward = (first_dir == "out") == (e % 2 == 0)
        src, dst = (e, e + 1) if forward else (e + 1, e)
        (a if letter == "a" else b)[dst, src] = ONE
    return fmt, a, b


def type_I_canonical(p: int, q: int, dir: str, letter: str = "a", pi_flag: bool = False) -> CatalogLabel:
    """Canonical label: p >= q, Pi flag otherwise; even strings never carry Pi."""
    if abs(p - q) > 1 or p + q < 1 or p < 0 or q < 0:
        raise CatalogError("type I needs q in {p-1, p, p+1} and p+q >= 1")
    if dir not in ("in", "out"):
        raise CatalogError("dir must be 'in' or 'out'")
    if p < q:
        p, q, pi_flag = q, p, not pi_flag
    if p + q == 1:
        return CatalogLabel("trivial", (), pi_flag)
    if p == q:
        # Pi of an even string is the same string read from the other end
        if pi_flag:
            dir = "in" if dir == "out" else "out"
        params = (p, q, dir) if letter == "a" else (p, q, dir, letter)
        return CatalogLabel("typeI", params, False)
    if letter != "a":
        raise CatalogError("odd-length strings are normalized to start with a")
    return CatalogLabel("typeI", (p, q, dir), pi_flag)


def build_typeI(p: int, q: int, dir: str = "out", letter: str = "a") -> Representation:
    """``V(p+q e; dir)``: p + q one-dimensional nodes, node 1 even when p >= q.

    For p = q the string is read from the end whose first edge is ``dir``
    relative to node 1, and ``letter`` names the letter on the end edges.
    """
    if abs(p - q) > 1 or p + q < 1 or p < 0 or q < 0:
        raise CatalogError("type I needs q in {p-1, p, p+1} and p+q >= 1")
    if dir not in ("in", "out"):
        raise CatalogError("dir must be 'in' or 'out'")
    if letter not in ("a", "b"):
        raise CatalogError("letter must be 'a' or 'b'")
    if p != q and letter != "a":
        raise CatalogError("odd-length strings start with a")
    node1 = EVEN if p >= q else ODD
    fmt, a, b = _string(p + q, letter, dir, node1)
    return _rep(fmt, a, b, name=str(type_I_canonical(p, q, dir, letter)))


def build_typeII(p: int, m: int, n: int, dir: str = "out", mu=0) -> Representation:
    """``V(p; m+n e; dir; mu)``: 2p nodes of sdim m|n (alternately Pi of it).

    Arrows ``a: n_{2i-1} -> n_{2i}`` and ``b: n_{2i+1} -> n_{2i}`` are identities;
    the closing ``b: n_1 -> n_{2p}`` is ``J_m(mu) + J_n(mu)``. ``mu = "inf"``
    moves a nilpotent cell onto the first a-arrow and makes the closing map
    the identity. ``dir = "in"`` reverses every arrow.
    """
    if p < 1 or m < 0 or n < 0 or m + n == 0:
        raise CatalogError("type II needs p >= 1 and (m, n) != (0, 0)")
    if dir not in ("in", "out"):
        raise CatalogError("dir must be 'in' or 'out'")
    d = m + n
    node_fmt = Format.standard(m, n)
    fmt = Format(sum((tuple(node_fmt if k % 2 == 0 else node_fmt.flipped()) for k in range(2 * p)), ()))
    size = 2 * p * d
    a = linalg.zeros(size)
    b = linalg.zeros(size)

    def put(mat, src, dst, block):
        mat[dst * d : (dst + 1) * d, src * d : (src + 1) * d] = block

    ident = linalg.eye(d)
    lam = 0 if mu == "inf" else frac(mu)
    if mu != "inf":
        mu = lam
    cell = linalg.block_diag(jordan(m, lam), jordan(n, lam)) if m and n else jordan(d, lam)
    for i in range(p):
        src, dst = 2 * i, 2 * i + 1
        blk = cell if (mu == "inf" and i == 0) else ident
        put(a, src, dst, blk)
    for i in range(1, p):
        put(b, 2 * i, 2 * i - 1, ident)
    put(b, 0, 2 * p - 1, ident if mu == "inf" else cell)
    if dir == "in":
        a = a.T.copy()
        b = b.T.copy()
    lab = CatalogLabel("typeII", (p, m, n, dir, mu))
    return _rep(fmt, a, b, name=str(lab))


def build_free_lambda(n: int, shifts=(0,)):
    """Sum of regular modules ``Lambda(n)[r]`` (shift r taken mod 2).

    Returns ``(format, operators)`` with operators the left multiplications by
    the generators.
    """
    if n < 1:
        raise CatalogError("n must be positive")
    monos = list(monomials(n))
    index = {s: i for i, s in enumerate(monos)}
    k = len(monos)
    ops = [linalg.zeros(k * len(shifts)) for _ in range(n)]
    fmt = []
    for blk, r in enumerate(shifts):
        off = blk * k
        for s in monos:
            fmt.append((len(s) + r) % 2)
        for i in range(1, n + 1):
            for s in monos:
                sign, t = merge_sign((i,), s)
                if sign:
                    ops[i - 1][off + index[t], off + index[s]] = Fraction(sign)
    return Format(fmt), ops


def free_module(shift: int = 0) -> Representation:
    """``Lambda(2)[r]`` as an sl(1|1)-module with ``X+ = xi_1``, ``X- = xi_2``, E = 0."""
    fmt, (a, b) = build_free_lambda(2, (shift,))
    return _rep(fmt, a, b, name=f"free(2)[{shift % 2}]")


def gl11_as_free() -> Representation:
    """sl(1|1) acting on gl(1|1) by the adjoint action."""
    from superdecomp.algebras import build_gl
    from superdecomp.superlinalg import supercommutator

    g = build_gl(Format.standard(1, 1))
    s = algebra()
    mats = []
    for x in s.realization:
        m = linalg.zeros(4)
        for j, y in enumerate(g.realization):
            z = supercommutator(x, y)
            for k, c in enumerate(z.entries.reshape(-1)):
                m[k, j] = c
        mats.append(m)
    return Representation(s, g.parities, mats, "gl(1|1)")


# --------------------------------------------------------------------------
# Lambda(n)-modules: free + reduced


@dataclass
class LambdaModule:
    format: Format
    ops: list

    @property
    def dim(self):
        return len(self.format)

    def theta(self) -> np.ndarray:
        t = linalg.eye(self.dim)
        for op in self.ops:
            t = t @ op
        return t

    def check(self) -> bool:
        n = len(self.ops)
        for i in range(n):
            for j in range(n):
                s = self.ops[i] @ self.ops[j] + self.ops[j] @ self.ops[i]
                if not linalg.is_zero(s):
                    return False
        return True


def lambda_module(v: Representation) -> LambdaModule:
    if not linalg.is_zero(v.matrices[E]):
        raise CatalogError("E acts nontrivially")
    return LambdaModule(v.format, [v.matrices[XP], v.matrices[XM]])


def free_reduced_split(mod: LambdaModule):
    """``V = F + V^rd`` with F free and Theta V^rd = 0.

    Returns ``(free_basis, free_shifts, reduced_basis)``: column matrices in
    V's coordinates and the shift of each free block.
    """
    if not mod.check():
        raise CatalogError("operators do not anticommute")
    n = len(mod.ops)
    theta = mod.theta()
    monos = list(monomials(n))
    free_cols, shifts, fmt_free = [], [], []
    # homogeneous basis of im Theta and homogeneous preimages
    for par in (EVEN, ODD):
        idx = [i for i in range(mod.dim) if mod.format[i] == par]
        if not idx:
            continue
        sub = theta[:, idx]
        for j in linalg.pivot_columns(sub):
            gen = linalg.zeros(mod.dim, 1)[:, 0]
            gen[idx[j]] = ONE
            shifts.append(par)
            for s in monos:
                vec = gen
                for i in reversed(s):
                    vec = mod.ops[i - 1] @ vec
                free_cols.append(vec)
                fmt_free.append((par + len(s)) % 2)
    k = len(free_cols)
    if k:
        fcols = linalg.columns(free_cols, mod.dim)
        if linalg.rank(fcols) != k:
            raise CatalogError("free part is not free")
    else:
        fcols = linalg.zeros(mod.dim, 0)
    reduced = _lambda_complement(mod, fcols, Format(fmt_free))
    return fcols, shifts, reduced


def _lambda_complement(mod: LambdaModule, fcols, ffmt):
    """Kernel of an even Lambda-linear retraction onto the free submodule."""
    dim = mod.dim
    k = fcols.shape[1]
    if k == 0:
        return linalg.eye(dim), mod.format
    # action on F in the basis fcols
    f_ops = [linalg.solve(fcols, op @ fcols) for op in mod.ops]
    # unknown pi (k x dim), even: pi[r, c] allowed when ffmt[r] == format[c]
    unknown = {}
    for r in range(k):
        for c in range(dim):
            if ffmt[r] == mod.format[c]:
                unknown[(r, c)] = len(unknown)
    rows, rhs = [], []
    # pi op - f_op pi = 0
    for op, fo in zip(mod.ops, f_ops):
        for r in range(k):
            for c in range(dim):
                eq = {}
                for l in range(dim):
                    if op[l, c] != 0 and (r, l) in unknown:
                        u = unknown[(r, l)]
                        eq[u] = eq.get(u, ZERO) + op[l, c]
                for l in range(k):
                    if fo[r, l] != 0 and (l, c) in unknown:
                        u = unknown[(l, c)]
                        eq[u] = eq.get(u, ZERO) - fo[r, l]
                eq = {u: x for u, x in eq.items() if x != 0}
                if eq:
                    rows.append(eq)
                    rhs.append(ZERO)
    # pi fcols = identity
    for r in range(k):
        for l in range(k):
            eq = {}
            for c in range(dim):
                if fcols[c, l] != 0 and (r, c) in unknown:
                    u = unknown[(r, c)]
                    eq[u] = eq.get(u, ZERO) + fcols[c, l]
            rows.append({u: x for u, x in eq.items() if x != 0})
            rhs.append(ONE if r == l else ZERO)
    nu = len(unknown)
    a = linalg.zeros(len(rows), nu)
    for i, eq in enumerate(rows):
        for u, x in eq.items():
            a[i, u] = x
    sol = linalg.solve(a, linalg.vector(rhs).reshape(-1, 1))
    if sol is None:
        raise CatalogError("free submodule has no Lambda-linear retraction")
    proj = linalg.zeros(k, dim)
    for (r, c), u in unknown.items():
        proj[r, c] = sol[u, 0]
    from superdecomp.superlinalg import homogeneous_kernel

    vecs, fmt = homogeneous_kernel(proj, mod.format)
    return linalg.columns(vecs, dim), fmt


# --------------------------------------------------------------------------
# identification


def build_from_label(label) -> Representation:
    lab = parse_label(label) if isinstance(label, str) else label
    k, p = lab.kind, lab.params
    if k == "Vhbar_n":
        v = build_Vhbar_n(p[0], p[1])
    elif k == "typeI":
        v = build_typeI(p[0], p[1], p[2], p[3] if len(p) > 3 else "a")
    elif k == "typeII":
        v = build_typeII(*p)
    elif k == "free":
        v = free_module(p[1])
    elif k == "trivial":
        v = clifford_irreducible(0)
    else:
        raise CatalogError(f"unknown kind {k}")
    if lab.pi:
        v = pi(v)
    v.name = str(lab)
    return v


def _single_eigenvalue(m: np.ndarray):
    """The unique eigenvalue of m if it is rational and unique, else raise."""
    from superdecomp.decomp import _poly_factors

    facs = _poly_factors(linalg.min_poly(m))
    if len(facs) != 1 or len(facs[0][0]) != 2:
        raise CatalogError("non-rational spectrum or several eigenvalues")
    c0, c1 = facs[0][0]
    return -c0 / c1


def _candidates(v: Representation):
    e_val = _single_eigenvalue(v.matrices[E])
    ev, od = v.sdim
    if e_val != 0:
        if ev != od:
            return []
        return [CatalogLabel("Vhbar_n", (e_val, ev), f) for f in (False, True)]
    if not linalg.is_zero(v.matrices[E]):
        raise CatalogError("E acts by a nonzero nilpotent: outside the catalog")
    mod = lambda_module(v)
    if not linalg.is_zero(mod.theta()):
        return [CatalogLabel("free", (2, r)) for r in (0, 1)]
    out = []
    n = ev + od
    if n == 1:
        return [CatalogLabel("trivial", (), od == 1)]
    if abs(ev - od) == 1:
        p, q = max(ev, od), min(ev, od)
        for d in ("out", "in"):
            out.append(CatalogLabel("typeI", (p, q, d), ev < od))
        return out
    if ev == od:
        k = ev
        for letter in ("a", "b"):
            for d in ("out", "in"):
                params = (k, k, d) if letter == "a" else (k, k, d, letter)
                out.append(CatalogLabel("typeI", params))
        mu = _band_mu(mod)
        if mu is not None:
            for f in (False, True):
                out.append(CatalogLabel("typeII", (1, k, 0, "out", mu), f))
    return out


def _band_mu(mod: LambdaModule):
    """Jordan value of a one-pair band, read off the maps V/T -> T, T = aV + bV."""
    a, b = mod.ops
    img = linalg.image_basis(np.concatenate([a, b], axis=1))
    if not img:
        return None
    t = linalg.columns(img)
    k = t.shape[1]
    # a complement S of T spanned by unit vectors
    s_idx = []
    cur = t
    for i in range(mod.dim):
        e = linalg.zeros(mod.dim, 1)
        e[i, 0] = ONE
        trial = np.concatenate([cur, e], axis=1)
        if linalg.rank(trial) == trial.shape[1]:
            cur = trial
            s_idx.append(i)
    s = linalg.zeros(mod.dim, len(s_idx))
    for j, i in enumerate(s_idx):
        s[i, j] = ONE
    if len(s_idx) != k:
        return None
    abar = linalg.solve(t, a @ s)
    bbar = linalg.solve(t, b @ s)
    if abar is None or bbar is None:
        return None
    if linalg.rank(abar) < k:
        return None
    try:
        return _single_eigenvalue(bbar @ linalg.inverse(abar))
    except CatalogError:
        return None


def canonical(label) -> CatalogLabel:
    """Normal form of a label (the one catalog_identify reports)."""
    lab = parse_label(label) if isinstance(label, str) else label
    if lab.kind == "typeI":
        p = lab.params
        letter = p[3] if len(p) > 3 else "a"
        return type_I_canonical(p[0], p[1], p[2], letter, lab.pi)
    if lab.kind == "typeII":
        pp, m, n, d, mu = lab.params
        if pp == 1 and m * n == 0 and mu not in ("inf", 0):
            flag = lab.pi
            if n:
                m, n, flag = n, 0, not flag
            if d == "in":
                flag = not flag
            return CatalogLabel("typeII", (1, m, 0, "out", mu), flag)
        return lab
    if lab.kind == "free":
        return CatalogLabel("free", (lab.params[0], (lab.params[1] + int(lab.pi)) % 2))
    return lab


def identify_indecomposable(v: Representation) -> CatalogLabel:
    for lab in _candidates(v):
        w = build_from_label(lab)
        if w.sdim == v.sdim and are_isomorphic(v, w)[0]:
            return canonical(lab)
    raise CatalogError(f"summand of sdim {v.sdim[0]}|{v.sdim[1]} is outside the catalog")


def catalog_identify(v: Representation, seed: int = 0) -> list[CatalogLabel]:
    """Decompose and label every indecomposable summand (sorted label strings)."""
    try:
        rep = decompose(v, seed, group=False)
    except DecompositionError as exc:
        raise CatalogError(f"non-rational spectrum: {exc}") from exc
    labels = [identify_indecomposable(b) for b in rep.blocks]
    return sorted(labels, key=str)


def catalog_items(max_dim: int = 6, hbars=(1, 2, Fraction(-1, 2)), mus=(5, -1, Fraction(1, 2))):
    """Canonical labels of indecomposables up to total dimension ``max_dim``."""
    out = []
    for h in hbars:
        for n in range(1, max_dim // 2 + 1):
            for f in (False, True):
                out.append(CatalogLabel("Vhbar_n", (frac(h), n), f))
    out.append(CatalogLabel("trivial", (), False))
    out.append(CatalogLabel("trivial", (), True))
    for total in range(2, max_dim + 1):
        if total % 2:
            p, q = (total + 1) // 2, total // 2
            for d in ("out", "in"):
                for f in (False, True):
                    out.append(CatalogLabel("typeI", (p, q, d), f))
        else:
            k = total // 2
            for letter in ("a", "b"):
                for d in ("out", "in"):
                    params = (k, k, d) if letter == "a" else (k, k, d, letter)
                    out.append(CatalogLabel("typeI", params))
    for k in range(1, max_dim // 2 + 1):
        for mu in mus:
            for f in (False, True):
                out.append(CatalogLabel("typeII", (1, k, 0, "out", frac(mu)), f))
    if max_dim >= 4:
        out.extend([CatalogLabel("free", (2, 0)), CatalogLabel("free", (2, 1))])
    return out


def label_sdim(label) -> tuple[int, int]:
    return build_from_label(label).sdim
