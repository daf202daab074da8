"""Representations of Lie superalgebras and the standard constructions on them.

A :class:`Representation` stores one square matrix per basis element of its
algebra, over a basis whose parities are given by ``format``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from superdecomp import linalg
from superdecomp.algebras import (
    AlgebraError,
    LieSuperAlgebra,
    _Coordinates,
    graded_parts,
    is_abelian,
)
from superdecomp.linalg import ONE, ZERO, frac, fstr
from superdecomp.superlinalg import Format, ParityError, map_parity, matrix_parity


class RepresentationError(ValueError):
    pass


def _sign(p: int, q: int) -> int:
    return -1 if (p * q) % 2 else 1


class Representation:
    """Matrices ``rho[i]`` for the basis elements of ``algebra``."""

    def __init__(self, algebra: LieSuperAlgebra, fmt, matrices, name: str = "", check_parity=True):
        self.algebra = algebra
        self.format = Format(fmt)
        n = len(self.format)
        mats = []
        if len(matrices) != algebra.dim:
            raise RepresentationError(
                f"expected {algebra.dim} matrices, got {len(matrices)}"
            )
        for i, m in enumerate(matrices):
            if not isinstance(m, np.ndarray) or m.dtype != object:
                m = linalg.matrix(m) if n else linalg.zeros(0)
            if m.shape != (n, n):
                raise RepresentationError(f"matrix {i} has shape {m.shape}, expected {(n, n)}")
            if check_parity:
                p = matrix_parity(self.format, m)
                if p is None or (p != algebra.parities[i] and not linalg.is_zero(m)):
                    raise ParityError(
                        f"action of {algebra.labels[i]} is not of parity {algebra.parities[i]}"
                    )
            mats.append(m)
        self.matrices = tuple(mats)
        self.name = name
        self.notes: list[str] = []
        self._int = None

    @property
    def dim(self) -> int:
        return len(self.format)

    @property
    def sdim(self) -> tuple[int, int]:
        return self.format.sdim

    def __repr__(self):
        p, q = self.sdim
        label = f" {self.name}" if self.name else ""
        return f"<Representation{label} of {self.algebra.name} {p}|{q}>"

    def act(self, i: int) -> np.ndarray:
        return self.matrices[i]

    def act_vec(self, x: dict) -> np.ndarray:
        out = linalg.zeros(self.dim)
        for i, c in x.items():
            out = out + self.matrices[i] * c
        return out

    def int_forms(self):
        if self._int is None:
            self._int = [linalg.to_int(m) for m in self.matrices]
        return self._int

    def conjugate(self, p: np.ndarray, fmt=None) -> "Representation":
        """Change of basis: new matrices ``P^{-1} rho P`` (P's columns are the new basis)."""
        inv = linalg.inverse(p)
        fmt = self.format if fmt is None else fmt
        return Representation(
            self.algebra, fmt, [inv @ m @ p for m in self.matrices], self.name
        )

    def to_json(self, inline_algebra=False) -> dict:
        out = {
            "algebra": self.algebra.to_json() if inline_algebra else self.algebra.name,
            "format": str(self.format),
            "matrices": [[[fstr(x) for x in row] for row in m] for m in self.matrices],
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data, algebra: LieSuperAlgebra | None = None) -> "Representation":
        alg = data["algebra"]
        if isinstance(alg, dict):
            algebra = LieSuperAlgebra.from_json(alg)
        elif algebra is None:
            from superdecomp.algebras import by_name

            algebra = by_name(alg)
        fmt = Format(data["format"])
        mats = [linalg.matrix(m) if len(fmt) else linalg.zeros(0) for m in data["matrices"]]
        return cls(algebra, fmt, mats, data.get("name", ""))

    def dumps(self, inline_algebra=False) -> str:
        return json.dumps(self.to_json(inline_algebra))


@dataclass
class RepReport:
    ok: bool
    message: str = "pass"
    counterexample: tuple | None = None
    checked_pairs: int = 0

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "ok": self.ok,
            "message": self.message,
            "counterexample": None if self.counterexample is None else list(self.counterexample),
            "checked_pairs": self.checked_pairs,
        }


def verify_representation(v: Representation) -> RepReport:
    """Exact check of ``rho([x,y]) = rho(x)rho(y) - (-1)^{p(x)p(y)} rho(y)rho(x)``
    on all basis pairs."""
    g = v.algebra
    n = v.dim
    par = g.parities
    for i, m in enumerate(v.matrices):
        p = matrix_parity(v.format, m)
        if p is None or (p != par[i] and not linalg.is_zero(m)):
            return RepReport(False, f"action of {g.labels[i]} has wrong parity", (i,))
    if n == 0:
        return RepReport(True, "pass", None, 0)
    ints = v.int_forms()
    pairs = 0
    for i in range(g.dim):
        a, da, ba = ints[i]
        for j in range(i, g.dim):
            pairs += 1
            b, db, bb = ints[j]
            ab = linalg.int_matmul(a, b, ba, bb)
            ba_ = linalg.int_matmul(b, a, bb, ba)
            lhs = ab + ba_ if par[i] and par[j] else ab - ba_
            br = g.bracket(i, j)
            if br:
                rhs = linalg.zeros(n)
                for k, c in br.items():
                    rhs = rhs + v.matrices[k] * c
                rhs_i, dr, _ = linalg.to_int(rhs)
                # lhs / (da db) == rhs_i / dr
                ok = np.array_equal(
                    np.asarray(lhs, dtype=object) * dr, np.asarray(rhs_i, dtype=object) * (da * db)
                )
            else:
                ok = not np.any(lhs != 0)
            if not ok:
                return RepReport(
                    False,
                    f"bracket relation fails for ({g.labels[i]}, {g.labels[j]})",
                    (i, j),
                    pairs,
                )
    return RepReport(True, "pass", None, pairs)


# --------------------------------------------------------------------------
# functorial constructions


def _same_algebra(v, w):
    if v.algebra is not w.algebra and v.algebra.to_json() != w.algebra.to_json():
        raise RepresentationError("representations of different algebras")


def direct_sum(*reps: Representation) -> Representation:
    if not reps:
        raise RepresentationError("empty direct sum")
    for r in reps[1:]:
        _same_algebra(reps[0], r)
    g = reps[0].algebra
    fmt = Format(sum((tuple(r.format) for r in reps), ()))
    mats = [linalg.block_diag(*(r.matrices[i] for r in reps)) for i in range(g.dim)]
    return Representation(g, fmt, mats, "+".join(r.name for r in reps if r.name))


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m, n = a.shape
    p, q = b.shape
    out = linalg.zeros(m * p, n * q)
    for i in range(m):
        for j in range(n):
            if a[i, j] != 0:
                out[i * p : (i + 1) * p, j * q : (j + 1) * q] = b * a[i, j]
    return out


def tensor_format(f1, f2) -> Format:
    return Format((a + b) % 2 for a in f1 for b in f2)


def tensor(v: Representation, w: Representation) -> Representation:
    """``x(v (x) w) = xv (x) w + (-1)^{p(x)p(v)} v (x) xw``; basis ``e_i (x) f_j`` row-major."""
    _same_algebra(v, w)
    g = v.algebra
    iw = linalg.eye(w.dim)
    mats = []
    for i in range(g.dim):
        s = linalg.zeros(v.dim)
        for k, p in enumerate(v.format):
            s[k, k] = Fraction(_sign(g.parities[i], p))
        mats.append(_kron(v.matrices[i], iw) + _kron(s, w.matrices[i]))
    return Representation(g, tensor_format(v.format, w.format), mats)


def dual(v: Representation) -> Representation:
    """Dual module on the dual basis.

    ``(x.phi)(u) = -(-1)^{p(x)p(phi)} phi(x.u)``, i.e.
    ``rho*(x)_{ij} = -(-1)^{p(x)p_j} rho(x)_{ji}``.
    """
    g = v.algebra
    mats = []
    for i in range(g.dim):
        m = v.matrices[i]
        out = linalg.zeros(v.dim)
        px = g.parities[i]
        for a in range(v.dim):
            for b in range(v.dim):
                x = m[b, a]
                if x != 0:
                    out[a, b] = -x if _sign(px, v.format[b]) == 1 else x
        mats.append(out)
    return Representation(g, v.format, mats, f"{v.name}*" if v.name else "")


def pi(v: Representation) -> Representation:
    """Parity change: same matrices, flipped format."""
    return Representation(
        v.algebra, v.format.flipped(), [m.copy() for m in v.matrices], f"Pi.{v.name}" if v.name else ""
    )


def hom_format(src: Format, dst: Format) -> Format:
    """Parities of the units ``E_ij : src_j -> dst_i``, row-major over (i, j)."""
    return Format((a + b) % 2 for a in dst for b in src)


def hom(v: Representation, w: Representation) -> Representation:
    """``Hom(V, W)`` with ``x.T = rho_W(x) T - (-1)^{p(x)p(T)} T rho_V(x)``.

    Coordinates are the entries ``T[i, j]`` (i in W, j in V) in row-major order.
    """
    _same_algebra(v, w)
    g = v.algebra
    nv, nw = v.dim, w.dim
    fmt = hom_format(v.format, w.format)
    mats = []
    for x in range(g.dim):
        px = g.parities[x]
        rv, rw = v.matrices[x], w.matrices[x]
        out = linalg.zeros(nv * nw)
        nz_w = [(k, i, rw[k, i]) for k in range(nw) for i in range(nw) if rw[k, i] != 0]
        nz_v = [(j, l, rv[j, l]) for j in range(nv) for l in range(nv) if rv[j, l] != 0]
        # E_ij -> sum_k rw[k,i] E_kj - s sum_l rv[j,l] E_il
        for k, i, c in nz_w:
            for j in range(nv):
                out[k * nv + j, i * nv + j] += c
        for j, l, c in nz_v:
            for i in range(nw):
                s = _sign(px, (w.format[i] + v.format[j]) % 2)
                out[i * nv + l, i * nv + j] -= s * c
        mats.append(out)
    return Representation(g, fmt, mats)


def hom_vec_to_matrix(vec, nv: int, nw: int) -> np.ndarray:
    out = linalg.zeros(nw, nv)
    for idx, x in enumerate(vec):
        if x != 0:
            out[idx // nv, idx % nv] = x
    return out


def matrix_to_hom_vec(t: np.ndarray) -> np.ndarray:
    return t.reshape(-1).copy()


def trivial(g: LieSuperAlgebra, odd: bool = False) -> Representation:
    return Representation(g, Format([1 if odd else 0]), [linalg.zeros(1) for _ in range(g.dim)], "1")


def adjoint(g: LieSuperAlgebra) -> Representation:
    return Representation(g, g.parities, [g.ad(i) for i in range(g.dim)], "ad")


def standard(g: LieSuperAlgebra) -> Representation:
    """The defining module of a matrix algebra."""
    if not g.realization or not hasattr(g.realization[0], "entries"):
        raise RepresentationError(f"{g.name} has no matrix realization")
    fmt = g.realization[0].format
    return Representation(g, fmt, [m.entries.copy() for m in g.realization], "std")


# --------------------------------------------------------------------------
# subalgebras and restriction


def subalgebra(g: LieSuperAlgebra, vectors, name: str | None = None, labels=None) -> LieSuperAlgebra:
    """Subalgebra spanned by homogeneous sparse vectors in g's basis.

    The result carries ``parent`` and ``embedding`` (the given vectors).
    """
    vectors = [{k: frac(c) for k, c in v.items() if c} for v in vectors]
    pars = []
    for v in vectors:
        ps = {g.parities[k] for k in v}
        if len(ps) != 1:
            raise AlgebraError("subalgebra basis must be homogeneous and nonzero")
        pars.append(ps.pop())
    coord = _Coordinates(vectors)
    br = {}
    for i, a in enumerate(vectors):
        for j, b in enumerate(vectors):
            c = coord(g.bracket_vec(a, b))
            if c:
                br[(i, j)] = c
    if labels is None:
        labels = []
        for v in vectors:
            if len(v) == 1 and next(iter(v.values())) == 1:
                labels.append(g.labels[next(iter(v))])
            else:
                labels.append("+".join(f"{c}*{g.labels[k]}" for k, c in sorted(v.items())))
    grading = None
    if g.grading is not None:
        gr = []
        for v in vectors:
            ds = {g.grading[k] for k in v}
            gr.append(ds.pop() if len(ds) == 1 else None)
        grading = None if None in gr else gr
    sub = LieSuperAlgebra(name or f"sub({g.name})", labels, pars, br, grading=grading)
    sub.parent = g
    sub.embedding = tuple(vectors)
    return sub


def basis_subalgebra(g: LieSuperAlgebra, idx, name=None) -> LieSuperAlgebra:
    return subalgebra(g, [{i: ONE} for i in idx], name)


def restrict(v: Representation, sub: LieSuperAlgebra) -> Representation:
    parent = getattr(sub, "parent", None)
    if parent is None:
        raise RepresentationError("subalgebra carries no embedding")
    if parent is not v.algebra and parent.to_json() != v.algebra.to_json():
        raise RepresentationError("subalgebra of a different algebra")
    mats = [v.act_vec(e) for e in sub.embedding]
    return Representation(sub, v.format, mats, v.name)


# --------------------------------------------------------------------------
# gl(2) irreducibles used as L0-modules


def gl2_irrep(a, b) -> dict:
    """Irreducible gl(2)-module of highest weight (a, b), a - b in Z>=0.

    Basis ``v_j = E21^j v_0``; returns matrices for the keys ``(i, j)`` of E_ij
    (0-based), with ``E11 v_j = (a-j) v_j``, ``E22 v_j = (b+j) v_j``,
    ``E12 v_j = j(a-b-j+1) v_{j-1}``.
    """
    a, b = frac(a), frac(b)
    d = a - b
    if d.denominator != 1 or d < 0:
        raise RepresentationError("need a - b a nonnegative integer")
    n = int(d) + 1
    e = {key: linalg.zeros(n) for key in ((0, 0), (0, 1), (1, 0), (1, 1))}
    for j in range(n):
        e[(0, 0)][j, j] = a - j
        e[(1, 1)][j, j] = b + j
        if j + 1 < n:
            e[(1, 0)][j + 1, j] = ONE
        if j > 0:
            e[(0, 1)][j - 1, j] = Fraction(j) * (a - b - j + 1)
    return e


def vect_gl_embedding(g: LieSuperAlgebra, idx: int) -> np.ndarray:
    """For a vectorial algebra, the gl(n) matrix of a degree-0 field: ``x_i d_j -> E_ij``."""
    f = g.realization[idx]
    n = f.n
    out = linalg.zeros(n)
    for (s, j), c in f.coords().items():
        if len(s) != 1:
            raise RepresentationError("not a degree-zero field")
        out[s[0] - 1, j - 1] += c
    return out


def block_embedding(rows) -> callable:
    """Embedding of a matrix algebra's L0 given by a 2x2 diagonal block."""
    rows = list(rows)

    def emb(g: LieSuperAlgebra, idx: int) -> np.ndarray:
        m = g.realization[idx].entries
        return m[np.ix_(rows, rows)].copy()

    return emb


def l0_weight_module(g: LieSuperAlgebra, a, b, embedding=vect_gl_embedding, odd=False) -> dict:
    """gl(2)-irreducible V^(a,b) pulled back along ``embedding`` to L0 of g.

    Returns ``{"format": ..., "action": {index: matrix}}`` for the degree-0 basis.
    """
    parts = graded_parts(g)
    e = gl2_irrep(a, b)
    n = e[(0, 0)].shape[0]
    act = {}
    for i in parts.parts.get(0, ()):
        d = embedding(g, i)
        if d.shape != (2, 2):
            raise RepresentationError("embedding must land in gl(2)")
        m = linalg.zeros(n)
        for (r, c), mat in e.items():
            if d[r, c] != 0:
                m = m + mat * d[r, c]
        act[i] = m
    p = 1 if odd else 0
    # irreducible as a gl(2)-module; over L0 only if the embedding hits sl(2)
    return {
        "format": Format([p] * n),
        "action": act,
        "weight": (frac(a), frac(b)),
        "irreducible": True,
    }


@dataclass
class WeightData:
    h: tuple
    ab: tuple | None = None


# --------------------------------------------------------------------------
# induced and coinduced modules


def _check_l0_module(g, zero_part, l0, fmt, action):
    n = len(fmt)
    for i in l0:
        if i not in action:
            raise RepresentationError(f"no action given for {g.labels[i]}")
        if action[i].shape != (n, n):
            raise RepresentationError("L0 action has the wrong shape")
    # verify the L0 relations
    sub = set(l0)
    for i in l0:
        for j in l0:
            br = g.bracket(i, j)
            if any(k not in sub for k in br):
                raise RepresentationError("L0 is not closed")
            a, b = action[i], action[j]
            lhs = a @ b + b @ a if g.parities[i] and g.parities[j] else a @ b - b @ a
            rhs = linalg.zeros(n)
            for k, c in br.items():
                rhs = rhs + action[k] * c
            if not np.all(lhs == rhs):
                raise RepresentationError(
                    f"L0 data is not a representation at ({g.labels[i]}, {g.labels[j]})"
                )


def _free_product(t: int, s: tuple, free_pos: dict):
    """Left-multiply the free exterior monomial ``s`` by generator ``t``."""
    if t in s:
        return 0, s
    pos = sum(1 for u in s if free_pos[u] < free_pos[t])
    out = tuple(sorted(s + (t,), key=free_pos.__getitem__))
    return (-1 if pos % 2 else 1), out


def _straighten(g, free, l0, zero, fmt, action):
    """Module ``U(g) (x)_{U(l0 + zero)} V`` with carrier ``Lambda(free) (x) V``.

    ``free`` must be odd and abelian. Returns (format, matrices, basis).
    """
    free = list(free)
    free_pos = {t: k for k, t in enumerate(free)}
    kinds = {}
    for i in free:
        kinds[i] = "free"
    for i in l0:
        kinds[i] = "l0"
    for i in zero:
        kinds[i] = "zero"
    subsets = [s for r in range(len(free) + 1) for s in combinations(free, r)]
    n = len(fmt)
    basis = [(s, k) for s in subsets for k in range(n)]
    index = {b: i for i, b in enumerate(basis)}
    out_fmt = Format((len(s) + fmt[k]) % 2 for s, k in basis)
    memo: dict = {}

    def act(u: int, s: tuple, k: int) -> dict:
        key = (u, s, k)
        if key in memo:
            return memo[key]
        res: dict = {}
        if not s:
            kind = kinds[u]
            if kind == "free":
                res[((u,), k)] = ONE
            elif kind == "l0":
                col = action[u][:, k]
                for r in range(n):
                    if col[r] != 0:
                        res[((), r)] = col[r]
        else:
            t, rest = s[0], s[1:]
            # u . y_t y_rest v = [u, y_t] y_rest v + (-1)^{p(u)} y_t (u . y_rest v)
            for w, c in g.bracket(u, t).items():
                for b, x in act(w, rest, k).items():
                    res[b] = res.get(b, ZERO) + c * x
            sgn = -1 if g.parities[u] else 1
            for (s2, k2), x in act(u, rest, k).items():
                e, s3 = _free_product(t, s2, free_pos)
                if e:
                    b = (s3, k2)
                    res[b] = res.get(b, ZERO) + sgn * e * x
        res = {b: x for b, x in res.items() if x != 0}
        memo[key] = res
        return res

    mats = []
    for u in range(g.dim):
        m = linalg.zeros(len(basis))
        for col, (s, k) in enumerate(basis):
            for b, x in act(u, s, k).items():
                m[index[b], col] = x
        mats.append(m)
    return out_fmt, mats, basis


def induce(g: LieSuperAlgebra, l0_module: dict) -> Representation:
    """``I(V) = U(g) (x)_{U(L_>=0)} V`` with ``L_>0`` acting by zero on V.

    ``l0_module`` has keys ``format`` and ``action`` (degree-0 index -> matrix).
    """
    parts = graded_parts(g)
    if min(parts.parts) < -1:
        raise RepresentationError("grading depth greater than one is not supported")
    neg = list(parts.parts.get(-1, ()))
    if any(g.parities[i] == 0 for i in neg) or not is_abelian(g, neg):
        raise RepresentationError("L_-1 must be odd and abelian")
    l0 = list(parts.parts.get(0, ()))
    pos = [i for i in range(g.dim) if g.grading[i] > 0]
    fmt = Format(l0_module["format"])
    _check_l0_module(g, pos, l0, fmt, l0_module["action"])
    out_fmt, mats, basis = _straighten(g, neg, l0, pos, fmt, l0_module["action"])
    rep = Representation(g, out_fmt, mats, "I(V)")
    rep.basis_labels = basis
    full = tuple(neg)
    rep.top_indices = [i for i, (s, _) in enumerate(basis) if len(s) == len(full)]
    rep.l0_irreducible = bool(l0_module.get("irreducible", False))
    return rep


COINDUCE_NOTE = (
    "L_> is odd and abelian here, so the coinduced module is finite-dimensional; "
    "this differs from the claim that it is infinite-dimensional for all vectorial "
    "algebras except svect(0|2), svect(0|3), sh(0|4)."
)


def coinduce(g: LieSuperAlgebra, l0_module: dict) -> Representation:
    """``U(g) (x)_{U(L_<=0)} V`` with ``L_<0`` acting by zero; carrier ``Lambda(L_>) (x) V``."""
    parts = graded_parts(g)
    pos = [i for i in range(g.dim) if g.grading[i] > 0]
    if any(g.parities[i] == 0 for i in pos):
        raise RepresentationError("infinite-dimensional: L_> contains even elements")
    if not is_abelian(g, pos):
        raise RepresentationError("infinite-dimensional: L_> is not abelian")
    l0 = list(parts.parts.get(0, ()))
    neg = [i for i in range(g.dim) if g.grading[i] < 0]
    fmt = Format(l0_module["format"])
    _check_l0_module(g, neg, l0, fmt, l0_module["action"])
    out_fmt, mats, basis = _straighten(g, pos, l0, neg, fmt, l0_module["action"])
    rep = Representation(g, out_fmt, mats, "J(V)")
    rep.basis_labels = basis
    if g.realization and not hasattr(g.realization[0], "entries"):
        rep.notes.append(COINDUCE_NOTE)
    return rep


def random_basis_change(v: Representation, rng, spread: int = 3) -> tuple[Representation, np.ndarray]:
    """Conjugate by a random invertible even matrix; returns ``(P^-1 rho P, P)``."""
    n = v.dim
    while True:
        p = linalg.zeros(n)
        for i in range(n):
            for j in range(n):
                if v.format[i] == v.format[j]:
                    p[i, j] = Fraction(rng.randint(-spread, spread))
        if linalg.rank(p) == n:
            return v.conjugate(p), p


# --------------------------------------------------------------------------
# extensions


def extension_from_cocycle(v: Representation, w: Representation, c) -> Representation:
    """``rho = [[rho_V, c], [0, rho_W]]``; V is the submodule.

    ``c`` maps each basis index to a ``dim V x dim W`` matrix (a sequence or dict).
    """
    _same_algebra(v, w)
    g = v.algebra
    if isinstance(c, dict):
        c = [c.get(i, linalg.zeros(v.dim, w.dim)) for i in range(g.dim)]
    mats = []
    for i in range(g.dim):
        ci = c[i]
        if ci.shape != (v.dim, w.dim):
            raise RepresentationError("cocycle values have the wrong shape")
        p = map_parity(w.format, v.format, ci)
        if p is None or (p != g.parities[i] and not linalg.is_zero(ci)):
            raise RepresentationError("cochain value has the wrong parity")
        m = linalg.block_diag(v.matrices[i], w.matrices[i])
        m[: v.dim, v.dim :] = ci
        mats.append(m)
    rep = Representation(g, v.format + w.format, mats, "ext")
    rep_check = verify_representation(rep)
    if not rep_check.ok:
        raise RepresentationError(f"not a cocycle: {rep_check.message}")
    return rep
