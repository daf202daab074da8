"""Lie superalgebras as structure constants over a homogeneous basis.

Constructors cover the matrix series (gl, sl, osp, pe, spe) and the
vectorial series on the odd superspace 0|n (vect, svect, the deformed
svect, h, sh). Every constructor keeps the realization it was built from
so :func:`verify_algebra` can check the structure constants against it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from superdecomp import linalg
from superdecomp.grassmann import (
    FormPolynomial,
    GrassmannElement,
    SuperVectorField,
    divergence,
    field_bracket,
    field_label,
    lie_derivative,
    monomials,
    top_element,
)
from superdecomp.linalg import ONE, ZERO, frac, fstr
from superdecomp.superlinalg import (
    Format,
    SuperMatrix,
    supercommutator,
    supertrace,
    supertranspose,
)


class AlgebraError(ValueError):
    pass


def _sign(p: int, q: int) -> int:
    return -1 if (p * q) % 2 else 1


class LieSuperAlgebra:
    """Finite-dimensional Lie superalgebra given by structure constants.

    ``brackets[(i, j)]`` is a sparse ``{k: c}`` with ``[e_i, e_j] = sum c e_k``;
    missing pairs bracket to zero.
    """

    def __init__(self, name, labels, parities, brackets, realization=None, grading=None):
        self.name = name
        self.labels = tuple(labels)
        self.parities = Format(parities)
        if len(self.labels) != len(self.parities):
            raise AlgebraError("labels and parities differ in length")
        self.brackets = {k: dict(v) for k, v in brackets.items() if v}
        self.realization = None if realization is None else tuple(realization)
        self.grading = None if grading is None else tuple(int(d) for d in grading)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def sdim(self) -> tuple[int, int]:
        return self.parities.sdim

    def __repr__(self):
        p, q = self.sdim
        return f"<LieSuperAlgebra {self.name} {p}|{q}>"

    def bracket(self, i: int, j: int) -> dict:
        return self.brackets.get((i, j), {})

    def bracket_vec(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket(i, j).items():
                    out[k] = out.get(k, ZERO) + a * b * c
        return {k: c for k, c in out.items() if c}

    def ad(self, i: int) -> np.ndarray:
        m = linalg.zeros(self.dim)
        for j in range(self.dim):
            for k, c in self.bracket(i, j).items():
                m[k, j] = c
        return m

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small set of basis indices generating the algebra."""
        order = sorted(range(self.dim), key=lambda i: (-self.parities[i], i))
        chosen: list[int] = []
        span_rows: list[dict] = []
        for i in order:
            if span_rows and _in_span(span_rows, {i: ONE}):
                continue
            chosen.append(i)
            span_rows = _closure(self, chosen)
            if len(span_rows) == self.dim:
                break
        return tuple(chosen)

    def to_json(self) -> dict:
        triples = []
        for (i, j), vec in sorted(self.brackets.items()):
            for k, c in sorted(vec.items()):
                triples.append([i, j, k, fstr(c)])
        out = {
            "name": self.name,
            "labels": list(self.labels),
            "parities": str(self.parities),
            "structure_constants": triples,
        }
        if self.grading is not None:
            out["grading"] = list(self.grading)
        return out

    @classmethod
    def from_json(cls, data) -> "LieSuperAlgebra":
        br: dict = {}
        for i, j, k, c in data["structure_constants"]:
            br.setdefault((int(i), int(j)), {})[int(k)] = frac(c)
        return cls(data["name"], data["labels"], data["parities"], br, grading=data.get("grading"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _in_span(rows, vec) -> bool:
    return linalg.rank_rows(list(rows) + [vec]) == linalg.rank_rows(rows)


def _closure(g: LieSuperAlgebra, gens) -> list[dict]:
    """Echelon rows spanning the subalgebra generated by basis elements."""
    pivots, _ = linalg.echelon_rows([{i: ONE} for i in gens])
    basis = [{i: ONE} for i in gens]
    frontier = list(basis)
    while frontier:
        new = []
        for u in frontier:
            for i in gens:
                w = g.bracket_vec({i: ONE}, u)
                if not w:
                    continue
                row = linalg._kernel.reduce_row(linalg.int_row(w), pivots)
                if row:
                    pivots[min(row)] = row
                    new.append(w)
        frontier = new
    return list(pivots.values())


# --------------------------------------------------------------------------
# building from a realization


class _Coordinates:
    """Coordinates of ambient sparse vectors in a fixed basis of a subspace."""

    def __init__(self, basis: list[dict]):
        self.basis = basis
        keys = sorted({k for b in basis for k in b}, key=repr)
        self.key_index = {k: i for i, k in enumerate(keys)}
        rows = [linalg.int_row({self.key_index[k]: c for k, c in b.items()}) for b in basis]
        pivots, _ = linalg.echelon_rows(rows, False)
        if len(pivots) != len(basis):
            raise AlgebraError("basis vectors are linearly dependent")
        self.cols = [keys[c] for c in sorted(pivots)]
        k = len(basis)
        bp = linalg.zeros(k)
        for i, b in enumerate(basis):
            for a, c in enumerate(self.cols):
                bp[i, a] = frac(b.get(c, ZERO))
        # v_P = c^T B_P  =>  c = (B_P^T)^{-1} v_P
        inv = linalg.inverse(bp.T.copy())
        self.inv_cols = {
            col: {i: inv[i, a] for i in range(k) if inv[i, a] != 0}
            for a, col in enumerate(self.cols)
        }

    def __call__(self, v: dict) -> dict:
        if any(k not in self.key_index for k, x in v.items() if x != 0):
            raise AlgebraError("bracket leaves the span of the basis")
        out: dict = {}
        for col, x in v.items():
            if x == 0 or col not in self.inv_cols:
                continue
            for i, y in self.inv_cols[col].items():
                out[i] = out.get(i, ZERO) + y * x
        out = {i: x for i, x in out.items() if x != 0}
        recon: dict = {}
        for i, x in out.items():
            for key, y in self.basis[i].items():
                recon[key] = recon.get(key, ZERO) + x * y
        recon = {k: x for k, x in recon.items() if x != 0}
        if recon != {k: frac(x) for k, x in v.items() if x != 0}:
            raise AlgebraError("bracket leaves the span of the basis")
        return out


def _mat_coords(m: SuperMatrix) -> dict:
    n = len(m.format)
    return {(i, j): m.entries[i, j] for i in range(n) for j in range(n) if m.entries[i, j] != 0}


def _from_elements(name, labels, elems, coords_of, bracket_of, parity_of, grading=None):
    basis = [coords_of(e) for e in elems]
    coord = _Coordinates(basis)
    pars = [parity_of(e) for e in elems]
    if any(p is None for p in pars):
        raise AlgebraError("basis elements must be homogeneous")
    br = {}
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            c = coord(coords_of(bracket_of(a, b)))
            if c:
                br[(i, j)] = c
    return LieSuperAlgebra(name, labels, pars, br, realization=elems, grading=grading)


def from_matrices(name, labels, mats, grading=None) -> LieSuperAlgebra:
    return _from_elements(name, labels, mats, _mat_coords, supercommutator, lambda m: m.parity, grading)


def from_fields(name, labels, fields, grading=None) -> LieSuperAlgebra:
    return _from_elements(name, labels, fields, lambda f: f.coords(), field_bracket, lambda f: f.parity, grading)


def _combo_label(vec: dict, names) -> str:
    terms = []
    for k in sorted(vec):
        c = vec[k]
        if c == 1:
            terms.append(names[k])
        elif c == -1:
            terms.append(f"-{names[k]}")
        else:
            terms.append(f"{c}*{names[k]}")
    return "+".join(terms).replace("+-", "-")


# --------------------------------------------------------------------------
# matrix series


def gl_units(fmt) -> list[tuple[int, int]]:
    n = len(fmt)
    return [(i, j) for i in range(n) for j in range(n)]


def build_gl(fmt) -> LieSuperAlgebra:
    fmt = Format(fmt)
    if not fmt:
        raise AlgebraError("format must be nonempty")
    units = gl_units(fmt)
    mats = [SuperMatrix.unit(fmt, i, j) for i, j in units]
    labels = [f"E{i + 1}{j + 1}" if len(fmt) < 10 else f"E{i + 1},{j + 1}" for i, j in units]
    grading = [fmt[j] - fmt[i] for i, j in units]
    p, q = fmt.sdim
    return from_matrices(_fmt_name("gl", fmt), labels, mats, grading)


def _fmt_name(prefix, fmt):
    p, q = fmt.sdim
    std = Format.standard(p, q)
    return f"{prefix}({p}|{q})" if fmt == std else f"{prefix}({fmt})"


def _kernel_blocks(fmt, units, conditions, key_of):
    """Kernel of ``conditions`` solved separately on each block of units."""
    blocks: dict = {}
    for idx, (i, j) in enumerate(units):
        blocks.setdefault(key_of(i, j), []).append(idx)
    out = []
    for key in sorted(blocks, key=lambda k: (k[1], k[0])):
        idxs = blocks[key]
        cols = [conditions(SuperMatrix.unit(fmt, *units[u])) for u in idxs]
        keys = sorted({k for c in cols for k in c}, key=repr)
        a = linalg.zeros(len(keys), len(idxs))
        for jj, c in enumerate(cols):
            for kk, k in enumerate(keys):
                a[kk, jj] = frac(c.get(k, ZERO))
        for v in linalg.kernel_basis(a):
            out.append((key, {idxs[jj]: x for jj, x in enumerate(v) if x != 0}))
    return out


def _linear_subalgebra(name, fmt, conditions, label_names=None, degree=None):
    """Matrices of gl(fmt) satisfying linear ``conditions``.

    ``conditions(unit_matrix) -> sparse dict`` must be linear. The kernel is
    solved per parity; when solving per (parity, degree) block loses nothing
    the graded basis is used and the grading kept, otherwise no grading.
    ``degree(i, j)`` defaults to ``p_j - p_i``.
    """
    fmt = Format(fmt)
    units = gl_units(fmt)
    names = label_names or [f"E{i + 1}{j + 1}" for i, j in units]
    if degree is None:
        degree = lambda i, j: fmt[j] - fmt[i]  # noqa: E731
    par = lambda i, j: (fmt[i] + fmt[j]) % 2  # noqa: E731
    graded = _kernel_blocks(fmt, units, conditions, lambda i, j: (par(i, j), degree(i, j)))
    plain = _kernel_blocks(fmt, units, conditions, lambda i, j: (par(i, j), 0))
    use_grading = len(graded) == len(plain)
    chosen = graded if use_grading else plain
    mats, labels, grading = [], [], []
    for key, vec in chosen:
        m = linalg.zeros(len(fmt))
        for u, x in vec.items():
            m[units[u]] = x
        mats.append(SuperMatrix(fmt, m))
        labels.append(_combo_label(vec, names))
        grading.append(key[1])
    return from_matrices(name, labels, mats, grading if use_grading else None)


def build_sl(fmt) -> LieSuperAlgebra:
    fmt = Format(fmt)
    if not fmt:
        raise AlgebraError("format must be nonempty")
    if fmt == Format.standard(1, 1):
        return sl11()
    return _linear_subalgebra(_fmt_name("sl", fmt), fmt, lambda m: {0: supertrace(m)})


def sl11() -> LieSuperAlgebra:
    """sl(1|1) with basis ``X+ = E12``, ``X- = E21``, ``E = 1``."""
    fmt = Format.standard(1, 1)
    mats = [SuperMatrix.unit(fmt, 0, 1), SuperMatrix.unit(fmt, 1, 0), SuperMatrix.identity(fmt)]
    return from_matrices("sl(1|1)", ["X+", "X-", "E"], mats, [1, -1, 0])


@dataclass(frozen=True)
class BilinearFormSpec:
    matrix: SuperMatrix
    kind: str  # "symmetric" or "skew"

    def __post_init__(self):
        if self.kind not in ("symmetric", "skew"):
            raise ValueError("kind must be 'symmetric' or 'skew'")


def upsetting(b: SuperMatrix) -> SuperMatrix:
    """``B^u`` in the standard format: ``[[R^t, (-1)^p T^t], [(-1)^p S^t, -U^t]]``."""
    p, q = b.format.sdim
    if b.format != Format.standard(p, q):
        raise AlgebraError("upsetting is defined here for the standard format")
    pb = b.homogeneous_parity()
    e = b.entries
    r, s, t, u = e[:p, :p], e[:p, p:], e[p:, :p], e[p:, p:]
    sgn = -1 if pb else 1
    out = linalg.zeros(p + q)
    out[:p, :p] = r.T
    out[:p, p:] = t.T * sgn
    out[p:, :p] = s.T * sgn
    out[p:, p:] = -u.T
    return SuperMatrix(b.format, out)


def form_kind(b: SuperMatrix):
    bu = upsetting(b)
    if bu == b:
        return "symmetric"
    if bu == -b:
        return "skew"
    return None


def b_ev(m: int, n2: int) -> BilinearFormSpec:
    """``diag(1_m, J_2n)`` in the standard format m|2n."""
    if n2 % 2:
        raise AlgebraError("symplectic block needs even size")
    n = n2 // 2
    e = linalg.zeros(m + n2)
    for i in range(m):
        e[i, i] = ONE
    for i in range(n):
        e[m + i, m + n + i] = ONE
        e[m + n + i, m + i] = -ONE
    return BilinearFormSpec(SuperMatrix(Format.standard(m, n2), e), "symmetric")


def j_odd(n: int) -> BilinearFormSpec:
    """``J_2n`` as an odd supersymmetric form on n|n."""
    e = linalg.zeros(2 * n)
    for i in range(n):
        e[i, n + i] = ONE
        e[n + i, i] = -ONE
    return BilinearFormSpec(SuperMatrix(Format.standard(n, n), e), "symmetric")


def pi_odd(n: int) -> BilinearFormSpec:
    """``Pi_2n`` as an odd superskew form on n|n."""
    e = linalg.zeros(2 * n)
    for i in range(n):
        e[i, n + i] = ONE
        e[n + i, i] = ONE
    return BilinearFormSpec(SuperMatrix(Format.standard(n, n), e), "skew")


def aut_condition(b: SuperMatrix):
    pb = b.homogeneous_parity()

    def cond(x: SuperMatrix) -> dict:
        px = x.homogeneous_parity()
        val = supertranspose(x).entries @ b.entries + _sign(px, pb) * (b.entries @ x.entries)
        n = val.shape[0]
        return {(i, j): val[i, j] for i in range(n) for j in range(n) if val[i, j] != 0}

    return cond


def build_aut_form(spec: BilinearFormSpec, name: str | None = None) -> LieSuperAlgebra:
    b = spec.matrix
    b.homogeneous_parity()
    if linalg.det(b.entries) == 0:
        raise AlgebraError("bilinear form is degenerate")
    return _linear_subalgebra(name or "aut(B)", b.format, aut_condition(b))


def build_osp(m: int, n2: int) -> LieSuperAlgebra:
    return build_aut_form(b_ev(m, n2), f"osp({m}|{n2})")


def split_even_form(m: int, n2: int) -> BilinearFormSpec:
    """Symmetric even form with ``[[0,1],[1,0]]`` pairs on the even part (m even)."""
    if m % 2 or n2 % 2:
        raise AlgebraError("split form needs even m and n2")
    b = b_ev(m, n2).matrix.entries.copy()
    for i in range(0, m, 2):
        b[i, i] = b[i + 1, i + 1] = ZERO
        b[i, i + 1] = b[i + 1, i] = ONE
    return BilinearFormSpec(SuperMatrix(Format.standard(m, n2), b), "symmetric")


def build_osp_split(m: int, n2: int) -> LieSuperAlgebra:
    """osp(m|n2) for the split even form, graded by ``ad diag(1, -1, 0, ...)``.

    For osp(2|2) the grading has depth one with odd ``L_-1``.
    """
    spec = split_even_form(m, n2)
    w = [0] * (m + n2)
    w[0], w[1] = 1, -1
    deg = lambda i, j: w[i] - w[j]  # noqa: E731
    b = spec.matrix
    if linalg.det(b.entries) == 0:
        raise AlgebraError("bilinear form is degenerate")
    return _linear_subalgebra(f"osp({m}|{n2})", b.format, aut_condition(b), degree=deg)


def build_pe(n: int, kind: str = "sy") -> LieSuperAlgebra:
    spec = j_odd(n) if kind == "sy" else pi_odd(n)
    return build_aut_form(spec, f"pe^{kind}({n})")


def build_spe(n: int, kind: str = "sy") -> LieSuperAlgebra:
    if n < 2:
        raise AlgebraError("spe(n) needs n >= 2")
    spec = j_odd(n) if kind == "sy" else pi_odd(n)
    aut = aut_condition(spec.matrix)

    def cond(x):
        out = aut(x)
        s = supertrace(x)
        if s:
            out["str"] = s
        return out

    return _linear_subalgebra(f"spe({n})", spec.matrix.format, cond)


# --------------------------------------------------------------------------
# vectorial series on 0|n


def vect_basis(n: int) -> list[tuple[tuple, int]]:
    """Monomial fields ``x^S d_i`` ordered by degree ``|S|-1``, then S, then i."""
    return [(s, i) for s in monomials(n) for i in range(1, n + 1)]


def build_vect(n: int) -> LieSuperAlgebra:
    if n < 1:
        raise AlgebraError("vect(0|n) needs n >= 1")
    basis = vect_basis(n)
    fields = [SuperVectorField.monomial(n, s, i) for s, i in basis]
    labels = [field_label(s, i) for s, i in basis]
    grading = [len(s) - 1 for s, _ in basis]
    return from_fields(f"vect(0|{n})", labels, fields, grading)


def _field_subalgebra(name, n, condition, graded=True):
    """Fields of vect(0|n) in the kernel of a linear map, per homogeneous block."""
    basis = vect_basis(n)
    names = [field_label(s, i) for s, i in basis]
    blocks: dict = {}
    for idx, (s, i) in enumerate(basis):
        key = (len(s) - 1) if graded else 0, (len(s) + 1) % 2
        blocks.setdefault(key, []).append(idx)
    fields, labels, grading = [], [], []
    for key in sorted(blocks):
        idxs = blocks[key]
        cols = [condition(SuperVectorField.monomial(n, *basis[u])) for u in idxs]
        keys = sorted({k for c in cols for k in c}, key=repr)
        a = linalg.zeros(len(keys), len(idxs))
        for jj, c in enumerate(cols):
            for kk, k in enumerate(keys):
                a[kk, jj] = frac(c.get(k, ZERO))
        for v in linalg.kernel_basis(a):
            f = SuperVectorField.zero(n)
            vec = {}
            for jj, x in enumerate(v):
                if x != 0:
                    f = f + SuperVectorField.monomial(n, *basis[idxs[jj]], x)
                    vec[idxs[jj]] = x
            fields.append(f)
            labels.append(_combo_label(vec, names))
            grading.append(key[0])
    return from_fields(name, labels, fields, grading if graded else None)


def build_svect(n: int) -> LieSuperAlgebra:
    if n < 2:
        raise AlgebraError("svect(0|n) needs n >= 2")
    return _field_subalgebra(f"svect(0|{n})", n, lambda d: dict(divergence(d).coeffs))


def build_svect_tilde(n: int, t) -> LieSuperAlgebra:
    """Fields with ``Div((1 + t x1...xn) D) = 0``; only even ``n`` (even t)."""
    if n < 2:
        raise AlgebraError("svect~(0|n) needs n >= 2")
    if n % 2:
        raise AlgebraError("odd n needs an odd parameter t, which is not supported")
    t = frac(t)
    factor = GrassmannElement.const(n) + top_element(n).scale(t)

    def cond(d):
        scaled = SuperVectorField(n, [factor * f for f in d.components])
        return dict(divergence(scaled).coeffs)

    return _field_subalgebra(f"svect~(0|{n};{t})", n, cond, graded=False)


def omega_form(n: int) -> FormPolynomial:
    """``sum_i (dx_i)^2``."""
    out = FormPolynomial(n)
    for i in range(n):
        a = [0] * n
        a[i] = 2
        out = out + FormPolynomial.mono(n, (), a)
    return out


def build_h(n: int) -> LieSuperAlgebra:
    if n < 2:
        raise AlgebraError("h(0|n) needs n >= 2")
    w = omega_form(n)
    return _field_subalgebra(f"h(0|{n})", n, lambda d: dict(lie_derivative(d, w).coeffs))


def build_sh(n: int) -> LieSuperAlgebra:
    """Derived algebra ``[h, h]`` of h(0|n)."""
    h = build_h(n)
    fields = h.realization
    blocks: dict = {}
    for i in range(h.dim):
        for j in range(i, h.dim):
            vec = h.bracket(i, j)
            if not vec:
                continue
            f = SuperVectorField.zero(n)
            for k, c in vec.items():
                f = f + fields[k].scale(c)
            key = (h.grading[i] + h.grading[j], f.parity)
            blocks.setdefault(key, []).append(f)
    out, grading = [], []
    keys_all = vect_basis(n)
    for key in sorted(blocks):
        fs = blocks[key]
        rows = [{keys_all.index(k): c for k, c in f.coords().items()} for f in fs]
        piv, _ = linalg.echelon_rows(rows, True)
        for p in sorted(piv):
            row = piv[p]
            lead = row[p]
            f = SuperVectorField.zero(n)
            for c, v in row.items():
                f = f + SuperVectorField.monomial(n, *keys_all[c], Fraction(v, lead))
            out.append(f)
            grading.append(key[0])
    names = [field_label(s, i) for s, i in keys_all]
    labels = [
        _combo_label({keys_all.index(k): c for k, c in f.coords().items()}, names) for f in out
    ]
    return from_fields(f"sh(0|{n})", labels, out, grading)


# --------------------------------------------------------------------------
# verification


@dataclass
class Report:
    ok: bool
    checks: list = field(default_factory=list)
    counterexample: object = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": list(self.checks),
            "message": self.message,
            "counterexample": None if self.counterexample is None else list(self.counterexample),
        }


def _sub(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, ZERO) - c
    return {k: c for k, c in out.items() if c}


def _add(u: dict, v: dict, s=1) -> dict:
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, ZERO) + s * c
    return {k: c for k, c in out.items() if c}


def verify_algebra(g: LieSuperAlgebra) -> Report:
    """Exact check of closure, super antisymmetry, super Jacobi, realization
    and grading; stops at the first counterexample."""
    n = g.dim
    par = g.parities
    checks = []
    for (i, j), vec in g.brackets.items():
        for k in vec:
            if not 0 <= k < n:
                return Report(False, checks, (i, j, k), "structure constant index out of range")
            if par[k] != (par[i] + par[j]) % 2:
                return Report(False, checks, (i, j, k), "bracket does not respect parity")
    checks.append("closure")
    for i in range(n):
        for j in range(n):
            lhs = g.bracket(i, j)
            rhs = {k: -_sign(par[i], par[j]) * c for k, c in g.bracket(j, i).items()}
            if _sub(lhs, rhs):
                return Report(False, checks, (i, j), "super antisymmetry fails")
    checks.append("antisymmetry")
    for i in range(n):
        for j in range(n):
            bij = g.bracket(i, j)
            for k in range(n):
                lhs = g.bracket_vec({i: ONE}, g.bracket(j, k))
                r1 = g.bracket_vec(bij, {k: ONE})
                r2 = g.bracket_vec({j: ONE}, g.bracket(i, k))
                rhs = _add(r1, r2, _sign(par[i], par[j]))
                if _sub(lhs, rhs):
                    return Report(False, checks, (i, j, k), "super Jacobi identity fails")
    checks.append("jacobi")
    if g.realization is not None:
        real = g.realization
        for i in range(n):
            for j in range(n):
                if isinstance(real[0], SuperMatrix):
                    actual = supercommutator(real[i], real[j])
                    expect = SuperMatrix.zero(real[0].format)
                    for k, c in g.bracket(i, j).items():
                        expect = expect + real[k] * c
                else:
                    actual = field_bracket(real[i], real[j])
                    expect = SuperVectorField.zero(real[0].n)
                    for k, c in g.bracket(i, j).items():
                        expect = expect + real[k].scale(c)
                if actual != expect:
                    return Report(False, checks, (i, j), "realization disagrees with structure constants")
        checks.append("realization")
    if g.grading is not None:
        gr = g.grading
        for (i, j), vec in g.brackets.items():
            for k in vec:
                if gr[k] != gr[i] + gr[j]:
                    return Report(False, checks, (i, j, k), "bracket does not respect the grading")
        checks.append("grading")
    return Report(True, checks, None, "pass")


@dataclass
class GradedParts:
    parts: dict
    L_ge: tuple
    L_gt: tuple
    L_lt: tuple
    L_le: tuple


def graded_parts(g: LieSuperAlgebra) -> GradedParts:
    if g.grading is None:
        raise AlgebraError(f"{g.name} carries no grading")
    parts: dict = {}
    for i, d in enumerate(g.grading):
        parts.setdefault(d, []).append(i)
    for (i, j), vec in g.brackets.items():
        for k in vec:
            if g.grading[k] != g.grading[i] + g.grading[j]:
                raise AlgebraError(f"grading is not compatible at ({i}, {j})")
    parts = {d: tuple(v) for d, v in sorted(parts.items())}
    pick = lambda pred: tuple(i for i, d in enumerate(g.grading) if pred(d))  # noqa: E731
    return GradedParts(
        parts,
        pick(lambda d: d >= 0),
        pick(lambda d: d > 0),
        pick(lambda d: d < 0),
        pick(lambda d: d <= 0),
    )


def is_abelian(g: LieSuperAlgebra, idx) -> bool:
    return all(not g.bracket(i, j) for i in idx for j in idx)


def subspace_closed(g: LieSuperAlgebra, idx) -> bool:
    s = set(idx)
    return all(k in s for i in idx for j in idx for k in g.bracket(i, j))


BUILDERS = {
    "gl": lambda p, q: build_gl(Format.standard(p, q)),
    "sl": lambda p, q: build_sl(Format.standard(p, q)),
    "osp": build_osp,
}


def by_name(name: str) -> LieSuperAlgebra:
    """Parse names such as ``sl11``, ``sl(1|2)``, ``vect2``, ``vect(0|3)``, ``pe2``."""
    import re

    s = name.replace(" ", "").lower()
    m = re.fullmatch(r"(gl|sl|osp)\(?(\d)\|?(\d)\)?", s)
    if m:
        kind, p, q = m.group(1), int(m.group(2)), int(m.group(3))
        if kind == "osp":
            return build_osp(p, q)
        return BUILDERS[kind](p, q)
    m = re.fullmatch(r"(vect|svect|h|sh)\(?(?:0\|)?(\d+)\)?", s)
    if m:
        n = int(m.group(2))
        return {"vect": build_vect, "svect": build_svect, "h": build_h, "sh": build_sh}[m.group(1)](n)
    m = re.fullmatch(r"(pe|spe)\(?(\d+)\)?", s)
    if m:
        n = int(m.group(2))
        return build_pe(n) if m.group(1) == "pe" else build_spe(n)
    raise AlgebraError(f"unknown algebra name {name!r}")
