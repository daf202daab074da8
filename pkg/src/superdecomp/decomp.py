"""Intertwiners, endomorphism algebras and Krull-Schmidt decomposition.

Everything works in the category with even morphisms. Splitting uses the
spectral projectors of an endomorphism whose minimal polynomial has two
coprime factors over Q, so idempotents come out exactly without iteration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from superdecomp import linalg
from superdecomp.linalg import ONE, ZERO
from superdecomp.repcore import Representation, _sign
from superdecomp.superlinalg import EVEN, ODD, Format, parity_operator


class DecompositionError(ValueError):
    pass


# --------------------------------------------------------------------------
# intertwiners


def _unit_index(v_fmt, w_fmt, parity):
    """Unknown index for each matrix unit (r, c) of the given parity."""
    idx = {}
    for r, a in enumerate(w_fmt):
        for c, b in enumerate(v_fmt):
            if (a + b) % 2 == parity:
                idx[(r, c)] = len(idx)
    return idx


def _action_indices(v: Representation):
    g = v.algebra
    try:
        return g.generators
    except Exception:  # pragma: no cover - generators only fail on broken input
        return tuple(range(g.dim))


def hom_space(v: Representation, w: Representation, parity=None) -> dict:
    """Bases of ``{T : rho_W(x) T = (-1)^{p(x)p(T)} T rho_V(x)}`` split by parity.

    Returns ``{0: [even matrices], 1: [odd matrices]}`` (``dim W x dim V``).
    It is enough to impose the equations on a generating set of the algebra.
    """
    if v.algebra is not w.algebra and v.algebra.to_json() != w.algebra.to_json():
        raise DecompositionError("modules over different algebras")
    gens = _action_indices(v)
    out = {}
    for par in (EVEN, ODD) if parity is None else (parity,):
        idx = _unit_index(v.format, w.format, par)
        rows = []
        for x in gens:
            s = _sign(v.algebra.parities[x], par)
            rv, rw = v.matrices[x], w.matrices[x]
            nz_w = [(r, k, rw[r, k]) for r in range(w.dim) for k in range(w.dim) if rw[r, k] != 0]
            nz_v = [(l, c, rv[l, c]) for l in range(v.dim) for c in range(v.dim) if rv[l, c] != 0]
            eqs: dict = {}
            # (rho_W T)[r, c] = sum_k rw[r,k] T[k,c]
            for r, k, a in nz_w:
                for c in range(v.dim):
                    u = idx.get((k, c))
                    if u is not None:
                        e = eqs.setdefault((r, c), {})
                        e[u] = e.get(u, ZERO) + a
            # (T rho_V)[r, c] = sum_l T[r,l] rv[l,c]
            for l, c, a in nz_v:
                for r in range(w.dim):
                    u = idx.get((r, l))
                    if u is not None:
                        e = eqs.setdefault((r, c), {})
                        e[u] = e.get(u, ZERO) - s * a
            rows.extend({k: y for k, y in e.items() if y != 0} for e in eqs.values())
        rows = [r for r in rows if r]
        units = list(idx)
        basis = []
        for vec in linalg.kernel_rows(rows, len(idx)):
            t = linalg.zeros(w.dim, v.dim)
            for u, y in vec.items():
                t[units[u]] = y
            basis.append(t)
        out[par] = basis
    return out


def is_intertwiner(v: Representation, w: Representation, t: np.ndarray, parity=EVEN) -> bool:
    g = v.algebra
    for x in range(g.dim):
        s = _sign(g.parities[x], parity)
        if not np.all(w.matrices[x] @ t == (t @ v.matrices[x]) * s):
            return False
    return True


# --------------------------------------------------------------------------
# matrix algebras


class MatrixAlgebra:
    """A unital subalgebra of ``M_n(Q)`` given by a basis of matrices."""

    def __init__(self, basis, n: int | None = None):
        basis = list(basis)
        self.n = basis[0].shape[0] if basis else (n or 0)
        self.basis = basis
        cols = linalg.columns([b.reshape(-1) for b in basis], self.n * self.n)
        self._flat = cols
        self._pivots = linalg.pivot_columns(cols.T.copy()) if basis else []
        # coordinates are read off a set of entries where the basis is invertible
        if basis:
            sub = cols[self._pivots, :]
            self._inv = linalg.inverse(sub)
        self._table = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, m: np.ndarray, check=True) -> np.ndarray:
        flat = m.reshape(-1)
        c = self._inv @ flat[self._pivots]
        if check:
            recon = self._flat @ c
            if not np.all(recon == flat):
                raise DecompositionError("matrix is not in the algebra")
        return c

    def contains(self, m: np.ndarray) -> bool:
        try:
            self.coords(m)
        except DecompositionError:
            return False
        return True

    def element(self, c) -> np.ndarray:
        out = linalg.zeros(self.n)
        for x, b in zip(c, self.basis):
            if x != 0:
                out = out + b * x
        return out

    def left_regular(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``b -> a b`` in the basis."""
        return linalg.columns([self.coords(a @ b, check=False) for b in self.basis], self.dim)

    def structure_constants(self):
        """Integer tensor ``S`` and denominator ``d`` with ``b_i b_j = sum_l S[i,j,l]/d b_l``."""
        if self._table is None:
            k, n = self.dim, self.n
            stack, den, bound = linalg.to_int(np.stack(self.basis))
            rows = [p // n for p in self._pivots]
            cols = [p % n for p in self._pivots]
            prod = np.empty((k, k, k), dtype=object)
            for t, (r, c) in enumerate(zip(rows, cols)):
                left = stack[:, r, :]
                right = stack[:, :, c].T
                prod[:, :, t] = linalg.int_matmul(left, right, bound, bound).astype(object)
            inv_int, inv_den, _ = linalg.to_int(self._inv)
            table = prod.reshape(k * k, k) @ inv_int.astype(object).T
            self._table = (table.reshape(k, k, k), den * den * inv_den)
        return self._table

    def is_closed(self) -> bool:
        return all(self.contains(a @ b) for a in self.basis for b in self.basis)

    def has_identity(self) -> bool:
        return self.contains(linalg.eye(self.n))


def end_algebra(v: Representation) -> MatrixAlgebra:
    return MatrixAlgebra(hom_space(v, v, EVEN)[EVEN], v.dim)


def radical(a: MatrixAlgebra) -> list[np.ndarray]:
    """Jacobson radical as the null space of ``(x, y) -> tr L_x L_y``."""
    if a.dim == 0:
        return []
    # (L_i)_{l,m} = S[i,m,l], so tr L_i L_j = sum S[i,m,l] S[j,l,m]
    table, _ = a.structure_constants()
    k = a.dim
    left = table.reshape(k, k * k)
    right = table.transpose(0, 2, 1).reshape(k, k * k)
    gram_int = left @ right.T
    gram = np.empty((k, k), dtype=object)
    for idx, x in np.ndenumerate(gram_int):
        gram[idx] = Fraction(int(x))
    return [a.element(c) for c in linalg.kernel_basis(gram)]


def radical_via_action(a: MatrixAlgebra) -> list[np.ndarray]:
    """Radical from the trace form of the given faithful action on Q^n."""
    if a.dim == 0:
        return []
    k = a.dim
    gram = linalg.zeros(k)
    for i in range(k):
        for j in range(i, k):
            p = a.basis[i] @ a.basis[j]
            gram[i, j] = gram[j, i] = sum((p[r, r] for r in range(a.n)), ZERO)
    return [a.element(c) for c in linalg.kernel_basis(gram)]


def lift_idempotent(e: np.ndarray, max_iter: int = 64):
    """Iterate ``e -> 3e^2 - 2e^3`` until idempotent; returns (e, iterations)."""
    for it in range(max_iter + 1):
        e2 = e @ e
        if np.all(e2 == e):
            return e, it
        e = e2 * 3 - (e2 @ e) * 2
    raise DecompositionError("idempotent lifting did not converge")


# --------------------------------------------------------------------------
# indecomposability and decomposition


def is_indecomposable(v: Representation) -> bool:
    if v.dim == 0:
        return False
    a = end_algebra(v)
    return a.dim - len(radical(a)) == 1


def _poly_factors(coeffs):
    """Factor a rational polynomial (constant term first) over Q.

    Returns a list of ``(factor coefficients, multiplicity)``.
    """
    x = sympy.Symbol("x")
    p = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])), x)
    _, facs = sympy.factor_list(p)
    out = []
    for f, m in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(f, x).all_coeffs())]
        out.append((cs, m))
    return out


def _poly_pow(coeffs, m):
    out = [ONE]
    for _ in range(m):
        res = [ZERO] * (len(out) + len(coeffs) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(coeffs):
                res[i + j] += a * b
        out = res
    return out


def _try_split(candidates):
    wide = False
    for x in candidates:
        facs = _poly_factors(linalg.min_poly(x))
        if len(facs) >= 2:
            return (x, facs), wide
        if facs and len(facs[0][0]) > 2:
            wide = True
    return None, wide


def _rref_key(cols: np.ndarray) -> tuple:
    """Canonical key of a column space (reduced row echelon form of its basis)."""
    m = cols.T.copy()
    rows, ncols = m.shape
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] / m[r, c]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[r] * m[i, c]
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in m[:r])


def _intersect(s: np.ndarray, t: np.ndarray):
    ker = linalg.kernel_basis(np.concatenate([s, -t], axis=1))
    if not ker:
        return None
    return linalg.columns([s @ k[: s.shape[1]] for k in ker], s.shape[0])


def _word_subspaces(v: Representation, rng: random.Random, rounds: int = 2, cap: int = 60):
    """End-invariant subspaces cut out by the action.

    Starts from kernels and images of the generators and of their pairwise
    products, then closes under images ``g U``, preimages ``g^-1 U`` and
    intersections. For V = W (x) Q^m every such space is U_W (x) Q^m, so the
    small ones hold vectors of low tensor rank.
    """
    n = v.dim
    gens = [m for m in v.matrices if not linalg.is_zero(m)]
    words = gens + [x @ y for x in gens for y in gens]
    found: dict = {}

    def add(cols):
        if cols is None or not 0 < cols.shape[1] < n:
            return
        key = _rref_key(cols)
        if key not in found and len(found) < cap:
            found[key] = linalg.columns([linalg.vector(r) for r in key], n)

    for w in words:
        if not linalg.is_zero(w):
            add(linalg.columns(linalg.kernel_basis(w), n))
            add(linalg.columns(linalg.image_basis(w), n))
    for _ in range(rounds):
        current = list(found.values())
        for u in current:
            for g in gens:
                img = linalg.image_basis(g @ u)
                if img:
                    add(linalg.columns(img, n))
                # preimage: x with g x in U
                pre = linalg.kernel_basis(np.concatenate([g, -u], axis=1))
                add(linalg.columns([k[:n] for k in pre], n) if pre else None)
        current = sorted(found.values(), key=lambda c: c.shape[1])[:20]
        for i in range(len(current)):
            for j in range(i + 1, len(current)):
                add(_intersect(current[i], current[j]))
    out = sorted(found.values(), key=lambda c: c.shape[1])
    # with a one-dimensional W every vector already has tensor rank one
    out.append(linalg.eye(n))
    return out


def _annihilator_candidates(a: MatrixAlgebra, v: Representation, rng: random.Random, limit: int = 40):
    """Elements of ``a`` killing a vector taken from a small invariant subspace."""
    seen = 0
    for space in _word_subspaces(v, rng):
        probes = [space[:, j] for j in range(space.shape[1])]
        probes.append(space @ linalg.vector([rng.randint(-3, 3) for _ in range(space.shape[1])]))
        for u in probes:
            if linalg.is_zero(u):
                continue
            evals = linalg.columns([b @ u for b in a.basis], v.dim)
            for c in linalg.kernel_basis(evals):
                yield a.element(c)
            seen += 1
            if seen >= limit:
                return


def _split_element(a: MatrixAlgebra, rng: random.Random, tries: int = 24, v: Representation | None = None):
    """An element of ``a`` whose minimal polynomial has two coprime factors.

    Random elements first. When those all have irreducible minimal polynomials
    (a matrix block in an awkward basis does this), fall back on elements that
    annihilate a vector from a small action-defined subspace; such an element
    is singular, so if it is not nilpotent its minimal polynomial splits.
    Raises when only field-extension splittings are found.
    """
    candidates = list(a.basis)
    for _ in range(tries):
        c = [rng.randint(-3, 3) for _ in a.basis]
        candidates.append(a.element(c))
    found, wide = _try_split(candidates)
    if found:
        return found
    if v is not None:
        for x in _annihilator_candidates(a, v, rng):
            found, _ = _try_split([x])
            if found:
                return found
    if wide:
        raise DecompositionError("splitting requires field extension")
    raise DecompositionError("no rational splitting element found")


@dataclass
class Summand:
    module: Representation
    multiplicity: int = 1
    label: str = ""


@dataclass
class DecompositionReport:
    summands: list
    witness: np.ndarray
    blocks: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.blocks)

    def to_json(self) -> dict:
        return {
            "summands": [
                {
                    "label": s.label,
                    "sdim": f"{s.module.sdim[0]}|{s.module.sdim[1]}",
                    "multiplicity": s.multiplicity,
                }
                for s in self.summands
            ],
            "witness": [[linalg.fstr(x) for x in row] for row in self.witness],
        }


def _homogeneous_generalized_kernel(m: np.ndarray, fmt: Format):
    """Kernel of an even operator, with a basis of homogeneous vectors."""
    vecs, out_fmt = [], []
    for par in (EVEN, ODD):
        idx = [i for i in range(len(fmt)) if fmt[i] == par]
        if not idx:
            continue
        sub = m[np.ix_(idx, idx)]
        for v in linalg.kernel_basis(sub):
            full = linalg.zeros(len(fmt), 1)[:, 0]
            for k, i in enumerate(idx):
                full[i] = v[k]
            vecs.append(full)
            out_fmt.append(par)
    return vecs, out_fmt


def restrict_to_basis(v: Representation, cols: np.ndarray, fmt) -> Representation:
    """Action on the invariant subspace spanned by the columns of ``cols``."""
    mats = []
    for m in v.matrices:
        x = linalg.solve(cols, m @ cols)
        if x is None:
            raise DecompositionError("subspace is not invariant")
        mats.append(x)
    return Representation(v.algebra, fmt, mats)


def _split_once(v: Representation, rng):
    """Either ``None`` (indecomposable) or two complementary submodules."""
    a = end_algebra(v)
    if a.dim - len(radical(a)) == 1:
        return None
    x, facs = _split_element(a, rng, v=v)
    first = _poly_pow(facs[0][0], facs[0][1])
    rest = [ONE]
    for f, m in facs[1:]:
        rest = _mul(rest, _poly_pow(f, m))
    parts = []
    for poly in (first, rest):
        vecs, fmt = _homogeneous_generalized_kernel(linalg.poly_eval(poly, x), v.format)
        parts.append((linalg.columns(vecs, v.dim), Format(fmt)))
    return parts


def _mul(p, q):
    res = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            res[i + j] += a * b
    return res


def _decompose_blocks(v: Representation, rng):
    """List of ``(columns in V's basis, indecomposable module)``."""
    parts = _split_once(v, rng)
    if parts is None:
        return [(linalg.eye(v.dim), v)]
    out = []
    for cols, fmt in parts:
        sub = restrict_to_basis(v, cols, fmt)
        for c2, mod in _decompose_blocks(sub, rng):
            out.append((cols @ c2, mod))
    return out


def decompose(v: Representation, seed: int = 0, group=True) -> DecompositionReport:
    """Krull-Schmidt decomposition with a change-of-basis witness.

    Conjugating ``v`` by ``witness`` (``P^{-1} rho P``) gives the block-diagonal
    sum of ``blocks`` in order.
    """
    rng = random.Random(seed)
    if v.dim == 0:
        return DecompositionReport([], linalg.zeros(0), [])
    blocks = _decompose_blocks(v, rng)
    witness = np.concatenate([c for c, _ in blocks], axis=1)
    mods = [m for _, m in blocks]
    summands: list[Summand] = []
    if group:
        for m in mods:
            for s in summands:
                if s.module.format.sdim == m.format.sdim and are_isomorphic(s.module, m)[0]:
                    s.multiplicity += 1
                    break
            else:
                summands.append(Summand(m))
    else:
        summands = [Summand(m) for m in mods]
    return DecompositionReport(summands, witness, mods)


def check_witness(v: Representation, report: DecompositionReport) -> bool:
    p = report.witness
    inv = linalg.inverse(p)
    for i, m in enumerate(v.matrices):
        target = linalg.block_diag(*(b.matrices[i] for b in report.blocks))
        if not np.all(inv @ m @ p == target):
            return False
    return True


# --------------------------------------------------------------------------
# isomorphism


def _enumerated_points(m: int, count: int):
    """Deterministic rational points on shifted moment curves: 0, 1, -1, 2, -2, ..."""
    vals = [0]
    k = 1
    while len(vals) < count + 1:
        vals.extend([k, -k])
        k += 1
    for c in vals[:count]:
        yield [Fraction(c) ** (i + 1) + i for i in range(m)]


def _is_nilpotent(m: np.ndarray) -> bool:
    p = m.copy()
    n = m.shape[0]
    k = 1
    while k < n:
        p = p @ p
        k *= 2
    return linalg.is_zero(p)


def _iso_indecomposable(v, w):
    """Exact test for indecomposable V: iso iff some S T is not nilpotent."""
    hv = hom_space(v, w, EVEN)[EVEN]
    hw = hom_space(w, v, EVEN)[EVEN]
    for t in hv:
        for s in hw:
            if not _is_nilpotent(s @ t):
                if linalg.rank(t) == v.dim:
                    return True, t
    return False, None


def are_isomorphic(v: Representation, w: Representation, seed: int = 0):
    """``(bool, witness)``; the witness T is an even invertible intertwiner V -> W."""
    if v.format.sdim != w.format.sdim:
        return False, None
    if v.dim == 0:
        return True, linalg.zeros(0)
    basis = hom_space(v, w, EVEN)[EVEN]
    if not basis:
        return False, None
    # V = W forces dim Hom(V, W) = dim End V = dim End W
    if len(hom_space(v, v, EVEN)[EVEN]) != len(basis) or len(hom_space(w, w, EVEN)[EVEN]) != len(basis):
        return False, None
    n = v.dim
    # generic element sum t_i T_i; det is a polynomial of degree <= n
    for pt in _enumerated_points(len(basis), n + 1):
        t = linalg.zeros(n)
        for c, b in zip(pt, basis):
            if c:
                t = t + b * c
        if linalg.rank(t) == n:
            return True, t
    # no witness on the enumerated points: decide exactly via summands
    return _iso_by_summands(v, w, seed)


def _iso_by_summands(v, w, seed):
    dv = decompose(v, seed, group=False)
    dw = decompose(w, seed, group=False)
    if len(dv.blocks) != len(dw.blocks):
        return False, None
    used = [False] * len(dw.blocks)
    pieces = [None] * len(dv.blocks)
    for i, a in enumerate(dv.blocks):
        for j, b in enumerate(dw.blocks):
            if used[j] or a.format.sdim != b.format.sdim:
                continue
            ok, t = _iso_indecomposable(a, b)
            if ok:
                used[j] = True
                pieces[i] = (j, t)
                break
        else:
            return False, None
    # assemble V -> W: v = Pv (sum blocks), w = Pw (sum blocks)
    n = v.dim
    offs_w = np.cumsum([0] + [b.dim for b in dw.blocks])
    offs_v = np.cumsum([0] + [b.dim for b in dv.blocks])
    big = linalg.zeros(n)
    for i, (j, t) in enumerate(pieces):
        big[offs_w[j] : offs_w[j + 1], offs_v[i] : offs_v[i + 1]] = t
    t = dw.witness @ big @ linalg.inverse(dv.witness)
    return True, t


# --------------------------------------------------------------------------
# irreducibility


def _int_gens(mats):
    out = []
    for m in mats:
        if linalg.is_zero(m):
            continue
        mi, _, _ = linalg.to_int(m)
        out.append(np.asarray(mi, dtype=object))
    return out


def _span_closure(gens, start, shape):
    """Span of ``start`` closed under left multiplication by integer ``gens``.

    New directions are stored as their reduced primitive rows, so entries stay
    small; the span is unaffected.
    """
    pivots: dict = {}
    size = int(np.prod(shape))

    def add(x):
        row = {i: int(y) for i, y in enumerate(x.reshape(-1)) if y != 0}
        if not row:
            return None
        row = linalg._kernel.reduce_row(row, pivots)
        if not row:
            return None
        pivots[min(row)] = row
        vec = np.zeros(size, dtype=object)
        for i, y in row.items():
            vec[i] = y
        return vec.reshape(shape)

    frontier = [y for y in (add(x) for x in start) if y is not None]
    while frontier:
        new = []
        for b in frontier:
            for g in gens:
                y = add(g @ b)
                if y is not None:
                    new.append(y)
        frontier = new
    return pivots


def generated_subalgebra_dim(mats, n: int) -> int:
    """Dimension of the unital associative algebra generated by ``mats``."""
    ident = np.eye(n, dtype=np.int64).astype(object)
    return len(_span_closure(_int_gens(mats), [ident], (n, n)))


def submodule_generated(v: Representation, vectors) -> list[np.ndarray]:
    """Basis of the submodule generated by ``vectors`` (as Fraction vectors)."""
    gens = _int_gens([v.matrices[i] for i in _action_indices(v)])
    start = []
    for x in vectors:
        xi, _, _ = linalg.to_int(np.asarray(x, dtype=object).reshape(-1, 1))
        start.append(np.asarray(xi, dtype=object))
    pivots = _span_closure(gens, start, (v.dim, 1))
    out = []
    for row in pivots.values():
        vec = linalg.zeros(v.dim, 1)[:, 0]
        for i, y in row.items():
            vec[i] = Fraction(y)
        out.append(vec)
    return out


def is_irreducible(v: Representation) -> bool:
    """Super-irreducibility over C.

    Induced modules with a top piece recorded use the criterion that every
    nonzero submodule meets ``y_top (x) V``; otherwise Burnside's theorem on the
    algebra generated by the action and the parity operator.
    """
    if v.dim == 0:
        return False
    top = getattr(v, "top_indices", None)
    if top is not None and getattr(v, "l0_irreducible", False):
        vecs = []
        for i in top:
            e = linalg.zeros(v.dim, 1)[:, 0]
            e[i] = ONE
            vecs.append(e)
        return len(submodule_generated(v, vecs)) == v.dim
    n = v.dim
    mats = [v.matrices[i] for i in _action_indices(v)] + [parity_operator(v.format)]
    return generated_subalgebra_dim(mats, n) == n * n
