"""Grassmann algebra, vector fields on the purely odd superspace, forms.

Generators are written ``x1 .. xn`` (odd) and ``dx1 .. dxn`` (even).
A monomial in the odd generators is a strictly increasing tuple of
indices; all signs are normalized to that order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations

from superdecomp.linalg import ZERO, frac, fstr
from superdecomp.superlinalg import ParityError


def merge_sign(s: tuple, t: tuple):
    """``x^S x^T = sign * x^{S cup T}``; returns ``(0, None)`` on overlap."""
    if set(s) & set(t):
        return 0, None
    inv = 0
    for a in s:
        for b in t:
            if a > b:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(s + t))


def monomials(n: int, degree: int | None = None):
    """All odd monomials on ``n`` generators, by degree then lexicographically."""
    degs = range(n + 1) if degree is None else [degree]
    for k in degs:
        yield from combinations(range(1, n + 1), k)


def _mono_str(s) -> str:
    return "".join(f"x{i}" for i in s)


class GrassmannElement:
    """Element of the Grassmann algebra on ``n`` odd generators."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = {}
        for s, c in (coeffs or {}).items():
            c = frac(c)
            if c:
                s = tuple(s)
                if any(i < 1 or i > n for i in s) or list(s) != sorted(set(s)):
                    raise ValueError(f"bad monomial {s} for n={n}")
                self.coeffs[s] = c

    @classmethod
    def gen(cls, n: int, i: int) -> "GrassmannElement":
        return cls(n, {(i,): 1})

    @classmethod
    def const(cls, n: int, c=1) -> "GrassmannElement":
        return cls(n, {(): c})

    @classmethod
    def mono(cls, n: int, s, c=1) -> "GrassmannElement":
        return cls(n, {tuple(s): c})

    def _same(self, other):
        if self.n != other.n:
            raise ValueError(f"generator counts differ: {self.n} vs {other.n}")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, ZERO) + c
        return GrassmannElement(self.n, out)

    def __neg__(self):
        return GrassmannElement(self.n, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GrassmannElement":
        c = frac(c)
        return GrassmannElement(self.n, {s: c * v for s, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            return self.scale(other)
        return grassmann_mul(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GrassmannElement.const(self.n, other)
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def parity(self):
        ps = {len(s) % 2 for s in self.coeffs}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for s in sorted(self.coeffs, key=lambda s: (len(s), s)):
            c = fstr(self.coeffs[s])
            terms.append(f"{c}*{_mono_str(s)}" if s else c)
        return " + ".join(terms)

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str, n: int) -> "GrassmannElement":
        form = FormPolynomial.parse(text, n)
        if any(sum(a) for _, a in form.coeffs):
            raise ValueError("differentials are not allowed in a Grassmann element")
        return cls(n, {s: c for (s, _), c in form.coeffs.items()})


def grassmann_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    a._same(b)
    out: dict = {}
    for s, c in a.coeffs.items():
        for t, d in b.coeffs.items():
            sign, u = merge_sign(s, t)
            if sign:
                out[u] = out.get(u, ZERO) + sign * c * d
    return GrassmannElement(a.n, out)


def partial_derivative(a: GrassmannElement, i: int) -> GrassmannElement:
    """Left derivative by the ``i``-th odd generator (1-based)."""
    if not 1 <= i <= a.n:
        raise IndexError(f"derivative index {i} out of range 1..{a.n}")
    out: dict = {}
    for s, c in a.coeffs.items():
        if i in s:
            pos = s.index(i)
            u = s[:pos] + s[pos + 1 :]
            out[u] = out.get(u, ZERO) + (-c if pos % 2 else c)
    return GrassmannElement(a.n, out)


def top_element(n: int) -> GrassmannElement:
    """``x1 x2 ... xn``."""
    return GrassmannElement.mono(n, tuple(range(1, n + 1)))


class SuperVectorField:
    """``D = sum_i f_i d/dx_i`` on the odd superspace of dimension 0|n."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components):
        comps = list(components)
        if len(comps) != n:
            raise ValueError(f"need {n} components, got {len(comps)}")
        for f in comps:
            if f.n != n:
                raise ValueError("component has wrong generator count")
        self.n = n
        self.components = tuple(comps)

    @classmethod
    def monomial(cls, n: int, s, i: int, c=1) -> "SuperVectorField":
        comps = [GrassmannElement(n) for _ in range(n)]
        comps[i - 1] = GrassmannElement.mono(n, s, c)
        return cls(n, comps)

    @classmethod
    def zero(cls, n: int) -> "SuperVectorField":
        return cls(n, [GrassmannElement(n) for _ in range(n)])

    def __add__(self, other):
        return SuperVectorField(self.n, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return SuperVectorField(self.n, [a - b for a, b in zip(self.components, other.components)])

    def scale(self, c) -> "SuperVectorField":
        return SuperVectorField(self.n, [f.scale(c) for f in self.components])

    def __eq__(self, other):
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    @property
    def parity(self):
        ps = set()
        for f in self.components:
            if f.is_zero():
                continue
            p = f.parity
            if p is None:
                return None
            ps.add((p + 1) % 2)
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def homogeneous_parity(self) -> int:
        p = self.parity
        if p is None:
            raise ParityError("vector field is not homogeneous")
        return p

    def __call__(self, f: GrassmannElement) -> GrassmannElement:
        out = GrassmannElement(self.n)
        for i, fi in enumerate(self.components, start=1):
            if fi.coeffs:
                out = out + fi * partial_derivative(f, i)
        return out

    def coords(self) -> dict:
        """Sparse coordinates in the monomial basis, keyed by ``(S, i)``."""
        out = {}
        for i, f in enumerate(self.components, start=1):
            for s, c in f.coeffs.items():
                out[(s, i)] = c
        return out

    def __str__(self):
        terms = []
        for (s, i), c in sorted(self.coords().items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            m = f"{_mono_str(s)}*d{i}" if s else f"d{i}"
            terms.append(f"{fstr(c)}*{m}")
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


def field_label(s, i) -> str:
    return f"{_mono_str(s)}*d{i}" if s else f"d{i}"


def field_bracket(d: SuperVectorField, e: SuperVectorField) -> SuperVectorField:
    """Supercommutator of two homogeneous derivations, in component form."""
    pd = d.homogeneous_parity()
    pe = e.homogeneous_parity()
    sign = -1 if pd * pe else 1
    comps = []
    for di, ei in zip(d.components, e.components):
        comps.append(d(ei) - e(di).scale(sign))
    return SuperVectorField(d.n, comps)


def divergence(d: SuperVectorField) -> GrassmannElement:
    out = GrassmannElement(d.n)
    for i, f in enumerate(d.components, start=1):
        if f.is_zero():
            continue
        p = f.parity
        if p is None:
            raise ParityError(f"component {i} is not homogeneous")
        term = partial_derivative(f, i)
        out = out + (-term if p else term)
    return out


# --------------------------------------------------------------------------
# differential forms: monomials x^S dx^alpha, dx even and commuting


class FormPolynomial:
    """Polynomial differential form; keys are ``(S, alpha)``."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = {}
        for (s, a), c in (coeffs or {}).items():
            c = frac(c)
            if c:
                a = tuple(a)
                if len(a) != n or any(x < 0 for x in a):
                    raise ValueError(f"bad exponent {a}")
                self.coeffs[(tuple(s), a)] = c

    @classmethod
    def function(cls, f: GrassmannElement) -> "FormPolynomial":
        z = (0,) * f.n
        return cls(f.n, {(s, z): c for s, c in f.coeffs.items()})

    @classmethod
    def mono(cls, n: int, s, alpha, c=1) -> "FormPolynomial":
        return cls(n, {(tuple(s), tuple(alpha)): c})

    @classmethod
    def dx(cls, n: int, i: int) -> "FormPolynomial":
        a = [0] * n
        a[i - 1] = 1
        return cls.mono(n, (), a)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return FormPolynomial(self.n, out)

    def __neg__(self):
        return FormPolynomial(self.n, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FormPolynomial":
        c = frac(c)
        return FormPolynomial(self.n, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, FormPolynomial):
            return self.scale(other)
        out: dict = {}
        for (s, a), c in self.coeffs.items():
            for (t, b), d in other.coeffs.items():
                sign, u = merge_sign(s, t)
                if sign:
                    key = (u, tuple(x + y for x, y in zip(a, b)))
                    out[key] = out.get(key, ZERO) + sign * c * d
        return FormPolynomial(self.n, out)

    def __eq__(self, other):
        if not isinstance(other, FormPolynomial):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def parity(self):
        ps = {len(s) % 2 for s, _ in self.coeffs}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def dx_degree(self):
        ds = {sum(a) for _, a in self.coeffs}
        return ds.pop() if len(ds) == 1 else (None if ds else 0)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for (s, a) in sorted(self.coeffs, key=lambda k: (sum(k[1]), len(k[0]), k[0], k[1])):
            parts = [fstr(self.coeffs[(s, a)])]
            for i, e in enumerate(a, start=1):
                if e == 1:
                    parts.append(f"dx{i}")
                elif e > 1:
                    parts.append(f"dx{i}^{e}")
            if s:
                parts.append(_mono_str(s))
            terms.append("*".join(parts))
        return " + ".join(terms)

    __repr__ = __str__

    _num = re.compile(r"^\d+(/\d+)?$")
    _dx = re.compile(r"^dx(\d+)(?:\^(\d+))?$")
    _xs = re.compile(r"^(?:x\d+)+$")

    @classmethod
    def parse(cls, text: str, n: int) -> "FormPolynomial":
        """Parse the canonical text form, e.g. ``"3/2*x1x2 + 1*dx1^2*x2"``."""
        body = text.replace(" ", "")
        if not body:
            raise ValueError("empty expression")
        out = FormPolynomial(n)
        for m in re.finditer(r"([+-]?)([^+-]+)", body):
            sign, term = m.group(1), m.group(2)
            coeff = Fraction(-1 if sign == "-" else 1)
            alpha = [0] * n
            elem = GrassmannElement.const(n)
            for tok in term.split("*"):
                if cls._num.match(tok):
                    coeff *= Fraction(tok)
                elif (dm := cls._dx.match(tok)):
                    i = int(dm.group(1))
                    if not 1 <= i <= n:
                        raise ValueError(f"index {i} out of range in {tok!r}")
                    alpha[i - 1] += int(dm.group(2) or 1)
                elif cls._xs.match(tok):
                    for i in re.findall(r"x(\d+)", tok):
                        i = int(i)
                        if not 1 <= i <= n:
                            raise ValueError(f"index {i} out of range in {tok!r}")
                        elem = elem * GrassmannElement.gen(n, i)
                elif tok == "0":
                    coeff = ZERO
                else:
                    raise ValueError(f"cannot parse factor {tok!r}")
            for s, c in elem.coeffs.items():
                out = out + FormPolynomial.mono(n, s, alpha, coeff * c)
        return out


def exterior_d(w: FormPolynomial) -> FormPolynomial:
    """``d = sum_i dx_i d/dx_i``; odd, raises the dx-degree by one."""
    out: dict = {}
    n = w.n
    for (s, a), c in w.coeffs.items():
        for pos, i in enumerate(s):
            u = s[:pos] + s[pos + 1 :]
            b = list(a)
            b[i - 1] += 1
            key = (u, tuple(b))
            out[key] = out.get(key, ZERO) + (-c if pos % 2 else c)
    return FormPolynomial(n, out)


def lie_derivative(d: SuperVectorField, w: FormPolynomial) -> FormPolynomial:
    """Lie derivative: ``D`` on functions, ``(-1)^{p(D)} d(D f)`` on ``df``."""
    p = d.homogeneous_parity()
    n = d.n
    diffs = [exterior_d(FormPolynomial.function(f)) for f in d.components]
    if p:
        diffs = [-x for x in diffs]
    out = FormPolynomial(n)
    for (s, a), c in w.coeffs.items():
        xs = GrassmannElement.mono(n, s)
        dxa = FormPolynomial.mono(n, (), a)
        out = out + (FormPolynomial.function(d(xs)) * dxa).scale(c)
        sign = -1 if (p * len(s)) % 2 else 1
        xs_form = FormPolynomial.mono(n, s, (0,) * n)
        for j in range(n):
            if a[j] == 0 or diffs[j].is_zero():
                continue
            b = list(a)
            b[j] -= 1
            rest = FormPolynomial.mono(n, (), b, a[j])
            out = out + (xs_form * (rest * diffs[j])).scale(sign * c)
    return out


def form_basis(n: int, degree: int):
    """Monomials ``x^S dx^alpha`` with ``|alpha| = degree``, in a fixed order."""
    alphas = sorted(_compositions(degree, n), reverse=True)
    return [(s, a) for a in alphas for s in monomials(n)]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest
