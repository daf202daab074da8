"""Superspaces, parity formats and supermatrices over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from superdecomp import linalg
from superdecomp.linalg import ZERO, frac

EVEN = 0
ODD = 1


class FormatError(ValueError):
    """Raised when supermatrices of different formats are combined."""


class ParityError(ValueError):
    """Raised when an operation needs a homogeneous input and gets a mixed one."""


class Format(tuple):
    """Ordered parities of a homogeneous basis (0 even, 1 odd)."""

    def __new__(cls, parities=()):
        if isinstance(parities, str):
            parities = [int(c) for c in parities]
        parities = tuple(int(p) for p in parities)
        if any(p not in (0, 1) for p in parities):
            raise FormatError(f"parities must be 0 or 1, got {parities}")
        return super().__new__(cls, parities)

    @classmethod
    def standard(cls, p: int, q: int) -> "Format":
        return cls((EVEN,) * p + (ODD,) * q)

    @property
    def sdim(self) -> tuple[int, int]:
        odd = sum(self)
        return (len(self) - odd, odd)

    def flipped(self) -> "Format":
        return Format(1 - p for p in self)

    def __add__(self, other):
        return Format(tuple(self) + tuple(other))

    def __str__(self):
        return "".join(str(p) for p in self)

    def __repr__(self):
        return f"Format('{self}')"


def sdim_str(fmt) -> str:
    p, q = Format(fmt).sdim
    return f"{p}|{q}"


@dataclass(frozen=True)
class SuperSpace:
    format: Format

    @classmethod
    def of(cls, p: int, q: int) -> "SuperSpace":
        return cls(Format.standard(p, q))

    @property
    def dim_even(self) -> int:
        return self.format.sdim[0]

    @property
    def dim_odd(self) -> int:
        return self.format.sdim[1]

    @property
    def dim(self) -> int:
        return len(self.format)

    @property
    def sdim(self) -> tuple[int, int]:
        return self.format.sdim

    def __str__(self):
        return f"{self.dim_even}|{self.dim_odd}"


def entry_parity(fmt, i: int, j: int) -> int:
    return (fmt[i] + fmt[j]) % 2


def matrix_parity(fmt, a: np.ndarray):
    """Parity of a square matrix in ``fmt``: 0, 1, or ``None`` if mixed.

    The zero matrix counts as even.
    """
    seen = set()
    n = len(fmt)
    for i in range(n):
        for j in range(n):
            if a[i, j] != 0:
                seen.add((fmt[i] + fmt[j]) % 2)
                if len(seen) == 2:
                    return None
    return seen.pop() if seen else EVEN


def map_parity(src, dst, a: np.ndarray):
    """Parity of a rectangular map ``src -> dst`` (``None`` when mixed)."""
    seen = set()
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if a[i, j] != 0:
                seen.add((dst[i] + src[j]) % 2)
    if len(seen) > 1:
        return None
    return seen.pop() if seen else EVEN


class SuperMatrix:
    """A square rational matrix together with the format of its basis."""

    __slots__ = ("format", "entries")

    def __init__(self, fmt, entries):
        fmt = Format(fmt)
        if not isinstance(entries, np.ndarray) or entries.dtype != object:
            entries = linalg.matrix(entries) if len(fmt) else linalg.zeros(0)
        if entries.shape != (len(fmt), len(fmt)):
            raise FormatError(f"shape {entries.shape} does not match format of length {len(fmt)}")
        self.format = fmt
        self.entries = entries

    @classmethod
    def zero(cls, fmt) -> "SuperMatrix":
        return cls(fmt, linalg.zeros(len(fmt)))

    @classmethod
    def identity(cls, fmt) -> "SuperMatrix":
        return cls(fmt, linalg.eye(len(fmt)))

    @classmethod
    def unit(cls, fmt, i: int, j: int, value=1) -> "SuperMatrix":
        m = cls.zero(fmt)
        m.entries[i, j] = frac(value)
        return m

    @property
    def parity(self):
        return matrix_parity(self.format, self.entries)

    def homogeneous_parity(self) -> int:
        p = self.parity
        if p is None:
            raise ParityError("matrix is not homogeneous")
        return p

    def _check(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        if other.format != self.format:
            raise FormatError(f"format mismatch: {self.format} vs {other.format}")
        return None

    def __add__(self, other):
        self._check(other)
        return SuperMatrix(self.format, self.entries + other.entries)

    def __sub__(self, other):
        self._check(other)
        return SuperMatrix(self.format, self.entries - other.entries)

    def __neg__(self):
        return SuperMatrix(self.format, -self.entries)

    def __mul__(self, c):
        c = frac(c)
        return SuperMatrix(self.format, self.entries * c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        return SuperMatrix(self.format, self.entries @ other.entries)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.format == other.format and bool(np.all(self.entries == other.entries))

    def __hash__(self):
        return hash((self.format, tuple(self.entries.flat)))

    def __repr__(self):
        rows = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"SuperMatrix('{self.format}', [{rows}])"

    def is_zero(self) -> bool:
        return linalg.is_zero(self.entries)

    def to_json(self) -> dict:
        return {
            "format": str(self.format),
            "entries": [[linalg.fstr(x) for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, data) -> "SuperMatrix":
        return cls(data["format"], linalg.matrix(data["entries"]))


def supercommutator(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """``[A, B] = AB - (-1)^{p(A)p(B)} BA`` for homogeneous A, B."""
    if a.format != b.format:
        raise FormatError(f"format mismatch: {a.format} vs {b.format}")
    pa = a.homogeneous_parity()
    pb = b.homogeneous_parity()
    ab = a.entries @ b.entries
    ba = b.entries @ a.entries
    return SuperMatrix(a.format, ab - ba if pa * pb == 0 else ab + ba)


def supertrace(a: SuperMatrix) -> Fraction:
    total = ZERO
    for i, p in enumerate(a.format):
        total += -a.entries[i, i] if p else a.entries[i, i]
    return total


def supertranspose(a: SuperMatrix) -> SuperMatrix:
    """``(A^st)_ij = (-1)^{(p_i+p_j)(p_i+p(A))} A_ji``."""
    pa = a.homogeneous_parity()
    fmt = a.format
    n = len(fmt)
    out = linalg.zeros(n)
    for i in range(n):
        for j in range(n):
            x = a.entries[j, i]
            if x == 0:
                continue
            if ((fmt[i] + fmt[j]) * (fmt[i] + pa)) % 2:
                x = -x
            out[i, j] = x
    return SuperMatrix(fmt, out)


def parity_shift(x):
    """Flip every parity of a SuperSpace, Format or SuperMatrix."""
    if isinstance(x, SuperMatrix):
        return SuperMatrix(x.format.flipped(), x.entries.copy())
    if isinstance(x, SuperSpace):
        return SuperSpace(x.format.flipped())
    if isinstance(x, (Format, tuple, str)):
        return Format(x).flipped()
    raise TypeError(f"cannot shift parity of {type(x).__name__}")


def homogeneous_split(a: SuperMatrix) -> tuple[SuperMatrix, SuperMatrix]:
    fmt = a.format
    n = len(fmt)
    even = linalg.zeros(n)
    odd = linalg.zeros(n)
    for i in range(n):
        for j in range(n):
            x = a.entries[i, j]
            if x != 0:
                if (fmt[i] + fmt[j]) % 2:
                    odd[i, j] = x
                else:
                    even[i, j] = x
    return SuperMatrix(fmt, even), SuperMatrix(fmt, odd)


def parity_operator(fmt) -> np.ndarray:
    """``diag((-1)^{p_i})``; conjugation by it negates odd matrices."""
    n = len(fmt)
    m = linalg.zeros(n)
    for i, p in enumerate(fmt):
        m[i, i] = Fraction(-1 if p else 1)
    return m


def kernel_basis(m: np.ndarray) -> list[np.ndarray]:
    return linalg.kernel_basis(m)


def image_basis(m: np.ndarray) -> list[np.ndarray]:
    return linalg.image_basis(m)


def homogeneous_kernel(m: np.ndarray, src) -> tuple[list[np.ndarray], Format]:
    """Kernel of a homogeneous map, with a basis of homogeneous vectors.

    Returns the basis (as full-length vectors of the source) and its format.
    """
    src = Format(src)
    n = len(src)
    vecs = []
    fmt = []
    for par in (EVEN, ODD):
        idx = [i for i in range(n) if src[i] == par]
        if not idx:
            continue
        for v in linalg.kernel_basis(m[:, idx]):
            full = linalg.zeros(n, 1)[:, 0]
            for k, i in enumerate(idx):
                full[i] = v[k]
            vecs.append(full)
            fmt.append(par)
    return vecs, Format(fmt)


def homogeneous_image(m: np.ndarray, src, dst) -> tuple[list[np.ndarray], Format]:
    """Image of a homogeneous map ``src -> dst`` with a homogeneous basis."""
    src, dst = Format(src), Format(dst)
    vecs, fmt = [], []
    for par in (EVEN, ODD):
        idx = [i for i in range(len(dst)) if dst[i] == par]
        if not idx:
            continue
        block = m[idx, :]
        for j in linalg.pivot_columns(block):
            full = linalg.zeros(len(dst), 1)[:, 0]
            full[idx] = block[:, j]
            vecs.append(full)
            fmt.append(par)
    return vecs, Format(fmt)
