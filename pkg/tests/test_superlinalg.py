from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superdecomp import linalg
from superdecomp.superlinalg import (
    Format,
    FormatError,
    ParityError,
    SuperMatrix,
    SuperSpace,
    homogeneous_split,
    image_basis,
    kernel_basis,
    parity_shift,
    supercommutator,
    supertrace,
    supertranspose,
)

from conftest import as_fracs, formats, homogeneous, matrices


def gl11(rows):
    return SuperMatrix("01", as_fracs(rows))


XP = gl11([[0, 1], [0, 0]])
XM = gl11([[0, 0], [1, 0]])


def test_format_basics():
    f = Format("0101")
    assert f.sdim == (2, 2)
    assert Format.standard(3, 2) == Format("00011")
    assert f.flipped() == Format("1010")
    assert SuperSpace.of(3, 2).dim == 5
    with pytest.raises(FormatError):
        Format("012")


def test_square_zero_odd():
    assert supercommutator(XP, XP).is_zero()


def test_xplus_xminus_identity():
    assert supercommutator(XP, XM) == SuperMatrix.identity("01")


def test_even_commutator_is_ordinary():
    a = SuperMatrix("00", as_fracs([[1, 2], [3, 4]]))
    b = SuperMatrix("00", as_fracs([[0, 1], [1, 0]]))
    assert supercommutator(a, b).entries.tolist() == (a.entries @ b.entries - b.entries @ a.entries).tolist()


def test_supertrace_examples():
    assert supertrace(SuperMatrix.identity("01")) == 0
    assert supertrace(SuperMatrix.unit("01", 0, 0)) == 1


def test_supertranspose_odd_gl11():
    b = gl11([[0, 3], [5, 0]])
    st_b = supertranspose(b)
    assert st_b.entries[0, 1] == -5
    assert st_b.entries[1, 0] == 3


def test_supertranspose_even_diagonal():
    d = SuperMatrix("010", as_fracs([[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
    assert supertranspose(d) == d


def test_inhomogeneous_rejected():
    m = gl11([[1, 1], [0, 0]])
    with pytest.raises(ParityError):
        supertranspose(m)
    with pytest.raises(ParityError):
        supercommutator(m, XP)


def test_parity_shift():
    assert parity_shift(SuperSpace.of(3, 2)).sdim == (2, 3)
    assert parity_shift(parity_shift(Format("0011"))) == Format("0011")


def test_block_split():
    m = SuperMatrix("0011", as_fracs([[1, 2, 3, 4], [5, 6, 7, 8], [9, 1, 2, 3], [4, 5, 6, 7]]))
    even, odd = homogeneous_split(m)
    assert even.entries.tolist() == as_fracs([[1, 2, 0, 0], [5, 6, 0, 0], [0, 0, 2, 3], [0, 0, 6, 7]]).tolist()
    assert odd.entries.tolist() == as_fracs([[0, 0, 3, 4], [0, 0, 7, 8], [9, 1, 0, 0], [4, 5, 0, 0]]).tolist()


def test_kernel_trivial_cases():
    assert len(kernel_basis(linalg.zeros(3))) == 3
    assert kernel_basis(linalg.eye(4)) == []


def test_json_roundtrip():
    m = gl11([[Fraction(1, 3), 0], [0, -2]])
    assert SuperMatrix.from_json(m.to_json()) == m


# --- properties -------------------------------------------------------------


@given(st.data())
def test_supertrace_of_commutator_vanishes(data):
    f = data.draw(formats())
    a = data.draw(homogeneous(f))
    b = data.draw(homogeneous(f))
    assert supertrace(supercommutator(a, b)) == 0


@given(st.data())
def test_supertranspose_squared(data):
    f = data.draw(formats())
    a = data.draw(homogeneous(f))
    twice = supertranspose(supertranspose(a))
    assert twice == (a if a.homogeneous_parity() == 0 else -a)


@given(st.data())
def test_super_antisymmetry_and_jacobi(data):
    f = data.draw(formats(max_len=4))
    x, y, z = (data.draw(homogeneous(f)) for _ in range(3))
    px, py = x.homogeneous_parity(), y.homogeneous_parity()
    s = -1 if px * py else 1
    assert supercommutator(x, y) == -s * supercommutator(y, x)
    lhs = supercommutator(x, supercommutator(y, z))
    rhs = supercommutator(supercommutator(x, y), z) + s * supercommutator(y, supercommutator(x, z))
    assert lhs == rhs


@given(st.data())
def test_supertrace_after_shift(data):
    f = data.draw(formats())
    a = data.draw(homogeneous(f, parity=0))
    assert supertrace(parity_shift(a)) == -supertrace(a)


@given(st.data())
def test_split_recomposes(data):
    f = data.draw(formats())
    m = SuperMatrix(f, data.draw(matrices(len(f), len(f))))
    even, odd = homogeneous_split(m)
    assert even + odd == m
    assert even.parity in (0, None) or even.is_zero()
    assert even.is_zero() or even.parity == 0
    assert odd.is_zero() or odd.parity == 1


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_nullity(r, c, data):
    m = data.draw(matrices(r, c))
    ker = kernel_basis(m)
    img = image_basis(m)
    assert len(ker) + len(img) == c
    for v in ker:
        assert linalg.is_zero(m @ v)
    for v in img:
        # every image vector lies in the column span
        assert linalg.solve(m, v.reshape(-1, 1)) is not None
    assert len(img) == np.linalg.matrix_rank(m.astype(float))
