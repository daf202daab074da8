import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superdecomp import linalg
from superdecomp.cohom import ext1
from superdecomp.decomp import are_isomorphic, is_indecomposable
from superdecomp.repcore import adjoint, direct_sum, random_basis_change, tensor, verify_representation
from superdecomp.sl11cat import (
    E,
    XM,
    XP,
    CatalogError,
    CatalogLabel,
    LambdaModule,
    algebra,
    build_free_lambda,
    build_from_label,
    build_typeI,
    build_typeII,
    build_Vhbar_n,
    catalog_identify,
    catalog_items,
    clifford_irreducible,
    free_module,
    free_reduced_split,
    gl11_as_free,
    jordan,
    label_sdim,
    lambda_module,
    parse_label,
)


def labels_of(v, seed=0):
    return sorted(str(x) for x in catalog_identify(v, seed))


def test_clifford():
    v = clifford_irreducible(1)
    assert v.sdim == (1, 1)
    assert np.all(v.matrices[E] == linalg.eye(2))
    t = clifford_irreducible(0)
    assert t.sdim == (1, 0)
    assert clifford_irreducible(0, True).sdim == (0, 1)
    for h in (1, Fraction(-3, 2)):
        v = clifford_irreducible(h)
        a, b = v.matrices[XP], v.matrices[XM]
        assert np.all(a @ b + b @ a == linalg.eye(2) * h)


def test_vhbar_literal_blocks():
    v = build_Vhbar_n(2, 3)
    n = 3
    j = jordan(n, 2)
    z = linalg.zeros(n)
    assert np.all(v.matrices[XM] == np.block([[z, z], [linalg.eye(n), z]]))
    assert np.all(v.matrices[XP] == np.block([[z, j], [z, z]]))
    assert np.all(v.matrices[E] == linalg.block_diag(j, j))
    assert v.sdim == (3, 3)
    a, b = v.matrices[XP], v.matrices[XM]
    assert np.all(a @ b + b @ a == v.matrices[E])


def test_vhbar_one_is_clifford():
    assert are_isomorphic(build_Vhbar_n(1, 1), clifford_irreducible(1))[0]


def test_vhbar_zero_rejected():
    with pytest.raises(CatalogError):
        build_Vhbar_n(0, 2)


def test_typeI_diagram_32():
    v = build_typeI(3, 2, "out")
    assert v.sdim in ((3, 2), (2, 3))
    a, b = v.matrices[XP], v.matrices[XM]
    assert linalg.rank(a) + linalg.rank(b) == 4
    assert linalg.is_zero(v.matrices[E])


def test_typeI_trivial():
    v = build_typeI(1, 0, "out")
    assert v.dim == 1
    assert linalg.is_zero(v.matrices[XP]) and linalg.is_zero(v.matrices[XM])


def test_typeI_invalid():
    with pytest.raises(CatalogError):
        build_typeI(4, 1, "out")


def _relations(v):
    a, b = v.matrices[XP], v.matrices[XM]
    return all(linalg.is_zero(m) for m in (a @ a, b @ b, a @ b, b @ a))


@pytest.mark.parametrize("p", range(0, 5))
def test_typeI_family(p):
    for q in (p - 1, p, p + 1):
        if q < 0 or p + q == 0 or p + q > 8:
            continue
        for d in ("in", "out"):
            v = build_typeI(p, q, d)
            assert verify_representation(v).ok
            assert _relations(v)
            assert v.sdim in ((p, q), (q, p))
            assert is_indecomposable(v)
            assert linalg.is_zero(lambda_module(v).theta())


def test_typeII_examples():
    v = build_typeII(1, 1, 0, "out", 5)
    assert v.sdim == (1, 1)
    assert _relations(v)
    for p, m, n in ((1, 2, 0), (2, 1, 0), (3, 1, 0), (1, 3, 0)):
        w = build_typeII(p, m, n, "out", Fraction(1, 2))
        assert w.sdim == (p * (m + n), p * (m + n))
        assert verify_representation(w).ok
    assert not are_isomorphic(build_typeII(1, 2, 0, "out", 5), build_typeII(1, 2, 0, "out", 3))[0]


def test_free_lambda():
    fmt, ops = build_free_lambda(2, (0,))
    mod = LambdaModule(fmt, ops)
    assert fmt.sdim == (2, 2)
    assert linalg.rank(mod.theta()) == 1
    fmt3, ops3 = build_free_lambda(3, (0, 1))
    assert linalg.rank(LambdaModule(fmt3, ops3).theta()) == 2


def test_gl11_is_free():
    labels = catalog_identify(gl11_as_free())
    assert len(labels) == 1 and labels[0].kind == "free"


def test_split_examples():
    fc, shifts, (rc, rfmt) = free_reduced_split(lambda_module(free_module(0)))
    assert fc.shape[1] == 4 and rc.shape[1] == 0
    t = build_typeI(1, 0, "out")
    fc, shifts, (rc, rfmt) = free_reduced_split(lambda_module(t))
    assert fc.shape[1] == 0 and rc.shape[1] == 1


@pytest.mark.parametrize("n", [2, 3])
def test_split_round_trip(n):
    fmt, ops = build_free_lambda(n, (0,))
    # reduced part: (3+2e, out) for n=2, a 1|1 block with zero operators for n=3
    if n == 2:
        red = build_typeI(3, 2, "out")
        rfmt0, rops = red.format, [red.matrices[XP], red.matrices[XM]]
    else:
        rfmt0, rops = red_trivial(n)
    full_fmt = fmt + rfmt0
    big = [linalg.block_diag(a, b) for a, b in zip(ops, rops)]
    p = _even_random(full_fmt, random.Random(n))
    inv = linalg.inverse(p)
    mod = LambdaModule(full_fmt, [inv @ m @ p for m in big])
    fc, shifts, (rc, rfmt) = free_reduced_split(mod)
    assert fc.shape[1] == 2 ** n
    assert rfmt.sdim == rfmt0.sdim
    # reduced part killed by theta, and F + V^rd spans V
    assert linalg.is_zero(mod.theta() @ rc)
    assert linalg.rank(np.concatenate([fc, rc], axis=1)) == len(full_fmt)


def red_trivial(n):
    from superdecomp.superlinalg import Format

    f = Format("01")
    return f, [linalg.zeros(2) for _ in range(n)]


def _even_random(fmt, rng):
    n = len(fmt)
    while True:
        p = linalg.zeros(n)
        for i in range(n):
            for j in range(n):
                if fmt[i] == fmt[j]:
                    p[i, j] = Fraction(rng.randint(-2, 2))
        if linalg.rank(p) == n:
            return p


def test_identify_pair():
    v = direct_sum(build_Vhbar_n(3, 2), build_from_label("Pi.I(3+2e,in)"))
    w, _ = random_basis_change(v, random.Random(5), 2)
    assert labels_of(w) == sorted(["Vh(3/1,2)", "Pi.I(3+2e,in)"])


def test_identify_mystery():
    v = direct_sum(build_Vhbar_n(2, 2), free_module(0))
    w, _ = random_basis_change(v, random.Random(1), 2)
    assert labels_of(w, 1) == sorted(["Vh(2/1,2)", "free(2)[0]"])


def test_identify_adjoint():
    v = adjoint(algebra())
    labels = catalog_identify(v)
    assert sum(sum(label_sdim(x)) for x in labels) == 3


def test_identify_tensor_square_adjoint():
    ad = adjoint(algebra())
    v = tensor(ad, ad)
    labels = catalog_identify(v)
    assert sum(sum(label_sdim(x)) for x in labels) == 9


def test_non_rational_spectrum():
    # closing value 2 in a two-node band splits only over Q(sqrt 2)
    v = build_typeII(2, 1, 0, "out", 2)
    with pytest.raises(CatalogError, match="non-rational spectrum"):
        catalog_identify(v)


def test_label_strings():
    for text in ("Vh(3/1,2)", "I(3+2e,out)", "Pi.I(2+1e,in)", "II(2;1+1e,in;5/1)", "free(2)[0]", "trivial", "Pi.trivial"):
        lab = parse_label(text)
        assert isinstance(lab, CatalogLabel)
        assert str(parse_label(str(lab))) == str(lab)


def test_hbar_blocks_do_not_glue():
    for h1, h2 in ((1, 2), (1, Fraction(1, 2)), (2, -1)):
        r = ext1(clifford_irreducible(h1), clifford_irreducible(h2), with_cocycles=False)
        assert (r.dim_even, r.dim_odd) == (0, 0)


ITEMS = [lab for lab in catalog_items(6)]


def test_catalog_items_indecomposable():
    for lab in ITEMS:
        v = build_from_label(lab)
        assert verify_representation(v).ok
        assert is_indecomposable(v), lab


@given(st.sampled_from(ITEMS), st.integers(0, 10 ** 6))
def test_identify_round_trip(lab, seed):
    v = build_from_label(lab)
    w, _ = random_basis_change(v, random.Random(seed), 2)
    got = catalog_identify(w, seed)
    assert [str(x) for x in got] == [str(lab)]


@given(st.lists(st.sampled_from(ITEMS), min_size=2, max_size=3), st.integers(0, 10 ** 6))
def test_identify_sums(labs, seed):
    v = direct_sum(*[build_from_label(x) for x in labs])
    if v.dim > 12:
        return
    w, _ = random_basis_change(v, random.Random(seed), 2)
    assert labels_of(w, seed) == sorted(str(x) for x in labs)
