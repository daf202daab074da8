import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superdecomp import linalg
from superdecomp.algebras import build_osp_split, build_vect, by_name, sl11
from superdecomp.decomp import are_isomorphic, is_indecomposable, is_irreducible


def iso(v, w):
    return are_isomorphic(v, w)[0]
from superdecomp.repcore import (
    COINDUCE_NOTE,
    Representation,
    RepresentationError,
    adjoint,
    block_embedding,
    coinduce,
    direct_sum,
    dual,
    extension_from_cocycle,
    hom,
    induce,
    l0_weight_module,
    pi,
    random_basis_change,
    restrict,
    basis_subalgebra,
    standard,
    tensor,
    trivial,
    verify_representation,
)
from superdecomp.sl11cat import E, XP, build_Vhbar_n, build_typeI, clifford_irreducible


def small_modules():
    return [
        clifford_irreducible(1),
        clifford_irreducible(Fraction(1, 2), True),
        build_Vhbar_n(2, 2),
        build_typeI(2, 1, "out"),
        trivial(sl11()),
        trivial(sl11(), odd=True),
        standard(sl11()),
    ]


def test_adjoint_gl11_passes():
    assert verify_representation(adjoint(by_name("gl(1|1)"))).ok


def test_vhbar_passes():
    for h, n in ((1, 1), (2, 3), (Fraction(-1, 2), 4)):
        assert verify_representation(build_Vhbar_n(h, n)).ok


def test_sign_flip_fails():
    v = build_Vhbar_n(1, 2)
    mats = list(v.matrices)
    mats[XP] = -mats[XP]
    bad = Representation(v.algebra, v.format, mats)
    rep = verify_representation(bad)
    assert not rep.ok and rep.counterexample is not None


def test_tensor_sdim():
    v = clifford_irreducible(1)
    assert tensor(v, v).sdim == (2, 2)


def test_dual_of_vhbar():
    for h in (1, 2, Fraction(1, 2)):
        d = dual(clifford_irreducible(h))
        assert d.matrices[E][0, 0] == -h
        assert iso(d, clifford_irreducible(-h)) or iso(d, clifford_irreducible(-h, True))


def test_dual_pairing_sign():
    # <x.phi, v> + (-1)^{p(x)p(phi)} <phi, x.v> = 0
    v = build_typeI(2, 1, "out")
    d = dual(v)
    g = v.algebra
    for i in range(g.dim):
        for a in range(v.dim):
            for b in range(v.dim):
                lhs = d.matrices[i][b, a]  # coefficient of phi_b in x.phi_a
                s = -1 if g.parities[i] * v.format[a] else 1
                assert lhs + s * v.matrices[i][a, b] == 0


def test_hom_is_w_tensor_vdual():
    v, w = build_Vhbar_n(1, 2), build_typeI(1, 1, "out")
    assert iso(hom(v, w), tensor(w, dual(v)))


def test_pi_swaps():
    v = build_typeI(2, 1, "out")
    assert pi(v).sdim == (1, 2)
    assert pi(pi(v)).format == v.format


def test_mismatched_algebras():
    with pytest.raises(RepresentationError):
        direct_sum(trivial(sl11()), trivial(build_vect(2)))


def test_restrict_to_center():
    sub = basis_subalgebra(sl11(), [E])
    r = restrict(build_Vhbar_n(3, 2), sub)
    assert r.algebra.dim == 1
    assert verify_representation(r).ok


def _vect_l0(a, b):
    g = build_vect(2)
    return g, l0_weight_module(g, a, b)


def test_induce_trivial_dim4():
    g, l0 = _vect_l0(0, 0)
    assert induce(g, l0).dim == 4


@pytest.mark.parametrize("a,b", [(0, 0), (1, -1), (2, 0), (3, 1), (1, -3), (2, -2)])
def test_induce_dims_vect(a, b):
    g, l0 = _vect_l0(a, b)
    v = induce(g, l0)
    assert v.dim == 4 * (a - b + 1)
    assert verify_representation(v).ok


def test_induce_irreducible_example():
    g, l0 = _vect_l0(1, -1)
    assert is_irreducible(induce(g, l0))


@pytest.mark.parametrize(
    "algebra,rows",
    [(lambda: by_name("sl(1|2)"), [1, 2]), (lambda: build_osp_split(2, 2), [2, 3])],
)
def test_induce_coinduce_matrix_algebras(algebra, rows):
    g = algebra()
    emb = block_embedding(rows)
    for d in range(0, 5):
        l0 = l0_weight_module(g, d, 0, embedding=emb)
        for v in (induce(g, l0), coinduce(g, l0)):
            assert v.dim == 4 * (d + 1)
            assert verify_representation(v).ok


def test_coinduce_vect():
    for a, b in ((0, 0), (2, 1), (1, -3)):
        g, l0 = _vect_l0(a, b)
        v = coinduce(g, l0)
        assert v.dim == 4 * (a - b + 1)
        assert verify_representation(v).ok
        assert COINDUCE_NOTE in v.notes


def test_coinduce_vect3_rejected():
    with pytest.raises(RepresentationError, match="infinite-dimensional"):
        coinduce(build_vect(3), {"format": "0", "action": {}})


def test_induced_vs_coinduced_differ():
    # V trivial, so V* = V; I(V) and J(V*) have equal size but differ
    g, l0 = _vect_l0(0, 0)
    i = induce(g, l0)
    j = coinduce(g, l0)
    assert i.sdim == j.sdim
    assert not iso(i, j)


def test_extension_zero_cocycle():
    v, w = clifford_irreducible(1), clifford_irreducible(2)
    z = [linalg.zeros(v.dim, w.dim) for _ in range(3)]
    e = extension_from_cocycle(v, w, z)
    assert iso(e, direct_sum(v, w))


def test_extension_coboundary_splits():
    v, w = build_Vhbar_n(1, 2), build_Vhbar_n(1, 1)
    rng = random.Random(2)
    t = linalg.zeros(v.dim, w.dim)
    for i in range(v.dim):
        for j in range(w.dim):
            if v.format[i] == w.format[j]:
                t[i, j] = Fraction(rng.randint(-3, 3))
    c = [v.matrices[i] @ t - t @ w.matrices[i] for i in range(3)]
    e = extension_from_cocycle(v, w, c)
    assert iso(e, direct_sum(v, w))


def test_extension_gluing_vhbar():
    from superdecomp.cohom import ext1

    v = clifford_irreducible(1)
    r = ext1(v, v)
    assert r.dim_even == 1
    e = r.extension(0)
    assert is_indecomposable(e)
    assert iso(e, build_Vhbar_n(1, 2))


def test_extension_non_cocycle_rejected():
    v, w = clifford_irreducible(1), clifford_irreducible(1)
    c = [linalg.zeros(2, 2) for _ in range(3)]
    c[E] = linalg.matrix([[1, 0], [0, 0]])
    with pytest.raises(RepresentationError):
        extension_from_cocycle(v, w, c)


def test_json_roundtrip():
    v = build_Vhbar_n(Fraction(2, 3), 2)
    w = Representation.from_json(v.to_json())
    assert w.format == v.format
    assert all((a == b).all() for a, b in zip(v.matrices, w.matrices))
    w2 = Representation.from_json(v.to_json(inline_algebra=True))
    assert w2.algebra.to_json() == v.algebra.to_json()


MODS = small_modules()


@given(st.sampled_from(range(len(MODS))), st.sampled_from(range(len(MODS))))
def test_functors_sdim_and_verify(i, j):
    v, w = MODS[i], MODS[j]
    (p1, q1), (p2, q2) = v.sdim, w.sdim
    s = direct_sum(v, w)
    t = tensor(v, w)
    assert s.sdim == (p1 + p2, q1 + q2)
    assert t.sdim == (p1 * p2 + q1 * q2, p1 * q2 + q1 * p2)
    assert pi(v).sdim == (q1, p1)
    assert dual(v).sdim == v.sdim
    for m in (s, t, pi(v), dual(v), hom(v, w)):
        assert verify_representation(m).ok


@given(st.sampled_from(range(len(MODS))), st.integers(0, 10 ** 6))
def test_basis_change_is_isomorphism(i, seed):
    v = MODS[i]
    w, p = random_basis_change(v, random.Random(seed), 2)
    assert verify_representation(w).ok
    for a, b in zip(v.matrices, w.matrices):
        assert ((a @ p) == (p @ b)).all()
