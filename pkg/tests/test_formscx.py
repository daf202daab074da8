from fractions import Fraction

import pytest

from superdecomp import formscx as fx
from superdecomp import linalg
from superdecomp.cohom import ext1
from superdecomp.decomp import are_isomorphic, decompose, hom_space, is_indecomposable, is_intertwiner, is_irreducible
from superdecomp.repcore import dual, verify_representation


@pytest.mark.parametrize("n", range(5))
def test_omega_sdim_and_module(n):
    om = fx.build_omega(n)
    assert om.sdim == (2 * (n + 1), 2 * (n + 1))
    assert verify_representation(om).ok


def test_omega0_is_functions():
    om = fx.build_omega(0)
    assert om.sdim == (2, 2)


@pytest.mark.parametrize("n", range(3))
def test_sigma_is_dual(n):
    s = fx.build_sigma(n)
    assert verify_representation(s).ok
    assert s.sdim == fx.build_omega(n).sdim
    assert are_isomorphic(s, dual(fx.build_omega(n)))[0]


def test_negative_degree_rejected():
    with pytest.raises(fx.FormsError):
        fx.build_omega(-1)


def test_d_squared_zero():
    assert fx.compositions_vanish(-6, 5)
    for n in range(3):
        assert linalg.is_zero(fx.exterior_matrix(n + 1) @ fx.exterior_matrix(n))


@pytest.mark.parametrize("n", range(4))
def test_d_is_intertwiner(n):
    # L_D d = (-1)^{p(D)} d L_D for every basis field, in matrix form
    assert is_intertwiner(fx.build_omega(n), fx.build_omega(n + 1), fx.exterior_matrix(n), 1)


def test_complex_maps_are_intertwiners():
    maps = fx.complex_maps(-4, 4)
    assert sorted(maps) == list(range(-4, 5))


@pytest.mark.parametrize("j", range(-4, 5))
def test_exactness(j):
    rep = fx.exactness(j)
    assert rep.exact
    assert rep.to_json()["position"] == j


def test_integral_unique_up_to_scalar():
    space = hom_space(fx.build_sigma(0), fx.build_omega(0))
    assert len(space[0]) + len(space[1]) == 1
    m = fx.integral_matrix()
    assert not linalg.is_zero(m)
    entries = [x for x in m.flat if x != 0]
    assert all(Fraction(x).denominator == 1 for x in entries)
    from math import gcd

    g = 0
    for x in entries:
        g = gcd(g, int(x))
    assert g == 1


def test_kernel_at_omega0_is_constants():
    assert fx.kernel_at(0).sdim == (1, 0)


def test_acyclicity_ledger():
    # dim i-next = dim Omega^n - dim i-current
    for n in range(1, 5):
        assert fx.kernel_at(n + 1).dim == fx.build_omega(n).dim - fx.kernel_at(n).dim


def test_offset():
    assert fx.offset() == -1


@pytest.mark.parametrize("k", range(-3, 4))
def test_i_k_irreducible(k):
    v = fx.irreducible_i(k)
    assert verify_representation(v).ok
    assert is_irreducible(v)
    assert len(decompose(v).summands) == 1


def test_i_k_window():
    with pytest.raises(fx.FormsError):
        fx.irreducible_i(40)


@pytest.mark.parametrize("k", range(-3, 4))
@pytest.mark.parametrize("l", range(-3, 4))
def test_ext_between_kernels(k, l):
    r = ext1(fx.irreducible_i(k), fx.irreducible_i(l), with_cocycles=False)
    assert r.dim == (1 if abs(k - l) == 1 else 0)


def test_sigma_is_two_factor_gluing():
    # Sigma_{-n} glues i(-n+1) over Pi(i(-n)) in the index of the kernels
    for n in (1, 2, 3):
        s = fx.build_sigma(n)
        assert is_indecomposable(s)
        sub = fx.kernel_at(-n - 1)
        assert s.dim == sub.dim + fx.kernel_at(-n).dim


@pytest.mark.parametrize("k", [2, 3, 4])
def test_sq(k):
    sq = fx.build_Sq(k)
    assert sq.sdim == fx.sq_expected_sdim(k)
    assert verify_representation(sq).ok
    assert is_indecomposable(sq)
    ks = sorted(kk for kk, _ in sq.factors)
    assert ks == [k - 1, k, k, k + 1]


def test_sq1_dimension_is_not_reached():
    # i(0) lies on the integral side (1|2), so the square around i(1) is 4|4
    sq = fx.build_Sq(1)
    assert sq.sdim == (4, 4)
    assert sq.sdim != fx.sq_expected_sdim(1)


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_dim_formula_equal(p, k):
    r = fx.dim_formula_check(p, p, k)
    assert r.match, (r.sdim, r.expected)


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_dim_formula_q_above(p, k):
    r = fx.dim_formula_check(p, p + 1, k)
    assert r.match, (r.sdim, r.expected)


def test_kernel_totals_grow_by_two():
    for k in range(1, 6):
        assert sum(fx.irreducible_i(k + 1).sdim) - sum(fx.irreducible_i(k).sdim) == 2


@pytest.mark.parametrize("p", [1, 2, 3])
def test_dim_formula_q_below_has_wrong_slope(p):
    # 2p-1 factors: the total grows by 2(2p-1) per step in k, the closed form
    # by 2(2p+1), so no constant shift of k can match two consecutive k
    a, b = fx.dim_formula_check(p, p - 1, 1), fx.dim_formula_check(p, p - 1, 2)
    assert len(a.nodes) == 2 * p - 1
    assert sum(b.sdim) - sum(a.sdim) == 2 * (2 * p - 1)
    assert sum(b.expected) - sum(a.expected) == 2 * (2 * p + 1)
    assert not a.match


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 2), (2, 1)])
@pytest.mark.parametrize("dir", ["in", "out"])
def test_zigzag_build(p, q, dir):
    z = fx.build_zigzag(p, q, dir, 2)
    assert verify_representation(z).ok
    assert is_indecomposable(z)
    rep = fx.dim_formula_check(p, q, 2)
    assert z.sdim in (rep.sdim, rep.sdim[::-1])
    assert [kk for kk, _ in z.factors] == [kk for kk, _, _ in rep.nodes]


def test_zigzag_bad_args():
    with pytest.raises(fx.FormsError):
        fx.build_zigzag(1, 3, "out", 1)
    with pytest.raises(fx.FormsError):
        fx.build_zigzag(1, 1, "up", 1)


@pytest.mark.parametrize(
    "w,expect",
    [((1, -1), True), ((0, -3), False), ((4, 1), False), ((0, 0), False), ((2, 0), True), ((Fraction(1, 2), Fraction(-1, 2)), True)],
)
def test_typicality_values(w, expect):
    assert fx.is_typical(w) == expect


def test_typicality_unsupported():
    with pytest.raises(fx.FormsError):
        fx.is_typical((1, 0), "h(0|4)")


def test_typicality_sl12():
    # the trivial weight is atypical; a generic one is typical
    assert not fx.is_typical((0, 0, 0), "sl(1|2)")
    assert fx.is_typical((5, 1, 0), "sl(1|2)")


@pytest.mark.parametrize("a,b", [(a, b) for a in range(-2, 3) for b in range(-2, 3) if 0 <= a - b <= 2])
def test_typical_iff_irreducible(a, b):
    v = fx.induced_vect02(a, b)
    assert is_irreducible(v) == fx.is_typical((a, b))


def test_typical_splits_off():
    v = fx.induced_vect02(1, -1)
    for k in (-1, 0, 1):
        i = fx.irreducible_i(k)
        assert ext1(v, i, with_cocycles=False).dim == 0
        assert ext1(i, v, with_cocycles=False).dim == 0

