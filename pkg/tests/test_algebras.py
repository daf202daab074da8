from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superdecomp.algebras import (
    AlgebraError,
    LieSuperAlgebra,
    build_aut_form,
    b_ev,
    build_h,
    build_sh,
    build_svect,
    build_svect_tilde,
    build_vect,
    by_name,
    graded_parts,
    sl11,
    subspace_closed,
    verify_algebra,
)
from superdecomp.grassmann import divergence, field_bracket
from superdecomp.superlinalg import SuperMatrix, supercommutator


def _combo(g, vec):
    """Realization element for a sparse coordinate vector."""
    out = None
    for k, c in vec.items():
        r = g.realization[k]
        term = r * c if isinstance(r, SuperMatrix) else r.scale(c)
        out = term if out is None else out + term
    return out


def _realized_bracket_matches(g):
    """Oracle independent of the stored table: bracket the realizations directly."""
    br = supercommutator if isinstance(g.realization[0], SuperMatrix) else field_bracket
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = br(g.realization[i], g.realization[j])
            vec = g.bracket(i, j)
            if not vec:
                if not lhs.is_zero():
                    return False
                continue
            if lhs != _combo(g, vec):
                return False
    return True


ALGEBRAS = [
    ("gl(1|1)", (2, 2)),
    ("gl(2|1)", (5, 4)),
    ("sl(1|1)", (1, 2)),
    ("sl(1|2)", (4, 4)),
    ("sl(2|1)", (4, 4)),
    ("osp(2|2)", (4, 4)),
    ("pe(2)", (4, 4)),
    ("spe(3)", (8, 9)),
    ("vect(0|1)", (1, 1)),
    ("vect(0|2)", (4, 4)),
    ("vect(0|3)", (12, 12)),
    ("svect(0|2)", (3, 2)),
    ("svect(0|3)", (8, 9)),
    ("h(0|4)", (7, 8)),
    ("sh(0|4)", (6, 8)),
]


@pytest.mark.parametrize("name,sdim", ALGEBRAS)
def test_constructors_verify(name, sdim):
    g = by_name(name)
    assert g.sdim == sdim
    assert verify_algebra(g).ok
    assert _realized_bracket_matches(g)


def test_big_ones_verify():
    for g in (by_name("gl(3|2)"), build_vect(4), build_svect(4)):
        assert verify_algebra(g).ok


def test_vect_counts():
    # vect(0|n): n 2^n fields, parity |S|+1
    for n in range(1, 5):
        g = build_vect(n)
        assert g.dim == n * 2 ** n
        assert g.sdim == (n * 2 ** (n - 1), n * 2 ** (n - 1))


def test_vect2_grading():
    gp = graded_parts(build_vect(2))
    assert {d: len(v) for d, v in gp.parts.items()} == {-1: 2, 0: 4, 1: 2}
    assert len(gp.L_ge) == 6 and len(gp.L_lt) == 2


def test_sl11_center():
    g = sl11()
    e = g.index("E")
    assert g.parities[e] == 0
    assert all(not g.bracket(e, j) for j in range(g.dim))


def test_corrupted_table_fails():
    g = sl11()
    br = {k: dict(v) for k, v in g.brackets.items()}
    (i, j), vec = next(iter(sorted(br.items())))
    k = next(iter(vec))
    br[(i, j)][k] = vec[k] + 1
    bad = LieSuperAlgebra("bad", g.labels, g.parities, br)
    rep = verify_algebra(bad)
    assert not rep.ok
    assert rep.counterexample is not None


def test_jacobi_violation_reported():
    # a 3-dim even algebra with [a,b]=c, [b,c]=a, [c,a]=c breaks Jacobi
    br = {(0, 1): {2: 1}, (1, 0): {2: -1}, (1, 2): {0: 1}, (2, 1): {0: -1}, (2, 0): {2: 1}, (0, 2): {2: -1}}
    bad = LieSuperAlgebra("bad", "abc", "000", br)
    assert not verify_algebra(bad).ok


def test_osp_via_form():
    g = build_aut_form(b_ev(2, 2))
    assert g.sdim == (4, 4)
    assert verify_algebra(g).ok


def test_svect_is_divergence_free():
    for n in (2, 3):
        g = build_svect(n)
        for d in g.realization:
            assert divergence(d).is_zero()


def test_svect_tilde():
    g = build_svect_tilde(2, Fraction(1, 2))
    assert verify_algebra(g).ok
    with pytest.raises(AlgebraError):
        build_svect_tilde(3, 1)


def test_sh_is_derived_subalgebra_of_h():
    h = build_h(4)
    sh = build_sh(4)
    assert sh.dim == h.dim - 1


def test_by_name_errors():
    with pytest.raises(AlgebraError):
        by_name("e8")


def test_json_roundtrip():
    g = by_name("osp(2|2)")
    g2 = LieSuperAlgebra.from_json(g.to_json())
    assert g2.to_json() == g.to_json()


def test_graded_pieces_subalgebras():
    g = build_vect(3)
    gp = graded_parts(g)
    for idx in (gp.L_ge, gp.L_gt, gp.L_le, gp.L_lt, gp.parts[0]):
        assert subspace_closed(g, idx)


@given(st.sampled_from(["sl(1|2)", "vect(0|2)", "pe(2)", "osp(2|2)"]), st.data())
def test_random_triples_jacobi(name, data):
    g = by_name(name)
    i, j, k = (data.draw(st.integers(0, g.dim - 1)) for _ in range(3))
    p = g.parities
    s_ij = -1 if p[i] * p[j] else 1
    lhs = g.bracket_vec({i: 1}, g.bracket_vec({j: 1}, {k: 1}))
    a = g.bracket_vec(g.bracket_vec({i: 1}, {j: 1}), {k: 1})
    b = g.bracket_vec({j: 1}, g.bracket_vec({i: 1}, {k: 1}))
    rhs = dict(a)
    for key, c in b.items():
        rhs[key] = rhs.get(key, 0) + s_ij * c
    rhs = {key: c for key, c in rhs.items() if c}
    assert lhs == rhs
    # super antisymmetry
    ba = g.bracket(j, i)
    assert g.bracket(i, j) == {key: -s_ij * c for key, c in ba.items()}
