import itertools

from hypothesis import given
from hypothesis import strategies as st

from superdecomp.grassmann import (
    FormPolynomial,
    GrassmannElement,
    SuperVectorField,
    divergence,
    exterior_d,
    field_bracket,
    form_basis,
    grassmann_mul,
    lie_derivative,
    monomials,
    partial_derivative,
    top_element,
)

from conftest import small_fractions


def x(n, *idx):
    return GrassmannElement.mono(n, tuple(idx))


def one(n):
    return GrassmannElement.const(n)


def field(n, s, i, c=1):
    return SuperVectorField.monomial(n, tuple(s), i, c)


@st.composite
def elements(draw, n):
    out = GrassmannElement(n)
    for s in monomials(n):
        c = draw(small_fractions)
        out = out + GrassmannElement.mono(n, s, c)
    return out


@st.composite
def homogeneous_fields(draw, n):
    parity = draw(st.integers(0, 1))
    out = SuperVectorField.zero(n)
    for s in monomials(n):
        if (len(s) + 1) % 2 != parity:
            continue
        for i in range(1, n + 1):
            c = draw(st.sampled_from([0, 0, 1, -1, 2]))
            if c:
                out = out + field(n, s, i, c)
    return out


def test_products():
    assert grassmann_mul(x(2, 1), x(2, 2)) == x(2, 1, 2)
    assert grassmann_mul(x(2, 2), x(2, 1)) == -x(2, 1, 2)
    assert grassmann_mul(x(2, 1), x(2, 1)).is_zero()
    lhs = grassmann_mul(one(2) + x(2, 1), one(2) + x(2, 2))
    assert lhs == one(2) + x(2, 1) + x(2, 2) + x(2, 1, 2)


def test_partials():
    assert partial_derivative(x(2, 1), 1) == one(2)
    assert partial_derivative(x(2, 1, 2), 2) == -x(2, 1)


def test_brackets():
    d1, d2 = field(2, (), 1), field(2, (), 2)
    assert field_bracket(d1, d2).is_zero()
    assert field_bracket(field(2, (1,), 1), d1) == d1.scale(-1)
    assert field_bracket(d1, field(2, (1,), 1)) == d1


def _apply(d, f):
    return d(f)


def test_gl2_bracket_against_composites():
    # oracle: evaluate D E - E D on the generators directly
    n = 2
    a, b = field(n, (1,), 2), field(n, (2,), 1)
    br = field_bracket(a, b)
    for i in (1, 2):
        g = x(n, i)
        expect = _apply(a, _apply(b, g)) - _apply(b, _apply(a, g))
        assert _apply(br, g) == expect
    # x1 d1 - x2 d2, the gl(2) relation [E12, E21] = E11 - E22
    assert br == field(n, (1,), 1) - field(n, (2,), 2)


def test_divergence():
    assert divergence(field(2, (), 1)).is_zero()
    assert divergence(field(2, (1,), 1)) == -one(2)
    assert divergence(field(2, (1, 2), 2)) == -x(2, 1)


def test_exterior_d_examples():
    n = 2
    assert exterior_d(FormPolynomial.function(x(n, 1))) == FormPolynomial.dx(n, 1)
    assert exterior_d(FormPolynomial.function(one(n))).is_zero()
    dd = exterior_d(FormPolynomial.function(x(n, 1, 2)))
    assert dd == FormPolynomial.parse("dx1*x2 - dx2*x1", n)
    assert exterior_d(dd).is_zero()


def test_lie_derivative_examples():
    n = 2
    d1 = field(n, (), 1)
    assert lie_derivative(d1, FormPolynomial.function(x(n, 1))) == FormPolynomial.function(one(n))
    assert lie_derivative(d1, FormPolynomial.dx(n, 1)).is_zero()


def test_top_element():
    for n in range(1, 5):
        th = top_element(n)
        assert grassmann_mul(th, th).is_zero()
        for i in range(1, n + 1):
            assert grassmann_mul(th, x(n, i)).is_zero()


def test_grassmann_dimension():
    for n in range(1, 6):
        ms = list(monomials(n))
        assert len(ms) == 2 ** n
        odd = sum(len(s) % 2 for s in ms)
        assert (len(ms) - odd, odd) == (2 ** (n - 1), 2 ** (n - 1))


def test_d_squared_on_monomials():
    for n in range(1, 5):
        for deg in range(0, 5):
            for s, a in form_basis(n, deg):
                w = FormPolynomial.mono(n, s, a)
                assert exterior_d(exterior_d(w)).is_zero()


def test_parse_roundtrip():
    w = FormPolynomial.parse("3/2*x1x2 + dx1^2*x2", 2)
    assert FormPolynomial.parse(str(w), 2) == w


@given(st.integers(1, 4), st.data())
def test_supercommutative(n, data):
    a, b = data.draw(elements(n)), data.draw(elements(n))
    for pa, pb in itertools.product((0, 1), repeat=2):
        ha = _part(a, pa)
        hb = _part(b, pb)
        s = -1 if pa * pb else 1
        assert grassmann_mul(ha, hb) == grassmann_mul(hb, ha).scale(s)


def _part(a, p):
    return GrassmannElement(a.n, {s: c for s, c in a.coeffs.items() if len(s) % 2 == p})


@given(st.integers(1, 4), st.data())
def test_theta_kills_augmentation(n, data):
    a = data.draw(elements(n))
    a0 = GrassmannElement(n, {s: c for s, c in a.coeffs.items() if s})
    assert grassmann_mul(top_element(n), a0).is_zero()


@given(st.integers(1, 3), st.data())
def test_partial_squares_to_zero(n, data):
    a = data.draw(elements(n))
    for i in range(1, n + 1):
        assert partial_derivative(partial_derivative(a, i), i).is_zero()


@given(st.data())
def test_lie_derivative_is_representation(data):
    n = 2
    d, e = data.draw(homogeneous_fields(n)), data.draw(homogeneous_fields(n))
    if d.is_zero() or e.is_zero():
        return
    pd, pe = d.homogeneous_parity(), e.homogeneous_parity()
    s = -1 if pd * pe else 1
    br = field_bracket(d, e)
    for deg in (0, 1, 2):
        for sm, a in form_basis(n, deg):
            w = FormPolynomial.mono(n, sm, a)
            lhs = lie_derivative(br, w) if not br.is_zero() else FormPolynomial(n)
            rhs = lie_derivative(d, lie_derivative(e, w)) - lie_derivative(e, lie_derivative(d, w)).scale(s)
            assert lhs == rhs


@given(st.data())
def test_lie_derivative_supercommutes_with_d(data):
    n = 2
    d = data.draw(homogeneous_fields(n))
    if d.is_zero():
        return
    sign = -1 if d.homogeneous_parity() else 1
    for deg in (0, 1, 2):
        for sm, a in form_basis(n, deg):
            w = FormPolynomial.mono(n, sm, a)
            lhs = exterior_d(lie_derivative(d, w))
            rhs = lie_derivative(d, exterior_d(w)).scale(sign)
            assert lhs == rhs
