from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from superdecomp import linalg
from superdecomp.superlinalg import Format, SuperMatrix

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def formats(draw, max_len=5, min_len=1):
    bits = draw(st.lists(st.integers(0, 1), min_size=min_len, max_size=max_len))
    return Format(bits)


@st.composite
def matrices(draw, rows, cols):
    vals = draw(st.lists(small_fractions, min_size=rows * cols, max_size=rows * cols))
    out = linalg.zeros(rows, cols)
    for k, x in enumerate(vals):
        out[k // cols, k % cols] = Fraction(x)
    return out


@st.composite
def homogeneous(draw, fmt, parity=None):
    """A homogeneous SuperMatrix of the given format."""
    if parity is None:
        parity = draw(st.integers(0, 1))
    n = len(fmt)
    m = draw(matrices(n, n))
    for i in range(n):
        for j in range(n):
            if (fmt[i] + fmt[j]) % 2 != parity:
                m[i, j] = Fraction(0)
    return SuperMatrix(fmt, m)


@pytest.fixture(scope="session")
def sl11():
    from superdecomp.algebras import sl11

    return sl11()


@pytest.fixture(scope="session")
def vect2():
    from superdecomp.algebras import build_vect

    return build_vect(2)


def as_fracs(rows):
    return np.array([[Fraction(x) for x in r] for r in rows], dtype=object)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
