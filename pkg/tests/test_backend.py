import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superdecomp import _elim_py, linalg

_elim = pytest.importorskip("superdecomp._elim")

sparse_rows = st.lists(
    st.dictionaries(st.integers(0, 7), st.integers(-6, 6).filter(bool), max_size=6), max_size=8
)


@given(sparse_rows, st.booleans())
def test_kernels_agree(rows, full):
    assert _elim.echelon(rows, full) == _elim_py.echelon(rows, full)


@given(st.dictionaries(st.integers(0, 9), st.integers(-30, 30).filter(bool), max_size=8))
def test_normalize_agrees(row):
    assert _elim.normalize(dict(row)) == _elim_py.normalize(dict(row))


def test_inputs_not_mutated():
    rows = [{0: 2, 1: 4}, {0: 3, 2: 1}]
    snapshot = [dict(r) for r in rows]
    _elim.echelon(rows, True)
    assert rows == snapshot


def test_backend_recorded():
    assert linalg.BACKEND in ("cython", "python")


def test_pure_switch():
    env = dict(os.environ, SUPERDECOMP_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from superdecomp import linalg; print(linalg.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
