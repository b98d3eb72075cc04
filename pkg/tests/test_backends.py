from __future__ import annotations

import os
import subprocess
import sys

import pytest
from conftest import coefficients, monomials
from hypothesis import given
from hypothesis import strategies as st

from isingcc import _kernels_py as py

try:
    from isingcc import _kernels as cy
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

terms = st.dictionaries(monomials(-8, 8), coefficients(), max_size=6)


@needs_ext
@given(monomials(-10, 10), monomials(-10, 10))
def test_mul_monomials_agree(a, b):
    assert cy.mul_monomials(a, b) == py.mul_monomials(a, b)


@needs_ext
@given(monomials(-10, 10))
def test_adjacent_pairs_agree(m):
    assert cy.adjacent_pairs(m) == py.adjacent_pairs(m)


@needs_ext
@given(terms, terms)
def test_multiply_terms_agree(x, y):
    a = cy.multiply_terms(x, y, 1e-12)
    b = py.multiply_terms(x, y, 1e-12)
    assert a.keys() == b.keys()
    assert all(abs(a[k] - b[k]) < 1e-12 for k in a)


@needs_ext
@given(terms, terms)
def test_trace_pairing_agree(x, y):
    assert abs(cy.trace_pairing(x, y) - py.trace_pairing(x, y)) < 1e-12


@needs_ext
def test_long_monomials_rejected():
    long = tuple(range(0, 1200, 2))
    with pytest.raises(ValueError):
        cy.mul_monomials(long, (1,))


@pytest.mark.parametrize("choice", ["python", "auto"])
def test_backend_selection(choice):
    env = dict(os.environ)
    env.pop("ISINGCC_BACKEND", None)
    if choice == "python":
        env["ISINGCC_BACKEND"] = "python"
    out = subprocess.run(
        [sys.executable, "-c", "import isingcc; print(isingcc.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    ).stdout.strip()
    if choice == "python":
        assert out == "python"
    else:
        assert out == ("cython" if cy is not None else "python")
