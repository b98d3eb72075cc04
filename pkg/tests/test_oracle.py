from __future__ import annotations

import numpy as np
import pytest
from conftest import elements, monomials
from hypothesis import given

from isingcc.element import ONE, AlgebraElement
from isingcc.monomial import monomial, mul_monomials
from isingcc.oracle import (
    QubitWindow,
    WindowError,
    covering_window,
    normalized_trace,
    operator_norm,
    rep_element,
    rep_monomial,
    spectrum_bounds,
)
from isingcc.verify import verify_oracle

X = np.array([[0, 1], [1, 0]])
Z = np.diag([1, -1])
I2 = np.eye(2)

W = QubitWindow(-3, 3)


def test_generator_images():
    w = QubitWindow(0, 1)
    assert np.array_equal(rep_monomial(monomial(0), w), np.kron(Z, I2))
    assert np.array_equal(rep_monomial(monomial(1), w), np.kron(I2, Z))
    assert np.array_equal(rep_monomial(monomial(0.5), w), np.kron(X, X))


def test_images_are_selfadjoint_unitaries():
    for d in range(2 * W.lo, 2 * W.hi + 1):
        m = rep_monomial((d,), W)
        assert np.array_equal(m, m.conj().T)
        assert np.array_equal(m @ m, np.eye(W.dim))


def test_injective_on_small_window():
    w = QubitWindow(0, 1)
    from isingcc.monomial import monomials_in

    images = {rep_monomial(m, w).tobytes() for m in monomials_in(0, 1)}
    assert len(images) == 8


def test_window_bookkeeping():
    assert QubitWindow(-1, 1).qubits == 3
    assert QubitWindow(-1, 1).dim == 8
    assert not QubitWindow(0, 1).represents(monomial(1.5))
    assert covering_window(AlgebraElement.gen(-0.5), AlgebraElement.gen(1)) == QubitWindow(-1, 1)


def test_window_errors():
    with pytest.raises(WindowError):
        rep_monomial(monomial(2), QubitWindow(0, 1))
    with pytest.raises(WindowError):
        QubitWindow(0, 20)
    with pytest.raises(ValueError):
        QubitWindow(1, 0)


def test_spectrum_and_norm():
    p = 0.5 * (ONE + AlgebraElement.gen(0))
    assert spectrum_bounds(p, W) == pytest.approx((0.0, 1.0))
    assert operator_norm(3 * AlgebraElement.gen(0.5)) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        spectrum_bounds(AlgebraElement.mono(0, 0.5), W)


@given(monomials(-6, 6), monomials(-6, 6))
def test_monomial_products_exact(a, b):
    s, m = mul_monomials(a, b)
    assert np.array_equal(rep_monomial(a, W) @ rep_monomial(b, W), s * rep_monomial(m, W))


@given(elements(-6, 6))
def test_trace_and_adjoint(x):
    r = rep_element(x, W)
    assert abs(normalized_trace(r) - x.trace()) < 1e-9
    assert np.allclose(rep_element(x.adjoint(), W), r.conj().T, atol=1e-9)


def test_suite_passes():
    rep = verify_oracle(n_mono=200, n_elem=40)
    assert rep["pass"] and rep["monomial_mismatches"] == 0
