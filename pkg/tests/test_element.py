from __future__ import annotations

import math

import numpy as np
import pytest
from conftest import elements
from hypothesis import given

from isingcc.element import (
    ONE,
    AlgebraElement,
    anticommutator,
    commutator,
    in_span_residual,
    is_projection,
    is_selfadjoint,
    is_selfadjoint_contraction,
    relative_commutant_basis,
    span_dimension,
)
from isingcc.monomial import monomial, monomials_in
from isingcc.oracle import QubitWindow, rep_element
from isingcc.scenario import event_A, rho_lambda

U = AlgebraElement.gen
M = AlgebraElement.mono


def test_pruning_drops_tiny_coefficients():
    x = AlgebraElement({(): 1.0, (0,): 1e-14})
    assert len(x) == 1
    assert (U(0) - U(0)).is_zero()


def test_projection_idempotent():
    p = 0.5 * (ONE + U(0))
    assert (p * p).isclose(p)
    assert is_projection(p)
    assert not is_projection(U(0))


def test_imaginary_pair_is_selfadjoint_unitary():
    x = M(0, 0.5, coeff=1j)
    assert (x * x).isclose(ONE)
    assert is_selfadjoint(x)
    assert not is_selfadjoint(M(0, 0.5))


def test_commutator_of_neighbours():
    assert commutator(U(0), U(0.5)).isclose(2 * M(0, 0.5))
    assert anticommutator(U(0), U(0.5)).is_zero()
    assert commutator(U(0), U(1)).is_zero()


def test_trace_examples():
    assert ONE.trace() == 1
    assert abs(event_A((0.6, 0.0, 0.8)).trace() - 0.5) < 1e-12
    for lam in (0.0, 0.3, 1.0):
        assert abs(rho_lambda(lam).trace() - 1) < 1e-12


def test_scaled_event_is_contraction():
    assert is_selfadjoint_contraction(2 * event_A((0, 1, 0)) - 1)
    assert not is_selfadjoint_contraction(2 * U(0))


def test_arithmetic_with_scalars():
    x = 2 + U(0)
    assert (x - 2).isclose(U(0))
    assert (3 - U(0)).isclose(3 * ONE - U(0))
    assert (x / 2).isclose(ONE + 0.5 * U(0))
    assert (U(0.5) ** 2).isclose(ONE)
    assert (U(0.5) ** 0).isclose(ONE)


def test_json_roundtrip():
    x = 0.5 * ONE + (0.25 - 1j) * M(-1, 0.5)
    assert AlgebraElement.from_json(x.to_json()).isclose(x, 0)


def test_support_and_queries():
    x = U(-1) + M(0, 1.5)
    assert x.support() == (-2, 3)
    assert ONE.support() is None
    assert ONE.is_scalar() and not x.is_scalar()
    assert x.coeff(monomial(0, 1.5)) == 1


class TestSpan:
    def test_two_point_algebra(self):
        assert span_dimension([ONE, U(0), U(0.5), M(0, 0.5, coeff=1j)]) == 4

    def test_duplicates(self):
        assert span_dimension([ONE, ONE]) == 1

    def test_three_point_monomials(self):
        xs = [AlgebraElement({m: 1.0}) for m in monomials_in(0, 1)]
        assert span_dimension(xs) == 8

    def test_in_span_residual(self):
        assert in_span_residual(U(0) + 2 * ONE, [ONE, U(0)]) < 1e-12
        assert math.isclose(in_span_residual(U(1), [ONE, U(0)]), 1.0)


class TestRelativeCommutant:
    def test_no_generators_gives_all_monomials(self):
        assert len(relative_commutant_basis([], (0, 1))) == 8

    def test_haag_surrogate_with_margin(self):
        window = (-3, 3)
        gens = [U(d / 2) for d in range(-6, 7) if abs(d) >= 2]
        basis = relative_commutant_basis(gens, window, margin=1)
        assert sorted(tuple(x.terms) for x in basis) == [((),), ((0,),)]

    def test_event_algebra_has_center_on_window(self):
        from isingcc.dynamics import joint_event_basis

        basis = relative_commutant_basis(joint_event_basis(), (-1, 1))
        assert span_dimension(basis) == 2
        assert in_span_residual(M(-1, 0, 1), basis) < 1e-9

    def test_event_algebra_commutant_within_itself_is_trivial(self):
        from isingcc.dynamics import joint_event_basis

        basis = joint_event_basis()
        comm = relative_commutant_basis(basis, (-1, 1), within=basis)
        assert len(comm) == 1
        assert comm[0].is_scalar()

    def test_errors(self):
        with pytest.raises(ValueError):
            relative_commutant_basis([], (0, 1), margin=1)
        with pytest.raises(ValueError):
            relative_commutant_basis([U(3)], (0, 1))

    def test_non_monomial_generators(self):
        p = 0.5 * (ONE + U(0))
        basis = relative_commutant_basis([p], (0, 0.5))
        assert span_dimension(basis) == 2


# ring and involution laws

W = QubitWindow(-2, 2)


@given(elements(), elements(), elements())
def test_associative_and_distributive(x, y, z):
    assert ((x * y) * z).isclose(x * (y * z), 1e-9)
    assert (x * (y + z)).isclose(x * y + x * z, 1e-9)


@given(elements(), elements())
def test_adjoint_reverses_products(x, y):
    assert (x * y).adjoint().isclose(y.adjoint() * x.adjoint(), 1e-9)
    assert x.adjoint().adjoint().isclose(x, 0)


@given(elements(), elements())
def test_trace_is_tracial_and_positive(x, y):
    assert abs((x * y).trace() - (y * x).trace()) < 1e-9
    assert abs(x.trace_with(y) - (x * y).trace()) < 1e-9
    assert (x.adjoint() * x).trace().real >= -1e-12


@given(elements(), elements())
def test_products_match_matrices(x, y):
    assert np.allclose(rep_element(x * y, W), rep_element(x, W) @ rep_element(y, W), atol=1e-9)
