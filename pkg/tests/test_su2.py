"""Polar su(2) construction, shift eigenbasis, and the sine algebra."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wracah import (
    FockSpace,
    HalfInt,
    ShiftParams,
    SubspaceLeakageError,
    ToleranceRule,
    UnsupportedLimitError,
    angular_momentum_ops,
    basis_transform_matrix,
    clock_shift_monomial,
    commutator,
    modulus_op,
    quon_operators,
    shift_eigenbasis,
    shift_op,
    verify_shift_eigenbasis,
    verify_sine_algebra,
    verify_su2,
)
from wracah.su2 import restrict_to_angular, shift_eigenvalue

R_GRID = (0.0, 0.5, 1.0, 2.37)


def test_shift_params_derived_quantities():
    p = ShiftParams(4, 1.0)
    assert p.j == HalfInt(3)
    assert p.phase_angle == pytest.approx(3 * math.pi)
    assert p.wrap_phase == pytest.approx(cmath.exp(1j * 3 * math.pi))
    assert abs(p.half_wrap_phase**2 - p.wrap_phase) < 1e-15


def test_shift_action_k3_literal():
    """Spot-check the three action regimes against hand values at k=3, r=1."""
    k, r = 3, 1.0
    params = ShiftParams(k, r)
    u = shift_op(params).mat
    fock = FockSpace(k)
    phase = cmath.exp(1j * math.pi * (k - 1) * r)
    half = cmath.exp(1j * math.pi * (k - 1) * r / 2)

    # interior: |0,2) -> |1,1)
    assert abs(u[fock.index(1, 1), fock.index(0, 2)] - 1.0) < 1e-14
    # mode-1 wrap: |2,1) -> half * |0,0)
    assert abs(u[fock.index(0, 0), fock.index(2, 1)] - half) < 1e-14
    # mode-2 wrap: |0,0) -> half * |1,2)
    assert abs(u[fock.index(1, 2), fock.index(0, 0)] - half) < 1e-14
    # double wrap: |2,0) -> full phase * |0,2)
    assert abs(u[fock.index(0, 2), fock.index(2, 0)] - phase) < 1e-14


def test_modulus_diagonal_values():
    k = 4
    h = modulus_op(k).mat
    fock = FockSpace(k)
    for idx in range(fock.dim):
        n1, n2 = fock.occupations(idx)
        assert h[idx, idx] == pytest.approx(math.sqrt(n1 * (n2 + 1)))


@pytest.mark.parametrize("k", range(2, 10))
@pytest.mark.parametrize("r", R_GRID)
def test_polar_construction_grid(k, r):
    report = verify_su2(ShiftParams(k, r))
    assert report.passed, [
        (c.name, c.residual) for c in report.checks if not c.passed
    ]


@given(
    st.integers(min_value=2, max_value=6),
    st.fractions(min_value=-2, max_value=3, max_denominator=12),
)
@settings(max_examples=15)
def test_polar_construction_random_rational_r(k, r):
    assert verify_su2(ShiftParams(k, float(r))).passed


def test_casimir_value_matches_spin():
    for k in (2, 3, 5):
        su2 = angular_momentum_ops(ShiftParams(k, 1.0))
        j = (k - 1) / 2
        expected = j * (j + 1) * np.eye(k)
        assert np.max(np.abs(su2.casimir().mat - expected)) < 1e-12


def test_shift_cyclicity_phase():
    for k, r in [(2, 0.5), (3, 2.37), (5, 1.0)]:
        params = ShiftParams(k, r)
        u = restrict_to_angular(shift_op(params), k)
        wrapped = u.power(k).mat
        expected = params.wrap_phase * np.eye(k)
        assert np.max(np.abs(wrapped - expected)) < 1e-12


def test_family_members_with_equal_wrap_phase_commute():
    """r and r + 4/(k-1) share the wrap phase and their shifts commute,
    so noncommutation sampling must avoid such pairs."""
    k = 2
    u0 = shift_op(ShiftParams(k, 0.0))
    u4 = shift_op(ShiftParams(k, 4.0))
    assert commutator(u0, u4).max_abs() < 1e-15

    u1 = shift_op(ShiftParams(k, 1.0))
    assert commutator(u0, u1).max_abs() > 0.5


def test_restrict_to_angular_rejects_leaky_operator():
    params = ShiftParams(3, 0.0)
    ops = quon_operators(3)
    with pytest.raises(SubspaceLeakageError):
        restrict_to_angular(ops.raise1, params.k)


class TestShiftEigenbasis:
    def test_analytic_transform_columns(self):
        j = HalfInt(2)
        basis = shift_eigenbasis(j, 1.0)
        dim = j.twice + 1
        for s in range(dim):
            alpha = -float(j) * 1.0 + s
            expected = np.array(
                [cmath.exp(2j * math.pi * alpha * (m - 1) / dim) for m in range(dim)]
            ) / math.sqrt(dim)
            # columns indexed by s, rows by m in descending-m storage order
            col = basis.transform[:, s]
            ratio = col / expected
            assert np.max(np.abs(ratio - ratio[0])) < 1e-12
            assert abs(abs(ratio[0]) - 1.0) < 1e-12

    def test_eigenvalue_formula(self):
        j = HalfInt(3)
        basis = shift_eigenbasis(j, 0.5)
        for s, lam in enumerate(basis.eigenvalues):
            assert abs(lam - shift_eigenvalue(j, 0.5, s)) < 1e-15
            assert abs(abs(lam) - 1.0) < 1e-14

    @pytest.mark.parametrize("k", range(2, 10))
    @pytest.mark.parametrize("r", R_GRID)
    def test_verified_grid(self, k, r):
        report = verify_shift_eigenbasis(HalfInt(k - 1), r)
        assert report.passed, [
            (c.name, c.residual) for c in report.checks if not c.passed
        ]

    def test_degenerate_j_zero_rejected(self):
        with pytest.raises(UnsupportedLimitError):
            shift_eigenbasis(HalfInt(0), 0.0)

    def test_eigenvalues_pairwise_distinct(self):
        basis = shift_eigenbasis(HalfInt(6), 2.37)
        vals = basis.eigenvalues
        for i in range(len(vals)):
            for l in range(i + 1, len(vals)):
                assert abs(vals[i] - vals[l]) > 1e-3

    def test_to_dict_shape(self):
        d = shift_eigenbasis(HalfInt(1), 1.0).to_dict()
        assert d["j"] == "1/2"
        assert d["r"] == 1.0
        assert len(d["alphas"]) == 2
        assert all(set(e) == {"re", "im"} for e in d["eigenvalues"])
        assert len(d["transform"]) == 2 and len(d["transform"][0]) == 2


class TestSineAlgebra:
    @pytest.mark.parametrize("k", (3, 5))
    @pytest.mark.parametrize("r", (0.0, 1.0))
    def test_commutators_match_sine_rule(self, k, r):
        report = verify_sine_algebra(ShiftParams(k, r), index_range=range(-2, 3))
        assert report.passed
        assert report.max_residual <= 1e-10

    def test_monomials_unitary(self):
        params = ShiftParams(5, 1.0)
        for m1, m2 in [(0, 0), (1, 0), (0, 1), (2, -1), (-2, 2)]:
            t = clock_shift_monomial(params, m1, m2)
            prod = t.adjoint().mat @ t.mat
            assert np.max(np.abs(prod - np.eye(t.mat.shape[0]))) < 1e-12

    def test_explicit_commutator_k3(self):
        """[T_(1,0), T_(0,1)] = -2i sin(2 pi / 3) T_(1,1) at k = 3."""
        params = ShiftParams(3, 0.0)
        t10 = clock_shift_monomial(params, 1, 0).mat
        t01 = clock_shift_monomial(params, 0, 1).mat
        t11 = clock_shift_monomial(params, 1, 1).mat
        lhs = t10 @ t01 - t01 @ t10
        rhs = -2j * math.sin(2 * math.pi / 3) * t11
        assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_basis_transform_matrix_is_unitary():
    for j, r in [(HalfInt(1), 0.0), (HalfInt(2), 1.0), (HalfInt(5), 2.37)]:
        v = basis_transform_matrix(j, r)
        dim = j.twice + 1
        assert v.shape == (dim, dim)
        assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) < 1e-13
