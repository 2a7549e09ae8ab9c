"""Spherical harmonics, quadrature, and the shift-labeled eigenfunctions."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import sph_harm_y

from wracah import (
    InvalidArgumentError,
    QuadratureGrid,
    SphericalPoint,
    UnsupportedLimitError,
    spherical_harmonic,
    verify_sphere,
    y_r_eigenfunction,
)
from wracah.sphere import harmonic_grid_values, y_r_grid_values

angles = st.tuples(
    st.floats(min_value=0.05, max_value=math.pi - 0.05),
    st.floats(min_value=0.0, max_value=2 * math.pi - 1e-9),
)


class TestSphericalHarmonics:
    def test_constant_harmonic(self):
        val = spherical_harmonic(0, 0, SphericalPoint(1.234, 2.345))
        assert val == pytest.approx(1.0 / math.sqrt(4 * math.pi), abs=1e-15)

    def test_dipole_harmonics(self):
        theta, phi = 0.7, 1.9
        p = SphericalPoint(theta, phi)
        assert spherical_harmonic(1, 0, p) == pytest.approx(
            math.sqrt(3 / (4 * math.pi)) * math.cos(theta), abs=1e-14
        )
        want = -math.sqrt(3 / (8 * math.pi)) * math.sin(theta) * cmath.exp(1j * phi)
        assert spherical_harmonic(1, 1, p) == pytest.approx(want, abs=1e-14)

    @given(angles, st.integers(min_value=0, max_value=10))
    @settings(max_examples=20)
    def test_against_scipy(self, angle, l):
        theta, phi = angle
        p = SphericalPoint(theta, phi)
        for m in range(-l, l + 1):
            want = complex(sph_harm_y(l, m, theta, phi))
            assert spherical_harmonic(l, m, p) == pytest.approx(want, abs=1e-12)

    @given(angles, st.integers(min_value=0, max_value=8))
    @settings(max_examples=15)
    def test_negative_m_reflection(self, angle, l):
        theta, phi = angle
        p = SphericalPoint(theta, phi)
        for m in range(0, l + 1):
            plus = spherical_harmonic(l, m, p)
            minus = spherical_harmonic(l, -m, p)
            assert minus == pytest.approx((-1) ** m * plus.conjugate(), abs=1e-12)

    def test_argument_validation(self):
        with pytest.raises(InvalidArgumentError):
            spherical_harmonic(1, 2, SphericalPoint(0.5, 0.5))
        with pytest.raises(InvalidArgumentError):
            spherical_harmonic(-1, 0, SphericalPoint(0.5, 0.5))
        with pytest.raises(InvalidArgumentError):
            SphericalPoint(-0.1, 0.0)
        with pytest.raises(InvalidArgumentError):
            SphericalPoint(0.5, 7.0)


class TestQuadrature:
    def test_weights_integrate_constants(self):
        grid = QuadratureGrid(6, 7)
        ones = np.ones((6, 7), dtype=complex)
        assert complex(grid.integrate(ones)) == pytest.approx(4 * math.pi, abs=1e-12)

    def test_unit_norm_quadrupole(self):
        grid = QuadratureGrid(16, 9)
        vals = harmonic_grid_values(2, grid)[(2, 1)]
        norm = grid.integrate(np.conj(vals) * vals)
        assert complex(norm) == pytest.approx(1.0, abs=1e-12)

    def test_orthonormality_matrix(self):
        l_max = 5
        grid = QuadratureGrid(l_max + 1, 2 * l_max + 1)
        table = harmonic_grid_values(l_max, grid)
        keys = sorted(table)
        fam = np.stack([table[key] for key in keys])
        gram = grid.gram(fam)
        assert np.max(np.abs(gram - np.eye(len(keys)))) < 1e-12

    def test_grid_validation(self):
        with pytest.raises(InvalidArgumentError):
            QuadratureGrid(0, 5)


class TestShiftEigenfunctions:
    def test_family_is_orthonormal(self):
        for l, r in [(1, 0.0), (2, 1.0), (3, 2.37), (4, 0.5)]:
            grid = QuadratureGrid(l + 2, 2 * l + 3)
            fam = y_r_grid_values(l, r, grid)
            gram = grid.gram(fam)
            assert np.max(np.abs(gram - np.eye(2 * l + 1))) < 1e-12

    def test_matches_harmonic_combination(self):
        l, r = 2, 1.0
        p = SphericalPoint(0.9, 4.0)
        dim = 2 * l + 1
        for s in range(dim):
            alpha = -l * r + s
            want = sum(
                cmath.exp(2j * math.pi * alpha * m / dim) * spherical_harmonic(l, m, p)
                for m in range(-l, l + 1)
            ) / math.sqrt(dim)
            assert y_r_eigenfunction(l, s, r, p) == pytest.approx(want, abs=1e-13)

    def test_pole_value_picks_out_m_zero(self):
        """At the pole only m = 0 survives, so |y| = Y_l0(0) / sqrt(2l+1)."""
        p = SphericalPoint(0.0, 0.0)
        got = y_r_eigenfunction(1, 0, 0.0, p)
        want = math.sqrt(3 / (4 * math.pi)) / math.sqrt(3.0)
        assert abs(got) == pytest.approx(want, abs=1e-14)
        assert got.real == pytest.approx(0.28209479177387814, abs=1e-14)

    def test_family_step_relabels(self):
        l = 2
        grid = QuadratureGrid(6, 7)
        a = y_r_grid_values(l, 0.0, grid)
        b = y_r_grid_values(l, 2.0, grid)
        n = 2 * l + 1
        for s in range(n):
            assert np.max(np.abs(b[s] - a[(s + 1) % n])) < 1e-12

    def test_degree_zero_rejected(self):
        with pytest.raises(UnsupportedLimitError):
            y_r_eigenfunction(0, 0, 1.0, SphericalPoint(0.5, 0.5))

    def test_label_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            y_r_eigenfunction(1, 3, 1.0, SphericalPoint(0.5, 0.5))


def test_full_verification_suite():
    report = verify_sphere(l_max=6, family_l_max=3, rs=(0.0, 1.0))
    assert report.passed, [(c.name, c.residual) for c in report.checks if not c.passed]
    assert report.max_residual < 1e-10
