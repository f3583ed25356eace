import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from su11.algebra import StateVector, basis_state
from su11.displacement import (
    DisplacementParams,
    MatrixElementTable,
    alpha_from_xi,
    decomposed_apply,
    displacement_oracle,
    matrix_column,
    matrix_element_hyp,
    matrix_element_sum,
    matrix_table,
    xi_from_alpha,
)
from su11.states import pcs

K_GRID = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0)


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            DisplacementParams(-0.1)
        with pytest.raises(ValueError):
            DisplacementParams(math.inf)

    def test_theta_reduced_to_halfopen_interval(self):
        p = DisplacementParams(1.0, 3.0 * math.pi)
        assert p.theta == pytest.approx(math.pi)
        p = DisplacementParams(1.0, -math.pi)
        assert p.theta == pytest.approx(math.pi)
        p = DisplacementParams(1.0, -0.5)
        assert p.theta == pytest.approx(-0.5)

    def test_argument_forms(self):
        p = DisplacementParams(0.8, 0.3)
        assert p.xi == pytest.approx(0.8 * cmath.exp(0.3j))
        assert p.alpha == pytest.approx(math.tanh(0.8) * cmath.exp(0.3j))
        assert alpha_from_xi(p) == p.alpha

    def test_disc_round_trip(self):
        p = DisplacementParams(1.0, -0.7)
        q = xi_from_alpha(alpha_from_xi(p))
        assert q.r == pytest.approx(p.r, rel=1e-12)
        assert q.theta == pytest.approx(p.theta, rel=1e-12)

    def test_disc_inverse_known_value(self):
        # tanh(1) = 0.76159...
        q = xi_from_alpha(0.7615941559557649)
        assert q.r == pytest.approx(1.0, rel=1e-12)
        assert q.theta == 0.0

    def test_disc_requires_interior(self):
        with pytest.raises(ValueError):
            xi_from_alpha(1.0)
        assert xi_from_alpha(0.0).r == 0.0


class TestScalarElements:
    def test_zero_displacement_is_identity(self):
        p = DisplacementParams(0.0)
        assert matrix_element_sum(3, 3, 0.5, p) == 1.0
        assert matrix_element_sum(3, 2, 0.5, p) == 0.0
        with pytest.raises(ValueError):
            matrix_element_hyp(1, 1, 0.5, p)

    def test_vacuum_element(self):
        # <0|S|0> = sech(r)^{2k}
        for k in (0.25, 1.0):
            for r in (0.3, 1.1):
                p = DisplacementParams(r, 0.9)
                want = math.cosh(r) ** (-2.0 * k)
                assert matrix_element_sum(0, 0, k, p) == pytest.approx(want, rel=1e-13)
                assert matrix_element_hyp(0, 0, k, p) == pytest.approx(want, rel=1e-13)

    def test_level_one_element(self):
        # the q-sum has two terms here; 2F1(-1,-1;2k;z) = 1 + z/(2k)
        k, r = 0.75, 0.6
        p = DisplacementParams(r)
        t = math.tanh(r)
        z = 1.0 - 1.0 / (t * t)
        pref = 2.0 * k * t * t * math.cosh(r) ** (-2.0 * k)
        expected = -pref * (1.0 + z / (2.0 * k))
        assert matrix_element_sum(1, 1, k, p) == pytest.approx(expected, rel=1e-12)

    def test_domain_checks(self):
        p = DisplacementParams(0.4)
        with pytest.raises(ValueError):
            matrix_element_sum(-1, 0, 0.5, p)
        with pytest.raises(ValueError):
            matrix_element_sum(0, 0, -0.5, p)

    @given(
        n=st.integers(0, 25),
        m=st.integers(0, 12),
        k=st.sampled_from(K_GRID),
        r=st.floats(0.05, 1.2, allow_nan=False),
        theta=st.floats(-3.0, 3.0, allow_nan=False),
    )
    @settings(max_examples=150, deadline=None)
    def test_sum_and_hyp_agree(self, n, m, k, r, theta):
        p = DisplacementParams(r, theta)
        a = matrix_element_sum(n, m, k, p)
        b = matrix_element_hyp(n, m, k, p)
        assert a == pytest.approx(b, rel=1e-9, abs=1e-12)

    def test_conjugation_symmetry(self):
        # S(-xi) = S(xi)^dagger entrywise
        p = DisplacementParams(0.7, 0.4)
        q = DisplacementParams(0.7, 0.4 + math.pi)
        for n in range(5):
            for m in range(5):
                a = matrix_element_sum(n, m, 0.75, p)
                b = matrix_element_sum(m, n, 0.75, q)
                assert a == pytest.approx(b.conjugate(), rel=1e-12, abs=1e-15)


class TestColumns:
    def test_zero_displacement(self):
        col = matrix_column(2, 0.5, DisplacementParams(0.0), 6)
        want = np.zeros(6, dtype=complex)
        want[2] = 1.0
        assert np.array_equal(col, want)

    def test_matches_scalar_route(self):
        p = DisplacementParams(0.8, 0.6)
        for m in (0, 3, 11):
            col = matrix_column(m, 1.0, p, 48)
            ref = np.array([matrix_element_sum(n, m, 1.0, p) for n in range(48)])
            assert np.max(np.abs(col - ref)) < 1e-12

    def test_displaced_bottom_is_coherent_state(self):
        for k in K_GRID:
            for r in (0.2, 0.8):
                p = DisplacementParams(r, 1.1)
                col = matrix_column(0, k, p, 128)
                want = pcs(p.alpha, k, 128)
                assert np.max(np.abs(col - want.amplitudes)) < 1e-10

    def test_columns_orthonormal(self):
        p = DisplacementParams(0.5, -0.9)
        cols = [matrix_column(m, 0.75, p, 128) for m in range(8)]
        for i in range(8):
            for j in range(8):
                want = 1.0 if i == j else 0.0
                got = np.vdot(cols[i], cols[j])
                assert abs(got - want) < 1e-10

    def test_column_outside_dimension(self):
        with pytest.raises(ValueError):
            matrix_column(8, 0.5, DisplacementParams(0.1), 8)


class TestTable:
    def test_zero_displacement_identity(self):
        t = matrix_table(0.5, DisplacementParams(0.0), 5)
        assert np.array_equal(t.entries, np.eye(5, dtype=complex))
        assert np.all(t.column_norm_deficits() == 0.0)

    def test_matches_scalar_entries(self):
        p = DisplacementParams(0.6, 0.2)
        t = matrix_table(1.5, p, 10)
        assert t.dim == 10
        assert t.entries[4, 7] == matrix_element_sum(4, 7, 1.5, p)

    def test_entries_read_only(self):
        t = matrix_table(0.5, DisplacementParams(0.3), 6)
        with pytest.raises(ValueError):
            t.entries[0, 0] = 5.0

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            MatrixElementTable(0.5, DisplacementParams(0.1), np.ones((2, 3)))


class TestOracle:
    def test_requires_room(self):
        with pytest.raises(ValueError):
            displacement_oracle(0.5, DisplacementParams(0.5), 4)

    def test_agrees_with_closed_forms(self):
        p = DisplacementParams(0.5, 1.3)
        oracle = displacement_oracle(1.0, p, 96)
        for n in range(8):
            for m in range(8):
                want = matrix_element_sum(n, m, 1.0, p)
                assert abs(oracle.entries[n, m] - want) < 1e-10

    def test_one_parameter_group(self):
        # same-direction displacements compose additively in r
        theta = 0.4
        a = displacement_oracle(0.75, DisplacementParams(0.3, theta), 96).entries
        b = displacement_oracle(0.75, DisplacementParams(0.45, theta), 96).entries
        c = displacement_oracle(0.75, DisplacementParams(0.75, theta), 96).entries
        prod = a @ b
        assert np.max(np.abs(prod[:8, :8] - c[:8, :8])) < 1e-9


class TestDecomposedApply:
    def test_on_bottom_level(self):
        k = 0.5
        p = DisplacementParams(0.6, 0.9)
        out = decomposed_apply(k, p, basis_state(0, 96, k))
        want = pcs(p.alpha, k, 96)
        assert np.max(np.abs(out.amplitudes - want.amplitudes)) < 1e-12

    def test_matches_columns(self):
        k = 1.0
        p = DisplacementParams(0.5, -0.4)
        for m in (1, 4):
            out = decomposed_apply(k, p, basis_state(m, 96, k))
            col = matrix_column(m, k, p, 96)
            assert np.max(np.abs(out.amplitudes - col)) < 1e-9

    def test_preserves_norm_of_converged_states(self):
        k = 0.75
        p = DisplacementParams(0.7, 0.25)
        rng = np.random.default_rng(7)
        amp = np.zeros(128, dtype=complex)
        amp[:6] = rng.normal(size=6) + 1j * rng.normal(size=6)
        s = decomposed_apply(k, p, StateVector(amp, k).normalized())
        assert s.norm == pytest.approx(1.0, abs=1e-9)

    def test_index_mismatch(self):
        with pytest.raises(ValueError):
            decomposed_apply(0.5, DisplacementParams(0.1), basis_state(0, 16, 1.0))
