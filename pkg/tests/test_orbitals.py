import math

import numpy as np
import pytest

from selberg_gas import orbitals as orb
from selberg_gas import quadrature as quad
from selberg_gas.specfun import DomainError, gegenbauer_quarter, log_beta, log_gamma


class TestApplyKernel:
    def test_ground_eigenvalue_everywhere(self):
        # constant mode maps to pi*sqrt(2), independent of X
        for X in (0.1, 0.5, 0.85):
            val = orb.apply_kernel(orb.EIGEN_KERNEL, lambda Y: np.ones_like(Y), X,
                                   tol=1e-9)
            assert val == pytest.approx(math.pi * math.sqrt(2.0), rel=1e-8)

    def test_second_mode(self):
        lhs = orb.apply_kernel(orb.EIGEN_KERNEL,
                               lambda Y: orb._gegenbauer_vec(2, 2.0 * Y - 1.0),
                               0.3, tol=1e-9)
        lbar2 = math.sqrt(2.0 * math.pi) * math.gamma(2.5) / 2.0
        assert lhs == pytest.approx(lbar2 * gegenbauer_quarter(2, -0.4), rel=1e-8)

    def test_porter_stirling_quarter(self):
        assert orb.porter_stirling_apply(0.25, 0.6) == pytest.approx(1.0, abs=1e-8)

    def test_porter_stirling_family(self):
        for nu in (0.25, 0.5, 0.75):
            for x in np.linspace(0.05, 0.95, 10):
                assert orb.porter_stirling_apply(nu, float(x)) == pytest.approx(
                    1.0, abs=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            orb.apply_kernel(orb.EIGEN_KERNEL, lambda Y: Y, 0.0)
        with pytest.raises(DomainError):
            orb.KernelSpec(nu=1.0, weight_exponent=0.0)


class TestEigenrelation:
    def test_low_modes_at_interior_points(self):
        for j in range(6):
            for X in (0.1, 0.3, 0.5, 0.7, 0.9):
                assert orb.eigen_residual(j, X) <= 1e-4

    def test_expansion_identity_projection(self):
        assert orb.verify_expansion_identity(3, 0.25) <= 1e-5
        assert orb.verify_expansion_identity(0, 0.5) <= 1e-6


class TestOrbitals:
    def test_ground_state_shape(self):
        # phi_0 = [X(1-X)]^{1/8} / sqrt(A), A = B(3/4,3/4)/pi for L = 1
        phi0 = orb.orbital(0)
        a_const = math.exp(log_beta(0.75, 0.75)) / math.pi
        for X in (0.2, 0.5, 0.9):
            expected = (X * (1.0 - X)) ** 0.125 / math.sqrt(a_const)
            assert float(phi0.evaluate(X)) == pytest.approx(expected, rel=1e-12)

    def test_positive_near_right_edge(self):
        for j in range(7):
            assert float(orb.orbital(j).evaluate(0.999)) > 0.0

    def test_orthogonality_and_norm(self):
        rule = quad.power_panel(0.0, 1.0, -0.25, -0.25, 60)
        weight_free = (rule.nodes * (1.0 - rule.nodes)) ** 0.125
        phi1 = orb.orbital(1).evaluate(rule.nodes) / weight_free
        phi2 = orb.orbital(2).evaluate(rule.nodes) / weight_free
        phi3 = orb.orbital(3).evaluate(rule.nodes) / weight_free
        cross = float(np.sum(rule.weights * phi1 * phi2)) / math.pi
        norm = float(np.sum(rule.weights * phi3 * phi3)) / math.pi
        assert abs(cross) <= 1e-10
        assert norm == pytest.approx(1.0, abs=1e-8)

    def test_scaled_occupations(self):
        assert orb.scaled_occupation(0) == pytest.approx(math.pi * math.sqrt(2.0),
                                                         rel=1e-14)
        assert orb.scaled_occupation(1) == pytest.approx(math.pi / math.sqrt(2.0),
                                                         rel=1e-14)
        for j in range(9):
            ratio = orb.scaled_occupation(j + 1) / orb.scaled_occupation(j)
            assert ratio == pytest.approx((j + 0.5) / (j + 1.0), rel=1e-13)


class TestAppendixIdentities:
    def test_s_single_term(self):
        from selberg_gas.specfun import hyp2f1
        z = 0.5
        assert orb.appendix_s(0, z) == pytest.approx(
            z**0.25 * hyp2f1(0.25, 0.75, 1.25, z), rel=1e-14)

    def test_l_eigenrelation(self):
        for j in range(6):
            for z in (0.2, 0.5, 0.8):
                target = -j * (j + 0.5) * orb.appendix_s(j, z)
                assert orb.l_operator_on_s(j, z) == pytest.approx(
                    target, rel=1e-9, abs=1e-12)

    def test_contiguity_point(self):
        r1, r2 = orb.contiguity_residuals(3, 0.4)
        assert abs(r1) <= 1e-10 and abs(r2) <= 1e-10

    def test_derivative_rule_against_finite_difference(self):
        from selberg_gas.specfun import hyp2f1
        rng = np.random.default_rng(5)
        h = 1e-5
        for _ in range(20):
            k = int(rng.integers(0, 6))
            z = float(rng.uniform(0.05, 0.9))
            closed = orb.s_term_derivative(k, z)
            f = lambda u: u**0.25 * hyp2f1(0.25 - k, 0.75, 1.25, u)
            fd = (f(z + h) - f(z - h)) / (2.0 * h)
            assert closed == pytest.approx(fd, rel=1e-6)

    def test_hypergeometric_kernel_representation(self):
        # closed representation agrees with direct singular quadrature
        for j in (0, 1, 4):
            for X in (0.3, 0.62):
                direct = orb.apply_kernel(
                    orb.EIGEN_KERNEL,
                    lambda Y: orb._gegenbauer_vec(j, 2.0 * Y - 1.0), X, tol=1e-10)
                closed = orb.kernel_via_hypergeometric(j, X)
                assert closed == pytest.approx(direct, rel=1e-9, abs=1e-11)

    def test_omega_positive(self):
        for j in range(10):
            assert orb.omega(j) > 0.0
        state = orb.appendix_state(3, 1, 0.4)
        assert state.omega_j == pytest.approx(
            math.exp(log_gamma(0.75) - log_gamma(1.25)
                     + log_gamma(3.5) - log_gamma(4.0)), rel=1e-13)
