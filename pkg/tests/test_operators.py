"""Tests for the LGL collocation operators: nodes, weights, D, V, inner products."""

import numpy as np
import pytest

from dgfilter.operators import (
    build_operators,
    derivative_matrix,
    discrete_inner,
    discrete_norm,
    interpolation_matrix,
    legendre_normalized,
    lgl_nodes_weights,
    sbp_residual,
    vandermonde,
)


class TestNodesWeights:
    def test_degree_one_is_endpoints(self):
        nodes, weights = lgl_nodes_weights(1)
        assert np.array_equal(nodes, [-1.0, 1.0])
        assert np.allclose(weights, [1.0, 1.0], atol=1e-15)

    def test_degree_two_hand_solved(self):
        # moment equations sum w x^k = int x^k for k = 0..3 give
        # w = (1/3, 4/3, 1/3) at nodes (-1, 0, 1)
        nodes, weights = lgl_nodes_weights(2)
        assert np.allclose(nodes, [-1.0, 0.0, 1.0], atol=1e-15)
        assert np.allclose(weights, [1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0], atol=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 33, 64, 512])
    def test_structure(self, n):
        nodes, weights = lgl_nodes_weights(n)
        assert nodes[0] == -1.0 and nodes[-1] == 1.0
        assert np.all(np.diff(nodes) > 0)
        assert np.all(weights > 0)
        assert abs(np.sum(weights) - 2.0) <= 1e-13

    def test_rejects_degree_zero(self):
        with pytest.raises(ValueError):
            lgl_nodes_weights(0)

    def test_rejects_over_cap(self):
        with pytest.raises(ValueError):
            lgl_nodes_weights(513)

    @pytest.mark.parametrize("n", [2, 5, 16, 48])
    def test_quadrature_exactness(self, n):
        """Random polynomial products of degree <= 2n - 1 integrate exactly."""
        rng = np.random.default_rng(1234 + n)
        nodes, weights = lgl_nodes_weights(n)
        for _ in range(20):
            dp = int(rng.integers(0, n + 1))
            dq = 2 * n - 1 - dp
            p = np.polynomial.Polynomial(rng.uniform(-1, 1, dp + 1))
            q = np.polynomial.Polynomial(rng.uniform(-1, 1, max(dq, 0) + 1))
            quad = float(np.sum(weights * p(nodes) * q(nodes)))
            prim = (p * q).integ()
            exact = prim(1.0) - prim(-1.0)
            norm_p = np.sqrt((p * p).integ()(1.0) - (p * p).integ()(-1.0))
            norm_q = np.sqrt((q * q).integ()(1.0) - (q * q).integ()(-1.0))
            assert abs(quad - exact) <= 1e-12 * max(1.0, norm_p * norm_q)


class TestLegendreNormalized:
    def test_mode_zero_is_constant(self):
        assert legendre_normalized(0, 0.3) == pytest.approx(np.sqrt(0.5), abs=1e-15)

    def test_mode_one_at_right_endpoint(self):
        assert legendre_normalized(1, 1.0) == pytest.approx(np.sqrt(1.5), abs=1e-15)

    def test_rejects_negative_mode(self):
        with pytest.raises(ValueError):
            legendre_normalized(-1, 0.0)

    @pytest.mark.parametrize("n", [3, 8, 24])
    def test_discrete_orthonormality(self, n):
        """<L_j, L_k> = delta_jk under LGL quadrature while j + k <= 2n - 1."""
        nodes, weights = lgl_nodes_weights(n)
        for j in range(n + 1):
            for k in range(n + 1):
                if j + k > 2 * n - 1:
                    continue
                val = discrete_inner(legendre_normalized(j, nodes),
                                     legendre_normalized(k, nodes), weights)
                assert val == pytest.approx(1.0 if j == k else 0.0, abs=1e-12)


class TestDerivativeMatrix:
    def test_degree_one_hand_derived(self):
        d = derivative_matrix(np.array([-1.0, 1.0]))
        assert np.array_equal(d, [[-0.5, 0.5], [-0.5, 0.5]])

    def test_constant_derivative_vanishes(self):
        # rows sum to zero by construction; the matvec reorders the sum so
        # only the roundoff floor remains
        nodes, _ = lgl_nodes_weights(12)
        assert np.max(np.abs(derivative_matrix(nodes) @ np.ones(13))) <= 1e-13

    def test_identity_derivative(self):
        nodes, _ = lgl_nodes_weights(9)
        assert np.allclose(derivative_matrix(nodes) @ nodes, np.ones(10), atol=1e-13)

    def test_rejects_duplicate_nodes(self):
        with pytest.raises(ValueError):
            derivative_matrix(np.array([-1.0, 0.0, 0.0, 1.0]))

    @pytest.mark.parametrize("n", [4, 16, 64])
    def test_monomial_exactness(self, n):
        nodes, _ = lgl_nodes_weights(n)
        d = derivative_matrix(nodes)
        worst = 0.0
        for k in range(1, n + 1):
            err = np.max(np.abs(d @ nodes**k - k * nodes ** (k - 1)))
            worst = max(worst, err)
        assert worst <= 1e-10


class TestVandermonde:
    def test_constant_column(self):
        nodes, _ = lgl_nodes_weights(6)
        v, _ = vandermonde(nodes)
        assert np.allclose(v[:, 0], np.sqrt(0.5), atol=1e-15)

    @pytest.mark.parametrize("n", [1, 8, 32, 64])
    def test_inverse(self, n):
        nodes, _ = lgl_nodes_weights(n)
        v, vinv = vandermonde(nodes)
        assert np.max(np.abs(vinv @ v - np.eye(n + 1))) <= 1e-12

    def test_modal_transform_picks_out_mode(self):
        nodes, _ = lgl_nodes_weights(7)
        _, vinv = vandermonde(nodes)
        coeffs = vinv @ legendre_normalized(2, nodes)
        expected = np.zeros(8)
        expected[2] = 1.0
        assert np.allclose(coeffs, expected, atol=1e-13)

    def test_singular_input_reports_conditioning(self):
        # coincident points make the basis evaluation matrix rank deficient
        with pytest.raises(ArithmeticError, match="condition"):
            vandermonde(np.zeros(5))


class TestInnerProducts:
    def test_constant(self):
        _, weights = lgl_nodes_weights(5)
        assert discrete_inner(np.ones(6), np.ones(6), weights) == pytest.approx(2.0, abs=1e-14)

    def test_linear(self):
        # int x^2 over [-1, 1]; exact for n >= 2
        nodes, weights = lgl_nodes_weights(4)
        assert discrete_inner(nodes, nodes, weights) == pytest.approx(2.0 / 3.0, abs=1e-14)

    @pytest.mark.parametrize("n", [1, 4, 16, 64])
    def test_top_mode_norm(self, n):
        """The discrete norm of the top mode overshoots: ||L_n||^2 = 2 + 1/n."""
        nodes, weights = lgl_nodes_weights(n)
        val = discrete_norm(legendre_normalized(n, nodes), weights) ** 2
        assert val == pytest.approx(2.0 + 1.0 / n, rel=1e-12)

    def test_accepts_matrix_or_weights(self):
        ops = build_operators(5)
        u = np.linspace(0, 1, 6)
        assert discrete_inner(u, u, ops.M) == discrete_inner(u, u, ops.weights)


class TestSbp:
    def test_degree_one_exact(self):
        assert sbp_residual(build_operators(1)) == 0.0

    @pytest.mark.parametrize("n", list(range(1, 65)))
    def test_residual_sweep(self, n):
        assert sbp_residual(build_operators(n)) <= 1e-12

    def test_perturbation_is_detected(self):
        # at degree 1 the mass matrix is the identity, so a perturbation of
        # D passes through at full size (doubled by the transpose term)
        ops = build_operators(1)
        d_bad = ops.D.copy()
        d_bad[0, 0] += 1e-3
        md = ops.M @ d_bad
        assert np.max(np.abs(md + md.T - ops.B)) >= 1e-3

    def test_perturbation_scales_with_weight(self):
        ops = build_operators(16)
        d_bad = ops.D.copy()
        d_bad[0, 0] += 1e-3
        md = ops.M @ d_bad
        assert np.max(np.abs(md + md.T - ops.B)) >= 2.0 * ops.weights[0] * 1e-3 * 0.999


class TestInterpolation:
    def test_reproduces_polynomials(self):
        nodes, _ = lgl_nodes_weights(10)
        xt = np.linspace(-1, 1, 57)
        mat = interpolation_matrix(nodes, xt)
        assert np.allclose(mat @ nodes**7, xt**7, atol=1e-12)

    def test_exact_hits(self):
        nodes, _ = lgl_nodes_weights(6)
        mat = interpolation_matrix(nodes, nodes[[0, 3, 6]])
        u = np.sin(nodes)
        assert np.array_equal(mat @ u, u[[0, 3, 6]])
