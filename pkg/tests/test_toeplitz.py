"""Toeplitz analysis: determinants, order, roots, one-step extension."""

import numpy as np
import pytest

from conftest import random_hermitian_sequence

from fuzzspec import (ArcSystem, InvalidSequenceError, PreconditionError,
                      build_matrices, c_to_s, caratheodory_extend,
                      classify_order, corner_affine, crisp_spectrum,
                      determinant_sequence, fourier_coefficients,
                      random_arc_system, random_trapezoid_mixture,
                      toeplitz_polynomial, unit_root_decompose)
from fuzzspec.toeplitz import aberth_roots, det_direct, polynomial_roots

PI = np.pi
TWO_PI = 2 * np.pi


def crisp_nonlinear(arcs, K):
    return c_to_s(crisp_spectrum(arcs, K), K)


class TestBuildMatrices:
    def test_k0(self):
        T, W = build_matrices(np.array([1.5 + 0j]), 0)
        np.testing.assert_array_equal(T, [[1.5]])
        assert W.shape == (0, 0)

    def test_k1_layout(self):
        s = np.array([2.0, 0.3 + 0.4j])
        T, W = build_matrices(s, 1)
        np.testing.assert_array_equal(
            T, [[2.0, 0.3 + 0.4j], [0.3 - 0.4j, 2.0]])
        np.testing.assert_array_equal(W, [[0.3 + 0.4j]])

    def test_suppression_relation(self, rng):
        # W_k equals T_k with the first column and last row removed
        for _ in range(100):
            k = int(rng.integers(1, 9))
            s = random_hermitian_sequence(rng, k + 1)
            T, W = build_matrices(s, k)
            np.testing.assert_array_equal(T[:-1, 1:], W)

    def test_window_too_short(self):
        with pytest.raises(Exception):
            build_matrices(np.array([1.0 + 0j]), 2)


class TestDeterminantSequence:
    def test_zero_sequence(self):
        ta = determinant_sequence(np.zeros(5, dtype=complex), 4)
        np.testing.assert_array_equal(ta.D, np.zeros(5))

    def test_rank_one_gram(self):
        mu, alpha = 1.7, np.exp(0.9j)
        s = mu * alpha ** np.arange(4)
        ta = determinant_sequence(s, 3)
        assert ta.D[0] == pytest.approx(mu)
        assert ta.D[1] == pytest.approx(0.0, abs=1e-14)

    def test_direct_vs_factorized(self, rng):
        # the two determinant routes agree on their overlap
        for _ in range(50):
            s = random_hermitian_sequence(rng, 5)
            for k in range(5):
                T, W = build_matrices(s, k)
                assert det_direct(T) == pytest.approx(np.linalg.det(T),
                                                      abs=1e-10)
                if k:
                    assert det_direct(W) == pytest.approx(np.linalg.det(W),
                                                          abs=1e-10)

    def test_imaginary_residue_small(self, rng):
        s = random_hermitian_sequence(rng, 9)
        ta = determinant_sequence(s, 8)
        assert np.all(ta.imag_residue <= 1e-12 * ta.tol_scale)

    def test_corner_identity_spot(self, rng):
        # D_1^2 - D_0 D_2 = |F_2|^2, everything via direct expansion
        s = random_hermitian_sequence(rng, 3)
        ta = determinant_sequence(s, 2)
        lhs = ta.D[1] ** 2 - ta.D[0] * ta.D[2]
        assert lhs == pytest.approx(abs(ta.F[2]) ** 2, rel=1e-10, abs=1e-10)

    def test_corner_identity_property(self, rng):
        for _ in range(200):
            s = random_hermitian_sequence(rng, 9)
            ta = determinant_sequence(s, 8)
            D = np.concatenate([[1.0], ta.D])  # D_{-1} = 1
            for k in range(1, 9):
                lhs = D[k] ** 2 - D[k - 1] * D[k + 1]
                rhs = abs(ta.F[k]) ** 2
                scale = ta.tol_scale[k - 1] ** 2 + rhs + 1.0
                assert abs(lhs - rhs) <= 1e-10 * scale


class TestClassifyOrder:
    def test_crisp_inputs_finite(self, rng):
        for n in (1, 2, 3, 5):
            arcs = random_arc_system(rng, n)
            ns = crisp_nonlinear(arcs, n + 2)
            ta = determinant_sequence(ns, n + 2)
            assert ta.order.finite and ta.order.n == n
            assert not ta.order.violations

    def test_fuzzy_input_infinite_within_certifiable_window(self):
        # strictly fuzzy input: determinants stay positive; the relative
        # zero test can certify that as far as double precision reaches
        # (the relative magnitudes decay geometrically and cross the 1e-10
        # threshold around k = 8 for a trapezoid, so the widest window with
        # a clean infinite verdict is K = 7)
        from fuzzspec import TrapezoidMembership
        f = TrapezoidMembership(1.0, 2.0, 3.5, 5.0, height=0.8)
        ns = c_to_s(fourier_coefficients(f, 16), 16)
        ta = determinant_sequence(ns, 7)
        assert not ta.order.finite
        assert ta.order.upto == 7
        assert np.all(ta.D > 0)

    def test_fuzzy_input_underflows_to_numerical_order_at_wide_window(self):
        # beyond the certifiable window the true (positive) determinants
        # fall below the roundoff floor of the relative test and the
        # verdict degrades to a finite numerical order; the determinants
        # themselves are still reported
        from fuzzspec import TrapezoidMembership
        f = TrapezoidMembership(1.0, 2.0, 3.5, 5.0, height=0.8)
        ns = c_to_s(fourier_coefficients(f, 16), 16)
        ta = determinant_sequence(ns, 16)
        assert ta.order.finite and ta.order.n >= 7

    def test_negative_determinant_rejected(self):
        s = np.array([1.0, 3.0 + 0j])  # D_1 = 1 - 9 < 0
        ta = determinant_sequence(s, 1)
        assert ta.order is None  # not the spectrum of any fuzzy set
        with pytest.raises(InvalidSequenceError):
            classify_order(ta)

    def test_zero_sequence_order_zero(self):
        ta = determinant_sequence(np.zeros(4, dtype=complex), 3)
        assert ta.order.finite and ta.order.n == 0

    def test_explicit_tolerance(self, rng):
        arcs = random_arc_system(rng, 2)
        ns = crisp_nonlinear(arcs, 4)
        ta = determinant_sequence(ns, 4)
        verdict = classify_order(ta, zero_tol=1e-10)
        assert verdict.finite and verdict.n == 2


class TestToeplitzPolynomial:
    def test_order_one_closed_form(self):
        arcs = ArcSystem([0.0], [PI])
        ns = crisp_nonlinear(arcs, 2)
        coeffs = toeplitz_polynomial(ns, 1)
        # P(z) = s_1 - s_0 z up to normalization: root at s_1/s_0 = 1
        root = -coeffs[0] / coeffs[1]
        assert root == pytest.approx(1.0, abs=1e-12)

    def test_half_circle_root_at_one(self):
        ns = crisp_nonlinear(ArcSystem([0.0], [PI]), 2)
        roots = polynomial_roots(toeplitz_polynomial(ns, 1))
        assert roots[0] == pytest.approx(1.0, abs=1e-12)

    def test_two_arc_roots(self, rng):
        arcs = random_arc_system(rng, 2)
        ns = crisp_nonlinear(arcs, 3)
        roots = polynomial_roots(toeplitz_polynomial(ns, 2))
        got = np.sort(np.mod(np.angle(roots), TWO_PI))
        got[got > TWO_PI - 1e-8] -= TWO_PI
        np.testing.assert_allclose(np.abs(roots), 1.0, atol=1e-8)
        np.testing.assert_allclose(np.sort(got), arcs.xi, atol=1e-8)

    def test_precondition_enforced(self, rng):
        f = random_trapezoid_mixture(rng)
        ns = c_to_s(fourier_coefficients(f, 6), 6)
        with pytest.raises(PreconditionError):
            toeplitz_polynomial(ns, 3)  # strictly fuzzy: not order 3


class TestUnitRootDecompose:
    def test_rank_one(self):
        alpha = np.exp(1j * PI / 3)
        s = 3.0 * alpha ** np.arange(3)
        dec = unit_root_decompose(s, 1)
        assert dec.alpha[0] == pytest.approx(alpha, abs=1e-12)
        assert dec.mu[0] == pytest.approx(3.0, abs=1e-12)

    def test_half_circle(self):
        ns = crisp_nonlinear(ArcSystem([0.0], [PI]), 2)
        dec = unit_root_decompose(ns, 1)
        assert dec.alpha[0] == pytest.approx(1.0, abs=1e-12)
        assert dec.mu[0] == pytest.approx(2.0, abs=1e-12)
        assert dec.residual < 1e-12

    def test_three_arc_recovery(self, rng):
        arcs = random_arc_system(rng, 3)
        ns = crisp_nonlinear(arcs, 4)
        dec = unit_root_decompose(ns, 3)
        np.testing.assert_allclose(np.sort(dec.angles), arcs.xi, atol=1e-6)
        assert np.all(dec.mu > 0)
        assert dec.residual < 1e-8

    def test_hermitian_window_validated(self, rng):
        arcs = random_arc_system(rng, 4)
        ns = crisp_nonlinear(arcs, 5)
        dec = unit_root_decompose(ns, 4)
        ks = np.arange(-3, 4)
        recon = (dec.alpha[None, :] ** ks[:, None]) @ dec.mu
        want = np.array([ns[int(k)] for k in ks])
        np.testing.assert_allclose(recon, want, atol=1e-8)


class TestCornerAffine:
    def test_sign_regression(self, rng):
        # F_n = A s_n + B must hold for arbitrary corner values; this locks
        # the cofactor sign A = (-1)^(n-1) D_{n-2}
        for n in range(1, 7):
            s = random_hermitian_sequence(rng, n)
            A, B = corner_affine(s, n)
            for _ in range(3):
                sn = rng.normal() + 1j * rng.normal()
                ext = np.concatenate([s[:n], [sn]])
                _, W = build_matrices(ext, n)
                Fn = np.linalg.det(W) if n > 1 else complex(ext[1])
                assert Fn == pytest.approx(A * sn + B, abs=1e-9)

    def test_order_one_values(self):
        A, B = corner_affine(np.array([1.3 + 0j]), 1)
        assert A == 1.0 and B == 0.0


class TestCaratheodoryExtend:
    def test_order_one_closed_form(self):
        s0 = 1.2
        ns = np.array([s0 + 0j])
        lam = 0.8
        sn = caratheodory_extend(ns, lam)
        assert sn == pytest.approx(s0 * np.exp(1j * lam), abs=1e-12)

    def test_extension_collapses_determinant(self, rng):
        f = random_trapezoid_mixture(rng)
        ns = c_to_s(fourier_coefficients(f, 2), 2)
        s2 = caratheodory_extend(ns.s[:2], 0.0)
        ext = np.concatenate([ns.s[:2], [s2]])
        ta = determinant_sequence(ext, 2)
        T, _ = build_matrices(ext, 2)
        assert abs(ta.D[2]) < 1e-8 * ta.tol_scale[2]
        assert abs(np.angle(ta.F[2])) < 1e-8

    @pytest.mark.parametrize("lam", [0.0, 1.0, -2.0, PI])
    def test_phase_family(self, rng, lam):
        f = random_trapezoid_mixture(rng)
        ns = c_to_s(fourier_coefficients(f, 3), 3)
        s3 = caratheodory_extend(ns.s[:3], lam)
        ext = np.concatenate([ns.s[:3], [s3]])
        ta = determinant_sequence(ext, 3)
        assert abs(ta.D[3]) < 1e-8 * ta.tol_scale[3]
        assert np.exp(1j * np.angle(ta.F[3])) == pytest.approx(
            np.exp(1j * lam), abs=1e-8)
        # D_k for k < n stay positive
        assert np.all(ta.D[:3] > 0)

    def test_own_coefficient_recovered(self, rng):
        # extending a truncated finite-order sequence at lam = arg F_n
        # returns the coefficient that was removed
        arcs = random_arc_system(rng, 3)
        ns = crisp_nonlinear(arcs, 3)
        ta = determinant_sequence(ns, 3)
        lam = float(np.angle(ta.F[3]))
        sn = caratheodory_extend(ns.s[:3], lam)
        assert sn == pytest.approx(complex(ns.s[3]), abs=1e-9)

    def test_phase_equals_entry_sum_for_crisp(self, rng):
        # F_n = D_{n-1} exp(i sum xi_r) on finite-order sequences
        for n in (1, 2, 4):
            arcs = random_arc_system(rng, n)
            ns = crisp_nonlinear(arcs, n)
            ta = determinant_sequence(ns, n)
            want = ta.D[n - 1] * np.exp(1j * np.sum(arcs.xi))
            assert complex(ta.F[n]) == pytest.approx(want, abs=1e-9)

    def test_precondition(self, rng):
        arcs = random_arc_system(rng, 2)
        ns = crisp_nonlinear(arcs, 4)  # order 2: D_2 ~ 0
        with pytest.raises(PreconditionError):
            caratheodory_extend(ns.s[:4], 0.0)  # extending to order 4


class TestRootFinders:
    def test_aberth_matches_companion(self, rng):
        for _ in range(20):
            deg = int(rng.integers(2, 7))
            coeffs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
            got = np.sort_complex(aberth_roots(coeffs))
            want = np.sort_complex(np.roots(coeffs[::-1]))
            np.testing.assert_allclose(got, want, atol=1e-8)

    def test_polynomial_roots_unit_circle(self):
        # z^4 - 1: all roots on the circle
        roots = polynomial_roots(np.array([-1.0, 0, 0, 0, 1.0]))
        np.testing.assert_allclose(np.abs(roots), 1.0, atol=1e-12)
