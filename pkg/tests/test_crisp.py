"""Arc systems: closed-form spectra, sign polynomial, rational expansion."""

import numpy as np
import pytest

from conftest import oracle_spectrum

from fuzzspec import (ArcSystem, ValidationError, crisp_spectrum,
                      random_arc_system, rational_expansion, sign_polynomial)

PI = np.pi
TWO_PI = 2 * np.pi


class TestArcSystem:
    def test_interleaving_enforced(self):
        with pytest.raises(ValidationError):
            ArcSystem([0.0, 1.0], [2.0, 3.0])  # eta_1 > xi_2

    def test_degenerate_arc_rejected(self):
        with pytest.raises(ValidationError):
            ArcSystem([0.0], [1e-12])

    def test_endpoint_range(self):
        with pytest.raises(ValidationError):
            ArcSystem([-0.1], [1.0])
        with pytest.raises(ValidationError):
            ArcSystem([0.0], [TWO_PI])

    def test_empty_system(self):
        empty = ArcSystem([], [])
        assert empty.is_empty and empty.measure == 0.0
        np.testing.assert_array_equal(empty.indicator([0.0, 1.0]), [0.0, 0.0])

    def test_canonicalized_rotation(self):
        arcs = ArcSystem([1.0, 4.0], [2.0, 5.0])
        canon, rotation = arcs.canonicalized()
        assert rotation == pytest.approx(1.0)
        assert canon.is_canonical
        np.testing.assert_allclose(canon.xi, [0.0, 3.0])
        np.testing.assert_allclose(canon.eta, [1.0, 4.0])

    def test_indicator_closed_endpoints(self):
        arcs = ArcSystem([0.0], [PI])
        assert arcs.indicator(0.0) == 1.0
        assert arcs.indicator(PI) == 1.0


class TestCrispSpectrum:
    def test_half_circle_values(self):
        spec = crisp_spectrum(ArcSystem([0.0], [PI]), 3)
        assert spec.c0 == pytest.approx(0.5, abs=1e-15)
        assert spec[1] == pytest.approx(1j / PI, abs=1e-15)
        assert spec[2] == pytest.approx(0.0, abs=1e-15)
        assert spec[3] == pytest.approx(1j / (3 * PI), abs=1e-15)

    def test_near_full_mean(self):
        for eps in (1e-3, 1e-6):
            spec = crisp_spectrum(ArcSystem([0.0], [TWO_PI - eps]), 0)
            assert spec.c0 == pytest.approx(1.0 - eps / TWO_PI, abs=1e-15)

    def test_two_arc_symmetry(self):
        # [0, pi/2] u [pi, 3pi/2] is invariant under t -> t + pi, so odd
        # coefficients vanish; values frozen from the quadrature oracle
        arcs = ArcSystem([0.0, PI], [PI / 2, 3 * PI / 2])
        spec = crisp_spectrum(arcs, 2)
        assert spec.c0 == pytest.approx(0.5, abs=1e-15)
        assert spec[1] == pytest.approx(0.0, abs=1e-15)
        assert spec[2] == pytest.approx(1j / PI, abs=1e-15)
        want = oracle_spectrum(arcs.indicator, 2,
                               list(arcs.xi) + list(arcs.eta))
        np.testing.assert_allclose(spec.coeffs, want, atol=1e-10)

    def test_matches_quadrature_oracle(self, rng):
        for n in range(1, 7):
            arcs = random_arc_system(rng, n)
            got = crisp_spectrum(arcs, 32).coeffs
            want = oracle_spectrum(arcs.indicator, 32,
                                   list(arcs.xi) + list(arcs.eta))
            np.testing.assert_allclose(got, want, atol=1e-10)


class TestSignPolynomial:
    def test_half_circle_signs(self):
        p = sign_polynomial(ArcSystem([0.0], [PI]))
        assert p.evaluate(PI / 2) > 0
        assert p.evaluate(3 * PI / 2) < 0
        assert abs(p.evaluate(0.0)) < 1e-12
        assert abs(p.evaluate(PI)) < 1e-12

    def test_sign_pattern_matches_indicator(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 5))
            arcs = random_arc_system(rng, n)
            p = sign_polynomial(arcs)
            t = rng.uniform(0.0, TWO_PI, 1000)
            # stay away from the zeros, where the sign flips
            endpoints = np.concatenate([arcs.xi, arcs.eta])
            dist = np.min(np.abs(
                np.angle(np.exp(1j * (t[:, None] - endpoints[None, :])))),
                axis=1)
            keep = dist > 1e-3
            want = 2.0 * arcs.indicator(t[keep]) - 1.0
            assert np.all(np.sign(p.evaluate(t[keep])) == want)

    def test_leading_coefficient_normalization(self, rng):
        # |P_n| = 1; the phase carries the extra sign flip that the
        # inside-positive sign pattern forces on the endpoint product
        for n in (1, 2, 4):
            arcs = random_arc_system(rng, n)
            p = sign_polynomial(arcs)
            assert abs(p.leading) == pytest.approx(1.0, abs=1e-12)
            lam = np.sum(arcs.xi)
            c0 = arcs.mean_value
            want = (-1.0) ** (n + 1) * np.exp(-1j * (PI * c0 + lam))
            assert p.leading == pytest.approx(want, abs=1e-12)

    def test_hermitian_coefficients(self, rng):
        arcs = random_arc_system(rng, 3)
        p = sign_polynomial(arcs)
        for k in range(1, 4):
            assert p.coefficient(-k) == pytest.approx(
                np.conj(p.coefficient(k)), abs=1e-12)

    def test_real_valued(self, rng):
        arcs = random_arc_system(rng, 2)
        p = sign_polynomial(arcs)
        t = rng.uniform(0, TWO_PI, 64)
        ks = np.arange(-p.n, p.n + 1)
        complex_eval = np.tensordot(p.coeffs,
                                    np.exp(1j * np.outer(ks, t)), axes=(0, 0))
        assert np.max(np.abs(complex_eval.imag)) < 1e-10

    def test_collision_rejected(self):
        arcs = ArcSystem([0.0, 1.0 + 1e-12], [1.0, 2.0])
        with pytest.raises(ValidationError):
            sign_polynomial(arcs)


class TestRationalExpansion:
    def test_half_circle_series(self):
        got = rational_expansion(ArcSystem([0.0], [PI]), 6)
        want = np.array([1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0], dtype=complex)
        np.testing.assert_allclose(got, want, atol=1e-12)

    def test_empty_system_identity(self):
        got = rational_expansion(ArcSystem([], []), 4)
        np.testing.assert_allclose(got, [1, 0, 0, 0, 0], atol=0)

    def test_leading_term_exactly_one(self, rng):
        arcs = random_arc_system(rng, 3)
        assert rational_expansion(arcs, 8)[0] == 1.0 + 0j

    def test_matches_direct_series_division(self, rng):
        # independent route: evaluate the rational function on a small
        # circle and invert by FFT
        arcs = random_arc_system(rng, 3)
        K = 12
        m = 1 << 10
        radius = 0.35
        z = radius * np.exp(2j * PI * np.arange(m) / m)
        vals = np.ones(m, dtype=complex)
        for e in arcs.eta:
            vals *= 1.0 - z * np.exp(1j * e)
        for x in arcs.xi:
            vals /= 1.0 - z * np.exp(1j * x)
        want = (np.fft.fft(vals) / m)[: K + 1] / radius ** np.arange(K + 1)
        got = rational_expansion(arcs, K)
        np.testing.assert_allclose(got, want, atol=1e-10)
