"""Membership-function families: evaluation, validation, serialization."""

import numpy as np
import pytest

from fuzzspec import (ArcMembership, ArcSystem, DomainError,
                      MixtureMembership, PiecewiseLinearMembership,
                      RaisedCosineMembership, SampledMembership,
                      SignCosPlusMembership, TrapezoidMembership,
                      ValidationError, membership_from_dict,
                      random_trapezoid_mixture)

PI = np.pi


class TestEvaluate:
    def test_zero_function(self):
        f = PiecewiseLinearMembership([(0.0, 0.0)])
        assert f.evaluate(1.0) == 0.0

    def test_indicator_half_circle(self):
        f = ArcMembership(ArcSystem([0.0], [PI]))
        assert f.evaluate(PI / 2) == 1.0
        assert f.evaluate(3 * PI / 2) == 0.0

    def test_piecewise_linear_midpoint(self):
        f = PiecewiseLinearMembership([(0.0, 0.0), (PI, 1.0)])
        assert f.evaluate(PI / 2) == pytest.approx(0.5)

    def test_piecewise_wrap_segment(self):
        # between the last node and the first node + 2*pi the value
        # interpolates back to the first node's value
        f = PiecewiseLinearMembership([(0.0, 0.0), (PI, 1.0)])
        assert f.evaluate(3 * PI / 2) == pytest.approx(0.5)

    def test_out_of_range_angle(self):
        f = PiecewiseLinearMembership([(0.0, 0.5)])
        with pytest.raises(DomainError):
            f.evaluate(-0.1)
        with pytest.raises(DomainError):
            f.evaluate(2 * PI)

    def test_vectorized(self):
        f = ArcMembership(ArcSystem([0.0], [PI]))
        t = np.array([0.1, PI / 2, 4.0])
        np.testing.assert_allclose(f.evaluate(t), [1.0, 1.0, 0.0])


class TestValidation:
    def test_nodes_must_increase(self):
        with pytest.raises(ValidationError):
            PiecewiseLinearMembership([(1.0, 0.2), (0.5, 0.3)])

    def test_values_within_unit_interval(self):
        with pytest.raises(ValidationError):
            PiecewiseLinearMembership([(0.0, 1.2)])
        with pytest.raises(ValidationError):
            SampledMembership([0.5, -0.01])

    def test_empty_inputs_rejected(self):
        with pytest.raises(ValidationError):
            PiecewiseLinearMembership([])
        with pytest.raises(ValidationError):
            SampledMembership([])

    def test_mixture_weights(self):
        f = PiecewiseLinearMembership([(0.0, 0.5)])
        with pytest.raises(ValidationError):
            MixtureMembership([f, f], [0.7, 0.7])


class TestSampled:
    def test_linear_interpolation(self):
        n = 8
        vals = np.linspace(0.0, 0.7, n)
        f = SampledMembership(vals)
        grid = 2 * PI * np.arange(n) / n
        np.testing.assert_allclose(f.evaluate(grid), vals)
        mid = (grid[0] + grid[1]) / 2
        assert f.evaluate(mid) == pytest.approx((vals[0] + vals[1]) / 2)

    def test_nearest_interpolation(self):
        f = SampledMembership([0.0, 1.0, 0.0, 1.0], interpolation="nearest")
        assert f.evaluate(0.01) == 0.0
        assert f.evaluate(PI / 2 + 0.01) == 1.0


class TestPresets:
    def test_sign_cos_plus_values(self):
        f = SignCosPlusMembership(3)
        t = np.linspace(0, 2 * PI, 500, endpoint=False)
        np.testing.assert_array_equal(f.evaluate(t),
                                      (np.cos(3 * t) > 0).astype(float))

    def test_trapezoid_shape(self):
        f = TrapezoidMembership(1.0, 2.0, 3.0, 4.0, height=0.8)
        assert f.evaluate(0.5) == 0.0
        assert f.evaluate(1.5) == pytest.approx(0.4)
        assert f.evaluate(2.5) == pytest.approx(0.8)
        assert f.evaluate(5.0) == 0.0

    def test_trapezoid_corner_validation(self):
        with pytest.raises(ValidationError):
            TrapezoidMembership(2.0, 1.0, 3.0, 4.0)

    def test_raised_cosine(self):
        f = RaisedCosineMembership()
        assert f.evaluate(0.0) == pytest.approx(1.0)
        assert f.evaluate(PI) == pytest.approx(0.0)


class TestMixtureAndGenerator:
    def test_mixture_values(self):
        a = PiecewiseLinearMembership([(0.0, 1.0)])
        b = PiecewiseLinearMembership([(0.0, 0.0)])
        mix = MixtureMembership([a, b], [0.25, 0.75])
        assert mix.evaluate(1.0) == pytest.approx(0.25)

    def test_random_mixture_stays_fuzzy(self, rng):
        t = np.linspace(0, 2 * PI, 257, endpoint=False)
        for _ in range(50):
            f = random_trapezoid_mixture(rng)
            vals = f.evaluate(t)
            assert np.all(vals >= 0.0) and np.all(vals <= 1.0)

    def test_random_mixture_is_piecewise_linear(self, rng):
        f = random_trapezoid_mixture(rng)
        assert isinstance(f, PiecewiseLinearMembership)


class TestSerialization:
    @pytest.mark.parametrize("f", [
        PiecewiseLinearMembership([(0.0, 0.1), (2.0, 0.9), (4.0, 0.3)]),
        SampledMembership([0.1, 0.4, 0.9, 0.2]),
        SampledMembership([0.1, 0.4], interpolation="nearest"),
        ArcMembership(ArcSystem([0.0, 3.0], [1.0, 4.0])),
        SignCosPlusMembership(4),
        RaisedCosineMembership(center=1.5),
        TrapezoidMembership(0.5, 1.0, 2.0, 3.0, height=0.6),
    ])
    def test_dict_round_trip(self, f):
        g = membership_from_dict(f.to_dict())
        t = np.linspace(0, 2 * PI, 101, endpoint=False)
        np.testing.assert_allclose(g.evaluate(t), f.evaluate(t), atol=1e-15)

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            membership_from_dict({"kind": "nope"})

    def test_missing_field(self):
        with pytest.raises(ValidationError):
            membership_from_dict({"kind": "piecewise_linear"})
