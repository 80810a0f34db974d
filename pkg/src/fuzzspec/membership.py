"""Membership functions: fuzzy subsets of the unit circle.

A membership function maps [0, 2*pi) into [0, 1].  Piecewise-linear,
sampled, arc-indicator and analytic preset families are supported; each
family knows whether its Fourier coefficients have a closed form (in which
case the spectra module uses it instead of quadrature).
"""

from __future__ import annotations

import numpy as np

from .crisp import ArcSystem, indicator_coefficients
from .errors import DomainError, ValidationError
from .spectra import TWO_PI


def _check_angles(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(t >= TWO_PI):
        bad = t[(t < 0.0) | (t >= TWO_PI)]
        raise DomainError(f"angle outside [0, 2*pi): {np.atleast_1d(bad)[0]!r}")
    return t


class MembershipFunction:
    """Common interface for all membership families."""

    kind = "abstract"

    def evaluate(self, t):
        """Membership value(s) at angle(s) t in [0, 2*pi)."""
        t = _check_angles(t)
        return self.periodic_values(t)

    def periodic_values(self, t):
        """Values at arbitrary angles, wrapped 2*pi-periodically."""
        raise NotImplementedError

    def exact_coefficients(self, max_k: int):
        """Closed-form c_0 .. c_max_k, or None when unavailable."""
        return None

    def exact_squared_mean(self):
        """Closed-form (1/(2*pi)) integral f^2, or None when unavailable."""
        return None

    def to_dict(self) -> dict:
        raise NotImplementedError


class PiecewiseLinearMembership(MembershipFunction):
    """Piecewise-linear interpolation through nodes (t_i, v_i), wrapping
    periodically from the last node back to the first.

    A single node gives the constant function.
    """

    kind = "piecewise_linear"

    def __init__(self, nodes):
        nodes = [(float(t), float(v)) for t, v in nodes]
        if not nodes:
            raise ValidationError("node list must be non-empty")
        t = np.array([p[0] for p in nodes])
        v = np.array([p[1] for p in nodes])
        if np.any(t < 0.0) or np.any(t >= TWO_PI):
            raise ValidationError("node abscissas must lie in [0, 2*pi)")
        if np.any(np.diff(t) <= 0.0):
            raise ValidationError("node abscissas must be strictly increasing")
        if np.any(v < 0.0) or np.any(v > 1.0):
            raise ValidationError("membership values must lie in [0, 1]")
        self.nodes = nodes
        # closed polyline over one period: append the wrap node
        self._t = np.concatenate([t, [t[0] + TWO_PI]])
        self._v = np.concatenate([v, [v[0]]])

    def periodic_values(self, t):
        t = np.asarray(t, dtype=float)
        tw = np.mod(t - self._t[0], TWO_PI) + self._t[0]
        return np.interp(tw, self._t, self._v)

    def exact_coefficients(self, max_k: int):
        t, v = self._t, self._v
        coeffs = np.zeros(max_k + 1, dtype=complex)
        dt = np.diff(t)
        coeffs[0] = np.sum(0.5 * (v[:-1] + v[1:]) * dt) / TWO_PI
        slope = np.where(dt > 0, np.diff(v) / np.where(dt > 0, dt, 1.0), 0.0)
        for k in range(1, max_k + 1):
            # per segment: integral (v0 + b*(t-t0)) e^{ikt} dt
            #            = [e^{ikt} (value/(ik) + b/k^2)] at the endpoints
            upper = np.exp(1j * k * t[1:]) * (v[1:] / (1j * k) + slope / k ** 2)
            lower = np.exp(1j * k * t[:-1]) * (v[:-1] / (1j * k) + slope / k ** 2)
            coeffs[k] = np.sum(upper - lower) / TWO_PI
        return coeffs

    def exact_squared_mean(self):
        t, v = self._t, self._v
        dt = np.diff(t)
        b = np.where(dt > 0, np.diff(v) / np.where(dt > 0, dt, 1.0), 0.0)
        # integral (v0 + b tau)^2 dtau over [0, dt]
        seg = v[:-1] ** 2 * dt + v[:-1] * b * dt ** 2 + b ** 2 * dt ** 3 / 3.0
        return float(np.sum(seg) / TWO_PI)

    def to_dict(self) -> dict:
        return {"kind": "piecewise_linear",
                "nodes": [[t, v] for t, v in self.nodes]}


class SampledMembership(MembershipFunction):
    """Values on the regular grid t_j = 2*pi*j/N, interpolated linearly or
    by nearest node."""

    kind = "samples"

    def __init__(self, values, interpolation: str = "linear"):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValidationError("sample array must be non-empty")
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ValidationError("membership values must lie in [0, 1]")
        if interpolation not in ("linear", "nearest"):
            raise ValidationError(f"unknown interpolation {interpolation!r}")
        self.values = values
        self.interpolation = interpolation
        self._grid = TWO_PI * np.arange(values.size) / values.size

    def periodic_values(self, t):
        t = np.mod(np.asarray(t, dtype=float), TWO_PI)
        n = self.values.size
        if self.interpolation == "nearest":
            idx = np.mod(np.rint(t / (TWO_PI / n)).astype(int), n)
            return self.values[idx]
        tt = np.concatenate([self._grid, [TWO_PI]])
        vv = np.concatenate([self.values, [self.values[0]]])
        return np.interp(t, tt, vv)

    def _as_piecewise(self) -> PiecewiseLinearMembership:
        return PiecewiseLinearMembership(list(zip(self._grid, self.values)))

    def exact_coefficients(self, max_k: int):
        if self.interpolation == "linear":
            return self._as_piecewise().exact_coefficients(max_k)
        # nearest: piecewise constant on cells centered at the grid nodes
        n = self.values.size
        h = TWO_PI / n
        edges = self._grid - h / 2.0
        coeffs = np.zeros(max_k + 1, dtype=complex)
        coeffs[0] = float(np.mean(self.values))
        for k in range(1, max_k + 1):
            cell = np.exp(1j * k * (edges + h)) - np.exp(1j * k * edges)
            coeffs[k] = np.sum(self.values * cell) / (TWO_PI * 1j * k)
        return coeffs

    def exact_squared_mean(self):
        if self.interpolation == "linear":
            return self._as_piecewise().exact_squared_mean()
        return float(np.mean(self.values ** 2))

    def to_dict(self) -> dict:
        d = {"kind": "samples", "values": self.values.tolist()}
        if self.interpolation != "linear":
            d["interpolation"] = self.interpolation
        return d


class ArcMembership(MembershipFunction):
    """Indicator of an arc system (a crisp subset of finite order)."""

    kind = "arcs"

    def __init__(self, arcs):
        if not isinstance(arcs, ArcSystem):
            arcs = ArcSystem([a for a, _ in arcs], [b for _, b in arcs])
        self.arcs = arcs

    def periodic_values(self, t):
        return self.arcs.indicator(t)

    def exact_coefficients(self, max_k: int):
        from .crisp import crisp_spectrum
        return crisp_spectrum(self.arcs, max_k).coeffs

    def exact_squared_mean(self):
        return self.arcs.mean_value

    def to_dict(self) -> dict:
        return {"kind": "arcs",
                "arcs": [[a, b] for a, b in zip(self.arcs.xi, self.arcs.eta)]}


class SignCosPlusMembership(MembershipFunction):
    """Indicator of {t : cos(k*t) > 0}: the sharpness witness for the
    coefficient bound (its k-th cosine coefficient equals 2/pi)."""

    kind = "preset"
    name = "sign-cos-plus"

    def __init__(self, k: int):
        k = int(k)
        if k < 1:
            raise ValidationError("frequency k must be >= 1")
        self.k = k

    def periodic_values(self, t):
        t = np.asarray(t, dtype=float)
        return (np.cos(self.k * t) > 0.0).astype(float)

    def exact_coefficients(self, max_k: int):
        # union of k arcs ((-pi/2 + 2*pi*m)/k, (pi/2 + 2*pi*m)/k); the first
        # wraps through 0, which the endpoint formula handles as-is.
        m = np.arange(self.k)
        xi = (-np.pi / 2 + TWO_PI * m) / self.k
        eta = (np.pi / 2 + TWO_PI * m) / self.k
        return indicator_coefficients(xi, eta, max_k)

    def exact_squared_mean(self):
        return 0.5

    def to_dict(self) -> dict:
        return {"kind": "preset", "name": self.name, "params": {"k": self.k}}


class RaisedCosineMembership(MembershipFunction):
    """Smooth bump (1 + cos(t - center)) / 2."""

    kind = "preset"
    name = "raised-cosine"

    def __init__(self, center: float = 0.0):
        self.center = float(center)

    def periodic_values(self, t):
        t = np.asarray(t, dtype=float)
        return 0.5 * (1.0 + np.cos(t - self.center))

    def exact_coefficients(self, max_k: int):
        coeffs = np.zeros(max_k + 1, dtype=complex)
        coeffs[0] = 0.5
        if max_k >= 1:
            coeffs[1] = 0.25 * np.exp(1j * self.center)
        return coeffs

    def exact_squared_mean(self):
        return 0.375

    def to_dict(self) -> dict:
        return {"kind": "preset", "name": self.name,
                "params": {"center": self.center}}


class TrapezoidMembership(PiecewiseLinearMembership):
    """Trapezoid with corners a < b < c < d in [0, 2*pi) and plateau height h,
    zero outside [a, d]."""

    kind = "preset"
    name = "trapezoid"

    def __init__(self, a: float, b: float, c: float, d: float,
                 height: float = 1.0):
        if not (0.0 <= a < b < c < d < TWO_PI):
            raise ValidationError("corners must satisfy 0 <= a < b < c < d < 2*pi")
        if not 0.0 < height <= 1.0:
            raise ValidationError("height must lie in (0, 1]")
        self.corners = (float(a), float(b), float(c), float(d))
        self.height = float(height)
        super().__init__([(a, 0.0), (b, height), (c, height), (d, 0.0)])

    def to_dict(self) -> dict:
        a, b, c, d = self.corners
        return {"kind": "preset", "name": self.name,
                "params": {"a": a, "b": b, "c": c, "d": d,
                           "height": self.height}}


class MixtureMembership(MembershipFunction):
    """Convex combination of membership functions (stays within [0, 1])."""

    kind = "mixture"

    def __init__(self, components, weights):
        weights = np.asarray(weights, dtype=float)
        if len(components) != weights.size or weights.size == 0:
            raise ValidationError("need one weight per component")
        if np.any(weights < 0.0) or abs(weights.sum() - 1.0) > 1e-12:
            raise ValidationError("weights must be non-negative and sum to 1")
        self.components = list(components)
        self.weights = weights

    def periodic_values(self, t):
        t = np.asarray(t, dtype=float)
        return sum(w * comp.periodic_values(t)
                   for w, comp in zip(self.weights, self.components))

    def exact_coefficients(self, max_k: int):
        parts = [comp.exact_coefficients(max_k) for comp in self.components]
        if any(p is None for p in parts):
            return None
        return sum(w * p for w, p in zip(self.weights, parts))

    def to_dict(self) -> dict:
        return {"kind": "mixture",
                "weights": self.weights.tolist(),
                "components": [c.to_dict() for c in self.components]}


def merge_piecewise_linear(components, weights) -> PiecewiseLinearMembership:
    """Collapse a convex combination of piecewise-linear functions into a
    single piecewise-linear function on the union of the breakpoints."""
    weights = np.asarray(weights, dtype=float)
    breakpoints = np.unique(np.concatenate(
        [[t for t, _ in comp.nodes] for comp in components]))
    values = sum(w * comp.periodic_values(breakpoints)
                 for w, comp in zip(weights, components))
    values = np.clip(values, 0.0, 1.0)  # guard roundoff at the boundary
    return PiecewiseLinearMembership(list(zip(breakpoints, values)))


def random_trapezoid_mixture(rng: np.random.Generator,
                             max_components: int = 4,
                             min_gap: float = 0.05) -> PiecewiseLinearMembership:
    """Random fuzzy membership: a convex mixture of 1-4 trapezoids with
    uniformly sampled corners (pairwise gaps >= min_gap) and heights in
    (0.2, 1].  Collapsed to a single exact piecewise-linear function."""
    n_comp = int(rng.integers(1, max_components + 1))
    weights = rng.dirichlet(np.ones(n_comp))
    comps = []
    for _ in range(n_comp):
        while True:
            pts = np.sort(rng.uniform(0.0, TWO_PI, 4))
            if np.min(np.diff(pts)) > min_gap:
                break
        comps.append(TrapezoidMembership(*pts, height=rng.uniform(0.2, 1.0)))
    return merge_piecewise_linear(comps, weights)


_PRESETS = {
    "sign-cos-plus": SignCosPlusMembership,
    "raised-cosine": RaisedCosineMembership,
    "trapezoid": TrapezoidMembership,
}


def preset_membership(name: str, params: dict) -> MembershipFunction:
    if name not in _PRESETS:
        raise ValidationError(f"unknown preset {name!r}; "
                              f"available: {sorted(_PRESETS)}")
    return _PRESETS[name](**params)


def membership_from_dict(data: dict) -> MembershipFunction:
    """Build a membership function from its file representation."""
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError("membership spec must be an object with a 'kind'")
    kind = data["kind"]
    try:
        if kind == "piecewise_linear":
            return PiecewiseLinearMembership(data["nodes"])
        if kind == "samples":
            return SampledMembership(data["values"],
                                     data.get("interpolation", "linear"))
        if kind == "arcs":
            return ArcMembership(data["arcs"])
        if kind == "preset":
            return preset_membership(data["name"], data.get("params", {}))
        if kind == "mixture":
            comps = [membership_from_dict(c) for c in data["components"]]
            return MixtureMembership(comps, data["weights"])
    except KeyError as exc:
        raise ValidationError(f"membership spec missing field {exc}") from exc
    raise ValidationError(f"unknown membership kind {kind!r}")
