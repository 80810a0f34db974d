"""Periodization of rapidly decaying fuzzy subsets of the real line.

For f in a smooth rapidly-decaying family, the wrap-sum

    f0(x) = sum_k f(x + 2*pi*k)

is a smooth 2*pi-periodic function whose circle coefficients sample the
line transform:  c_k(f0) = (1/(2*pi)) * fhat(k), with the line transform
taken as fhat(k) = integral f(x) e^{+i*k*x} dx (no 2*pi in the forward
direction, 1/(2*pi) on inversion).  That identity is checked numerically by
`poisson_check`, and `defuzz_on_line` composes the wrap-sum with the circle
defuzzification so the crisp spectrum matches the integer samples of the
line spectrum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedError, ValidationError
from .membership import MembershipFunction, SampledMembership
from .reconstruct import (ReconstructionConfig, ReconstructionResult, defuzz)
from .spectra import TWO_PI, QuadratureConfig, fourier_coefficient

#: periodization values above 1 + OVERSHOOT_TOL are an error; below, clipped
OVERSHOOT_TOL = 1e-9


class SchwartzFunction:
    """A smooth, rapidly decaying fuzzy subset of the real line."""

    kind = "abstract"

    def __call__(self, x):
        raise NotImplementedError

    def line_transform(self, k):
        """fhat(k) = integral f(x) e^{ikx} dx, or None if no closed form."""
        return None

    def tail_bound(self, terms: int) -> float:
        """Upper bound for the wrap-sum truncation error with |j| <= terms."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


class GaussianLine(SchwartzFunction):
    """amplitude * exp(-x^2 / (2 sigma^2)), centered at the origin."""

    kind = "gaussian"

    def __init__(self, amplitude: float = 1.0, sigma: float = 1.0):
        if not 0.0 <= amplitude <= 1.0:
            raise ValidationError("amplitude must lie in [0, 1] (fuzzy subset)")
        if sigma <= 0.0:
            raise ValidationError("sigma must be positive")
        self.amplitude = float(amplitude)
        self.sigma = float(sigma)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.amplitude * np.exp(-x * x / (2.0 * self.sigma ** 2))

    def line_transform(self, k):
        # real and even: integral e^{ikx - x^2/(2 s^2)} dx = s sqrt(2 pi) e^{-s^2 k^2/2}
        k = np.asarray(k, dtype=float)
        return self.amplitude * self.sigma * np.sqrt(TWO_PI) \
            * np.exp(-(self.sigma * k) ** 2 / 2.0)

    def tail_bound(self, terms: int) -> float:
        # dropped translate j contributes at most f(2*pi*j) anywhere on the
        # period; 64 explicit terms dominate the two-sided tail (the rest
        # underflows for any sigma that keeps the wrap-sum fuzzy)
        j = np.arange(terms, terms + 64, dtype=float)
        return float(2.0 * self.amplitude
                     * np.sum(np.exp(-(TWO_PI * j) ** 2
                                     / (2.0 * self.sigma ** 2))))

    def to_dict(self) -> dict:
        return {"kind": "gaussian", "amplitude": self.amplitude,
                "sigma": self.sigma}


class BumpLine(SchwartzFunction):
    """Compactly supported smooth bump height * exp(1 - 1/(1 - u^2)) with
    u = 2 (x - center) / width; zero outside |u| < 1."""

    kind = "bump"

    def __init__(self, center: float = 0.0, width: float = 1.0,
                 height: float = 1.0):
        if not 0.0 < height <= 1.0:
            raise ValidationError("height must lie in (0, 1]")
        if width <= 0.0:
            raise ValidationError("width must be positive")
        self.center = float(center)
        self.width = float(width)
        self.height = float(height)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        u = 2.0 * (x - self.center) / self.width
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        out[inside] = self.height * np.exp(1.0 - 1.0 / (1.0 - ui * ui))
        return out

    def tail_bound(self, terms: int) -> float:
        # compact support: translates beyond ceil((|center| + width/2)/(2 pi))
        # contribute exactly nothing
        reach = (abs(self.center) + self.width / 2.0) / TWO_PI
        return 0.0 if terms >= reach else self.height

    def to_dict(self) -> dict:
        return {"kind": "bump", "center": self.center, "width": self.width,
                "height": self.height}


def schwartz_from_dict(data: dict) -> SchwartzFunction:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError("schwartz spec must be an object with a 'kind'")
    kind = data["kind"]
    params = {k: v for k, v in data.items() if k != "kind"}
    if kind == "gaussian":
        return GaussianLine(**params)
    if kind == "bump":
        return BumpLine(**params)
    raise ValidationError(f"unknown schwartz kind {kind!r}")


class PeriodizedMembership(MembershipFunction):
    """Analytic wrap-sum of a line function, as a circle membership.

    clip=True keeps values within [0, 1] (tiny overshoot from overlapping
    translates is clipped); clip=False exposes the raw wrap-sum, which is
    what the summation-formula check needs.
    """

    kind = "preset"

    def __init__(self, line: SchwartzFunction, terms: int, clip: bool = True):
        if terms < 1:
            raise ValidationError("terms must be >= 1")
        self.line = line
        self.terms = int(terms)
        self.clip = bool(clip)

    def periodic_values(self, t):
        t = np.asarray(t, dtype=float)
        shifts = TWO_PI * np.arange(-self.terms, self.terms + 1)
        vals = self.line(t[..., None] + shifts).sum(axis=-1)
        return np.minimum(vals, 1.0) if self.clip else vals

    def to_dict(self) -> dict:
        return {"kind": "preset", "name": f"periodized-{self.line.kind}",
                "params": {**self.line.to_dict(), "terms": self.terms}}


def _overshoot(wrapped: PeriodizedMembership, probe_points: int = 4096) -> float:
    t = np.linspace(0.0, TWO_PI, probe_points, endpoint=False)
    raw = PeriodizedMembership(wrapped.line, wrapped.terms, clip=False)
    return float(np.max(raw.periodic_values(t)) - 1.0)


def periodize(f: SchwartzFunction, terms: int,
              grid_points: int = 4096) -> SampledMembership:
    """Wrap-sum of f with |j| <= terms, sampled on a regular grid.

    Overshoot above 1 up to OVERSHOOT_TOL is clipped with a warning; larger
    overshoot (the wrap-sum is then not a fuzzy set) raises DomainError.
    The truncation bound of the dropped tail is attached as
    `truncation_bound` on the returned membership.
    """
    if terms < 1:
        raise ValidationError("terms must be >= 1")
    wrapped = PeriodizedMembership(f, terms, clip=False)
    t = np.linspace(0.0, TWO_PI, grid_points, endpoint=False)
    vals = wrapped.periodic_values(t)
    over = float(np.max(vals) - 1.0)
    if over > OVERSHOOT_TOL:
        raise DomainError(
            f"periodization exceeds 1 by {over:.3e}: not a fuzzy subset")
    if over > 0.0:
        warnings.warn(f"periodization clipped: overshoot {over:.3e}",
                      stacklevel=2)
        vals = np.minimum(vals, 1.0)
    vals = np.clip(vals, 0.0, 1.0)
    out = SampledMembership(vals, interpolation="linear")
    out.truncation_bound = f.tail_bound(terms)
    return out


@dataclass
class PoissonReport:
    """Residuals |c_k(f0) - fhat(k)/(2*pi)| for |k| <= max_k."""

    ks: np.ndarray
    residuals: np.ndarray
    truncation_bound: float

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals))


def poisson_check(f: SchwartzFunction, max_k: int, terms: int = 16,
                  q: QuadratureConfig | None = None) -> PoissonReport:
    """Compare quadrature coefficients of the (raw) periodization against the
    closed-form line transform sampled on the integers.

    Requires a family with a closed-form transform (the gaussian has one);
    raises UnsupportedError otherwise.  The raw wrap-sum is used on purpose:
    the summation identity holds for it exactly, whereas clipping to [0, 1]
    belongs to the fuzzy-set interpretation, not to the identity.
    """
    probe = f.line_transform(0)
    if probe is None:
        raise UnsupportedError(
            f"{type(f).__name__} has no closed-form line transform")
    q = q or QuadratureConfig(tolerance=1e-12)
    wrapped = PeriodizedMembership(f, terms, clip=False)
    ks = np.arange(-max_k, max_k + 1)
    residuals = np.empty(ks.size)
    for i, k in enumerate(ks):
        ck = fourier_coefficient(wrapped, int(k), q)
        residuals[i] = abs(ck - f.line_transform(k) / TWO_PI)
    return PoissonReport(ks=ks, residuals=residuals,
                         truncation_bound=f.tail_bound(terms))


def defuzz_on_line(f: SchwartzFunction, n: int, terms: int = 16,
                   cfg: ReconstructionConfig | None = None
                   ) -> ReconstructionResult:
    """Periodize, then defuzzify on the circle.

    The produced crisp spectrum is compared against the integer-sampled
    line spectrum fhat(k)/(2*pi) for k < n when the family has a closed
    form; those residuals land in diagnostics.extras["line_residuals"].
    """
    wrapped = PeriodizedMembership(f, terms, clip=False)
    over = _overshoot(wrapped)
    if over > OVERSHOOT_TOL:
        raise DomainError(
            f"periodization exceeds 1 by {over:.3e}: not a fuzzy subset")
    fuzzy = PeriodizedMembership(f, terms, clip=True)
    if cfg is None:
        cfg = ReconstructionConfig(quadrature=QuadratureConfig(tolerance=1e-12))
    result = defuzz(fuzzy, n, 0.0, cfg)
    if f.line_transform(0) is not None:
        from .crisp import crisp_spectrum
        produced = crisp_spectrum(result.arcs, n - 1).coeffs
        sampled = np.array([f.line_transform(k) / TWO_PI for k in range(n)])
        result.diagnostics.extras["line_residuals"] = \
            np.abs(produced - sampled).tolist()
    return result
