"""Fourier analysis of fuzzy subsets of the unit circle.

Convention used throughout the package: the k-th Fourier coefficient of a
summable function f on [0, 2*pi) is

    c_k(f) = (1/(2*pi)) * integral_0^{2pi} f(t) * exp(+i*k*t) dt

i.e. the kernel carries a *plus* sign, and the 1/(2*pi) normalization makes
c_0 the mean value of f.  For real-valued f the sequence is hermitian,
c_{-k} = conj(c_k), so only the k >= 0 window is stored.  Comparisons with
numpy.fft output therefore need a conjugation.

For a fuzzy subset (values in [0, 1]) the coefficients obey

    0 <= c_0 <= 1,      |c_k| <= sqrt(2)/pi   (k != 0)

and both bounds are sharp.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError, ValidationError

TWO_PI = 2.0 * np.pi
COEFFICIENT_BOUND = np.sqrt(2.0) / np.pi
#: convention string recorded in spectrum files
KERNEL_CONVENTION = "c_k = (1/(2*pi)) * integral f(t) exp(+i*k*t) dt"

EXACT_TOL = 1e-10       # default tolerance for closed-form coefficient paths
QUADRATURE_TOL = 1e-8   # default tolerance for quadrature coefficient paths


class HermitianSpectrum:
    """A finite window c_0 .. c_max_k of a hermitian coefficient sequence.

    Negative indices are implied by conjugation.  c_0 must be real up to
    `imag_tol`; its imaginary part is dropped after validation.
    """

    def __init__(self, coeffs, imag_tol: float = 1e-9):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValidationError("spectrum window must be a non-empty 1-d array")
        if abs(coeffs[0].imag) > imag_tol:
            raise ValidationError(
                f"c_0 must be real; got imaginary part {coeffs[0].imag:.3e}")
        coeffs = coeffs.copy()
        coeffs[0] = coeffs[0].real
        self.coeffs = coeffs

    @property
    def max_k(self) -> int:
        return self.coeffs.size - 1

    @property
    def c0(self) -> float:
        return float(self.coeffs[0].real)

    def __getitem__(self, k: int) -> complex:
        """c_k for any integer |k| <= max_k, using hermitian symmetry."""
        if abs(k) > self.max_k:
            raise IndexError(f"coefficient index {k} outside window 0..{self.max_k}")
        return complex(self.coeffs[k]) if k >= 0 else complex(np.conj(self.coeffs[-k]))

    def __len__(self) -> int:
        return self.coeffs.size

    def window(self, max_k: int) -> "HermitianSpectrum":
        """Truncated copy keeping c_0 .. c_max_k."""
        if max_k > self.max_k:
            raise ValidationError(f"window {max_k} exceeds stored max_k {self.max_k}")
        return HermitianSpectrum(self.coeffs[: max_k + 1])

    def __repr__(self) -> str:
        return f"HermitianSpectrum(max_k={self.max_k}, c0={self.c0:.6g})"


@dataclass
class QuadratureConfig:
    """Controls for the coefficient integrator.

    rule
        "auto": closed form when the input provides one, Simpson otherwise;
        "exact": require the closed-form path;
        "simpson": force composite Simpson with panel doubling.
    panels
        initial panel count (even, >= 8).
    tolerance
        stop doubling once successive estimates differ by less than this.
    max_panels
        panel budget; exceeding it raises NumericError.
    """

    rule: str = "auto"
    panels: int = 64
    tolerance: float = QUADRATURE_TOL
    max_panels: int = 1 << 18

    def __post_init__(self):
        if self.rule not in ("auto", "exact", "simpson"):
            raise ValidationError(f"unknown quadrature rule {self.rule!r}")
        if self.panels < 8 or self.panels % 2:
            raise ValidationError("panels must be even and >= 8")
        if self.tolerance <= 0:
            raise ValidationError("tolerance must be positive")
        if self.max_panels < 2 * self.panels:
            raise ValidationError("max_panels must allow at least one doubling")


def _simpson_periodic(fn, panels: int) -> complex:
    """Composite Simpson of fn over one period [0, 2*pi]."""
    t = np.linspace(0.0, TWO_PI, panels + 1)
    w = np.ones(panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return (TWO_PI / panels / 3.0) * np.sum(w * fn(t))


def integrate_periodic(fn, cfg: QuadratureConfig | None = None) -> complex:
    """Panel-doubling composite Simpson of a 2*pi-periodic callable.

    Raises NumericError (carrying the last residual estimate) if the
    panel budget is exhausted before two successive estimates agree to
    cfg.tolerance.
    """
    cfg = cfg or QuadratureConfig()
    panels = cfg.panels
    prev = _simpson_periodic(fn, panels)
    diff = np.inf
    while panels <= cfg.max_panels:
        panels *= 2
        cur = _simpson_periodic(fn, panels)
        diff = abs(cur - prev)
        if diff < cfg.tolerance:
            return cur
        prev = cur
    raise NumericError(
        f"quadrature did not converge within {cfg.max_panels} panels",
        residual=diff)


def fourier_coefficient(f, k: int, cfg: QuadratureConfig | None = None) -> complex:
    """Single coefficient c_k for any integer k (negative k allowed)."""
    cfg = cfg or QuadratureConfig()
    exact = None
    if cfg.rule in ("auto", "exact"):
        exact = f.exact_coefficients(abs(k))
    if exact is not None:
        ck = exact[abs(k)]
        return complex(ck) if k >= 0 else complex(np.conj(ck))
    if cfg.rule == "exact":
        raise ValidationError(
            f"{type(f).__name__} has no closed-form coefficients; "
            "use rule='auto' or 'simpson'")
    kernel = lambda t: f.periodic_values(t) * np.exp(1j * k * t)
    return integrate_periodic(kernel, cfg) / TWO_PI


def fourier_coefficients(f, max_k: int,
                         cfg: QuadratureConfig | None = None) -> HermitianSpectrum:
    """Coefficient window c_0 .. c_max_k of a membership function.

    Inputs with a piecewise or otherwise closed-form structure (arc systems,
    piecewise-linear and sampled functions, the analytic presets) are
    integrated exactly; everything else goes through panel-doubled Simpson.
    """
    if max_k < 0:
        raise ValidationError("max_k must be >= 0")
    cfg = cfg or QuadratureConfig()
    if cfg.rule in ("auto", "exact"):
        exact = f.exact_coefficients(max_k)
        if exact is not None:
            return HermitianSpectrum(exact)
        if cfg.rule == "exact":
            raise ValidationError(
                f"{type(f).__name__} has no closed-form coefficients; "
                "use rule='auto' or 'simpson'")
    coeffs = np.array([fourier_coefficient(f, k, cfg) for k in range(max_k + 1)])
    return HermitianSpectrum(coeffs, imag_tol=max(10 * cfg.tolerance, 1e-9))


@dataclass
class BoundCheck:
    """Verdict for one coefficient index against the fuzzy-spectrum bounds."""

    k: int
    magnitude: float
    bound: float
    margin: float
    ok: bool


@dataclass
class BoundsReport:
    """validate_fuzzy_spectrum output: one entry per stored index."""

    entries: list[BoundCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list[BoundCheck]:
        return [e for e in self.entries if not e.ok]


def validate_fuzzy_spectrum(spec: HermitianSpectrum, tol: float = 0.0) -> BoundsReport:
    """Check the necessary bounds for a fuzzy spectrum.

    Index 0 must satisfy 0 <= c_0 <= 1 and every k >= 1 must satisfy
    |c_k| <= sqrt(2)/pi, each within `tol`.  Report-style: never raises.
    """
    report = BoundsReport()
    c0 = spec.c0
    margin0 = min(c0, 1.0 - c0)
    report.entries.append(BoundCheck(
        k=0, magnitude=c0, bound=1.0, margin=margin0, ok=margin0 >= -tol))
    for k in range(1, spec.max_k + 1):
        mag = abs(spec[k])
        margin = COEFFICIENT_BOUND - mag
        report.entries.append(BoundCheck(
            k=k, magnitude=mag, bound=COEFFICIENT_BOUND,
            margin=margin, ok=margin >= -tol))
    return report


def squared_mean(f, cfg: QuadratureConfig | None = None) -> float:
    """(1/(2*pi)) * integral f(t)^2 dt, exact when the input allows it."""
    exact = f.exact_squared_mean()
    if exact is not None and (cfg is None or cfg.rule != "simpson"):
        return float(exact)
    cfg = cfg or QuadratureConfig()
    val = integrate_periodic(lambda t: f.periodic_values(t) ** 2, cfg) / TWO_PI
    return float(np.real(val))


def parseval_residual(f, max_k: int, cfg: QuadratureConfig | None = None) -> float:
    """Energy not captured by the window: ||f||_2^2 - sum_{|k|<=max_k} |c_k|^2.

    Non-negative up to quadrature error and non-increasing in max_k.
    """
    if max_k < 0:
        raise DomainError("max_k must be >= 0")
    spec = fourier_coefficients(f, max_k, cfg)
    tail = spec.c0 ** 2 + 2.0 * float(np.sum(np.abs(spec.coeffs[1:]) ** 2))
    return squared_mean(f, cfg) - tail
