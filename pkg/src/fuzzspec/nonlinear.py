"""The nonlinear coefficient transform.

A real-valued summable circle function f with coefficient window c_k maps,
through its Hardy function h(f)(z) = sum_{k>=0} c_k z^k, to the
disk-holomorphic exponential

    E(z) = exp(-2*pi*i * h(f)(z)).

The nonlinear coefficients s_k are the rescaled Taylor coefficients of E,
normalized so that

    E(z) = 1 - i * exp(-i*pi*c_0) * sum_{k>=0} s_k z^k,
    s_0  = 2 * sin(pi * c_0),
    s_k  = i * exp(+i*pi*c_0) * E_k          (k >= 1),

which fixes the constant term identity E(0) = exp(-2*pi*i*c_0) exactly.
The same s_k obey the triangular recursion

    s_k = 2*pi * [exp(-i*pi*c_0) * c_k
                  - i * sum_{r=1}^{k-1} (1 - r/k) * c_{k-r} * s_r],

giving two independent routes between c's and s's; tests pin them against
each other.  For an arc-system indicator the rescaled series

    1, -i*exp(i*pi*c_0)*s_1, -i*exp(i*pi*c_0)*s_2, ...

equals the Taylor expansion of prod (1 - z e^{i eta_r})/(1 - z e^{i xi_r}).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .spectra import TWO_PI, HermitianSpectrum

#: c_0 within this of {0, 1} short-circuits to the all-zero nonlinear spectrum
DEGENERATE_C0_TOL = 1e-12

#: convention string recorded in nonlinear coefficient files
NONLINEAR_CONVENTION = ("taylor of exp(-2*pi*i*h(f)); "
                       "s_k = i*exp(i*pi*c0)*E_k (k>=1); s_0 = 2*sin(pi*c0)")


class NonlinearSpectrum:
    """Window s_0 .. s_max_k of nonlinear coefficients plus the mean c_0.

    c_0 parameterizes the exponential change of variables; s_0 must equal
    2*sin(pi*c_0) up to `tol`.  Negative indices follow by conjugation.
    """

    def __init__(self, c0: float, s, tol: float = 1e-8):
        c0 = float(c0)
        if not 0.0 <= c0 <= 1.0:
            raise DomainError(f"c0 must lie in [0, 1]; got {c0}")
        s = np.asarray(s, dtype=complex)
        if s.ndim != 1 or s.size == 0:
            raise ValidationError("s window must be a non-empty 1-d array")
        expected = 2.0 * np.sin(np.pi * c0)
        if abs(s[0] - expected) > tol:
            raise ValidationError(
                f"s_0 = {s[0]:.6g} inconsistent with 2*sin(pi*c0) = {expected:.6g}")
        s = s.copy()
        s[0] = expected
        self.c0 = c0
        self.s = s

    @classmethod
    def from_sequence(cls, s, branch: str = "lower") -> "NonlinearSpectrum":
        """Build from a raw s-window, deriving c_0 from s_0 via the arcsine
        branch ("lower": c_0 in [0, 1/2]; "upper": c_0 in [1/2, 1])."""
        s = np.asarray(s, dtype=complex)
        return cls(c0_from_s0(complex(s[0]).real, branch), s)

    @property
    def max_k(self) -> int:
        return self.s.size - 1

    def __getitem__(self, k: int) -> complex:
        if abs(k) > self.max_k:
            raise IndexError(f"index {k} outside window 0..{self.max_k}")
        return complex(self.s[k]) if k >= 0 else complex(np.conj(self.s[-k]))

    def __repr__(self) -> str:
        return f"NonlinearSpectrum(c0={self.c0:.6g}, max_k={self.max_k})"


@dataclass
class HardySeries:
    """Taylor coefficients of the Hardy function h(f)(z) = sum c_k z^k."""

    taylor: np.ndarray

    def __post_init__(self):
        self.taylor = np.asarray(self.taylor, dtype=complex)
        if self.taylor.ndim != 1 or self.taylor.size == 0:
            raise ValidationError("taylor window must be a non-empty 1-d array")
        if abs(self.taylor[0].imag) > 1e-9:
            raise ValidationError("constant term of a Hardy series must be real")

    @property
    def max_k(self) -> int:
        return self.taylor.size - 1


def hardy_series(spec: HermitianSpectrum) -> HardySeries:
    """Hardy function of a hermitian window: the k >= 0 coefficients verbatim."""
    return HardySeries(spec.coeffs.copy())


def exp_series(h, max_k: int) -> np.ndarray:
    """Taylor coefficients E_0 .. E_max_k of exp(-2*pi*i * h(z)).

    Solves E' = g' E coefficient-wise with g = -2*pi*i*h; this route never
    uses the triangular recursion between c's and s's, so it serves as an
    independent oracle for it.
    """
    taylor = h.taylor if isinstance(h, HardySeries) else np.asarray(h, dtype=complex)
    if max_k > taylor.size - 1:
        raise ValidationError(f"max_k {max_k} exceeds series window {taylor.size - 1}")
    g = -2j * np.pi * taylor[: max_k + 1]
    out = np.zeros(max_k + 1, dtype=complex)
    out[0] = np.exp(g[0])
    for m in range(1, max_k + 1):
        j = np.arange(1, m + 1)
        out[m] = np.dot(j * g[1 : m + 1], out[m - 1 :: -1][:m]) / m
    return out


def nonlinear_from_exp(e: np.ndarray, c0: float) -> NonlinearSpectrum:
    """Extract the nonlinear window from a Taylor window of exp(-2*pi*i*h)."""
    e = np.asarray(e, dtype=complex)
    s = np.empty_like(e)
    s[0] = 2.0 * np.sin(np.pi * c0)
    s[1:] = 1j * np.exp(1j * np.pi * c0) * e[1:]
    return NonlinearSpectrum(c0, s)


def c_to_s(spec: HermitianSpectrum, max_k: int) -> NonlinearSpectrum:
    """Nonlinear coefficients from Fourier coefficients (triangular recursion).

    Degenerate means (c_0 within DEGENERATE_C0_TOL of 0 or 1 force f = 0 or
    f = 1 almost everywhere) short-circuit to the all-zero window.
    """
    if max_k > spec.max_k:
        raise ValidationError(f"max_k {max_k} exceeds spectrum window {spec.max_k}")
    c0 = spec.c0
    if not 0.0 <= c0 <= 1.0:
        raise DomainError(f"c0 = {c0} outside [0, 1]: not a fuzzy spectrum")
    if min(c0, 1.0 - c0) < DEGENERATE_C0_TOL:
        return NonlinearSpectrum(round(c0), np.zeros(max_k + 1, dtype=complex))
    c = spec.coeffs
    s = np.zeros(max_k + 1, dtype=complex)
    s[0] = 2.0 * np.sin(np.pi * c0)
    phase = np.exp(-1j * np.pi * c0)
    for k in range(1, max_k + 1):
        r = np.arange(1, k)
        conv = np.dot((1.0 - r / k) * c[k - r], s[r]) if k > 1 else 0.0
        s[k] = TWO_PI * (phase * c[k] - 1j * conv)
    return NonlinearSpectrum(c0, s)


def c0_from_s0(s0: float, branch: str = "lower") -> float:
    """Invert s_0 = 2*sin(pi*c_0) on the requested branch."""
    if abs(s0) > 2.0 + 1e-12:
        raise DomainError(f"|s_0| = {abs(s0)} > 2: no fuzzy preimage")
    ratio = min(1.0, max(-1.0, s0 / 2.0))
    base = float(np.arcsin(ratio) / np.pi)
    if branch == "lower":
        return base
    if branch == "upper":
        return 1.0 - base
    raise ValidationError(f"branch must be 'lower' or 'upper', got {branch!r}")


def s_to_c(ns: NonlinearSpectrum, max_k: int,
           branch: str | None = None) -> HermitianSpectrum:
    """Fourier coefficients from nonlinear coefficients (inverse recursion).

    branch selects the arcsine preimage of s_0 when rebuilding c_0
    ("lower"/"upper"); None keeps the c_0 carried by the spectrum.
    """
    if max_k > ns.max_k:
        raise ValidationError(f"max_k {max_k} exceeds window {ns.max_k}")
    c0 = ns.c0 if branch is None else c0_from_s0(float(ns.s[0].real), branch)
    c = np.zeros(max_k + 1, dtype=complex)
    c[0] = c0
    s = ns.s
    phase = np.exp(1j * np.pi * c0)
    for k in range(1, max_k + 1):
        r = np.arange(1, k)
        conv = np.dot((1.0 - r / k) * c[k - r], s[r]) if k > 1 else 0.0
        c[k] = phase * (s[k] / TWO_PI + 1j * conv)
    return HermitianSpectrum(c)


def product_series(ns: NonlinearSpectrum, max_k: int) -> np.ndarray:
    """Rescaled nonlinear series 1, -i*e^{i*pi*c0}*s_1, -i*e^{i*pi*c0}*s_2, ...

    For an arc-system indicator this equals the Taylor expansion of
    prod (1 - z e^{i eta_r})/(1 - z e^{i xi_r}) coefficient-wise.
    """
    if max_k > ns.max_k:
        raise ValidationError(f"max_k {max_k} exceeds window {ns.max_k}")
    out = np.zeros(max_k + 1, dtype=complex)
    out[0] = 1.0
    out[1:] = -1j * np.exp(1j * np.pi * ns.c0) * ns.s[1 : max_k + 1]
    return out
