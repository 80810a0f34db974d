"""Crisp subsets of the circle: unions of n disjoint arcs and their spectra.

An arc system is the indicator of [xi_1, eta_1] u ... u [xi_n, eta_n] with

    0 <= xi_1 < eta_1 < xi_2 < ... < xi_n < eta_n < 2*pi.

The canonical form additionally anchors xi_1 = 0 (first arc starts at angle
zero); file loading normalizes to canonical form, reporting the rotation
applied.  Spectra are exact:

    c_0 = (1/(2*pi)) * sum (eta_r - xi_r)
    c_k = (1/(2*pi*k*i)) * sum (exp(i*k*eta_r) - exp(i*k*xi_r)),  k >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .spectra import TWO_PI, HermitianSpectrum

#: arcs shorter than this (radians) are rejected as degenerate
DEGENERACY_THRESHOLD = 1e-9


class ArcSystem:
    """A union of n non-degenerate, pairwise disjoint arcs of the circle.

    n = 0 is the empty set.  Endpoints are stored sorted and interleaved;
    construction validates all invariants.
    """

    def __init__(self, xi, eta):
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        eta = np.atleast_1d(np.asarray(eta, dtype=float))
        if xi.shape != eta.shape:
            raise ValidationError("xi and eta must have the same length")
        n = xi.size
        if n:
            pts = np.empty(2 * n)
            pts[0::2] = xi
            pts[1::2] = eta
            if pts[0] < 0.0 or pts[-1] >= TWO_PI:
                raise ValidationError(
                    "endpoints must satisfy 0 <= xi_1 and eta_n < 2*pi")
            if np.any(np.diff(pts) <= 0.0):
                raise ValidationError(
                    "endpoints must interleave strictly: xi_1 < eta_1 < xi_2 < ...")
            if np.any(eta - xi < DEGENERACY_THRESHOLD):
                raise ValidationError(
                    f"arc shorter than degeneracy threshold {DEGENERACY_THRESHOLD}")
        self.xi = xi
        self.eta = eta

    @property
    def n(self) -> int:
        return self.xi.size

    @property
    def is_empty(self) -> bool:
        return self.n == 0

    @property
    def is_canonical(self) -> bool:
        """True when the first arc starts exactly at angle 0."""
        return self.n > 0 and self.xi[0] == 0.0

    @property
    def measure(self) -> float:
        return float(np.sum(self.eta - self.xi))

    @property
    def mean_value(self) -> float:
        """c_0: fraction of the circle covered."""
        return self.measure / TWO_PI

    def indicator(self, t):
        """Indicator values at angles t (arcs are closed at both endpoints)."""
        t = np.mod(np.asarray(t, dtype=float), TWO_PI)
        if self.is_empty:
            return np.zeros_like(t)
        inside = np.zeros(t.shape, dtype=bool)
        for a, b in zip(self.xi, self.eta):
            inside |= (t >= a) & (t <= b)
        return inside.astype(float)

    def canonicalized(self) -> tuple["ArcSystem", float]:
        """Rotate so the first arc starts at 0; returns (system, rotation).

        The returned rotation theta is the angle subtracted from every
        endpoint (indicator_new(t) = indicator_old(t + theta)), so the
        spectrum transforms as c_k -> exp(-i*k*theta) * c_k.
        """
        if self.is_empty or self.is_canonical:
            return self, 0.0
        theta = float(self.xi[0])
        xi = self.xi - theta
        xi[0] = 0.0
        return ArcSystem(xi, self.eta - theta), theta

    def __repr__(self) -> str:
        pairs = ", ".join(f"[{a:.4g}, {b:.4g}]" for a, b in zip(self.xi, self.eta))
        return f"ArcSystem({pairs})" if self.n else "ArcSystem(empty)"


def indicator_coefficients(xi, eta, max_k: int) -> np.ndarray:
    """Exact c_0 .. c_max_k of an indicator given entry/exit angle arrays.

    Works for any orientation-consistent endpoint sets (used internally by
    presets whose arc decomposition wraps through 0); for k >= 1 only the
    endpoint positions on the circle matter.
    """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    coeffs = np.zeros(max_k + 1, dtype=complex)
    coeffs[0] = np.sum(eta - xi) / TWO_PI
    for k in range(1, max_k + 1):
        coeffs[k] = np.sum(np.exp(1j * k * eta) - np.exp(1j * k * xi)) \
            / (TWO_PI * k * 1j)
    return coeffs


def crisp_spectrum(arcs: ArcSystem, max_k: int) -> HermitianSpectrum:
    """Exact coefficient window of an arc-system indicator (no quadrature)."""
    if max_k < 0:
        raise ValidationError("max_k must be >= 0")
    if arcs.is_empty:
        return HermitianSpectrum(np.zeros(max_k + 1, dtype=complex))
    return HermitianSpectrum(indicator_coefficients(arcs.xi, arcs.eta, max_k))


@dataclass
class SignPolynomial:
    """Trigonometric polynomial P(x) = sum_{k=-n}^{n} P_k e^{ikx} vanishing
    exactly at the 2n arc endpoints, positive inside the arcs and negative
    in the gaps.

    coeffs[j] stores P_{j-n} (index j = 0 .. 2n).
    """

    n: int
    coeffs: np.ndarray

    def coefficient(self, k: int) -> complex:
        if abs(k) > self.n:
            raise IndexError(f"mode {k} outside -{self.n}..{self.n}")
        return complex(self.coeffs[k + self.n])

    @property
    def leading(self) -> complex:
        """P_n; has modulus 1 for the normalization used here."""
        return complex(self.coeffs[-1])

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        ks = np.arange(-self.n, self.n + 1)
        vals = np.tensordot(self.coeffs, np.exp(1j * np.outer(ks, x)), axes=(0, 0))
        return np.real(vals)


def sign_polynomial(arcs: ArcSystem) -> SignPolynomial:
    """Sign-detecting polynomial of an arc system.

    Built as -2^(2n) * prod over all 2n endpoints e of sin((x - e)/2): a
    point inside an arc sees an odd number of endpoints ahead of it, so the
    bare product is negative there and the global sign flip makes the sign
    pattern +1 on the interior of every arc and -1 on every gap.  The
    leading coefficient then is P_n = (-1)^(n+1) * exp(-i * sum(e)/2), of
    modulus 1.
    """
    if arcs.is_empty:
        raise ValidationError("sign polynomial undefined for the empty system")
    endpoints = np.sort(np.concatenate([arcs.xi, arcs.eta]))
    if np.min(np.diff(endpoints)) < DEGENERACY_THRESHOLD:
        raise ValidationError("coincident endpoints: sign pattern degenerates")
    n = arcs.n
    # 2^{2n} prod sin((x-e)/2) = (-1)^n e^{i sum(e)/2} e^{-inx} prod_j (w e^{-i e_j} - 1)
    # with w = e^{ix}; expand the product in w, then flip the global sign.
    poly = np.array([1.0 + 0j])
    for e in endpoints:
        poly = np.convolve(poly, np.array([-1.0, np.exp(-1j * e)]))
    prefactor = (-1.0) ** (n + 1) * np.exp(0.5j * np.sum(endpoints))
    return SignPolynomial(n=n, coeffs=prefactor * poly)


def rational_expansion(arcs: ArcSystem, max_k: int) -> np.ndarray:
    """Taylor coefficients of prod_r (1 - z e^{i eta_r}) / (1 - z e^{i xi_r}).

    Computed by formal long division of the numerator by the denominator;
    coefficient 0 is exactly 1.  The empty system gives 1, 0, 0, ...
    """
    if max_k < 0:
        raise ValidationError("max_k must be >= 0")
    num = np.array([1.0 + 0j])
    den = np.array([1.0 + 0j])
    for e in arcs.eta:
        num = np.convolve(num, np.array([1.0, -np.exp(1j * e)]))
    for x in arcs.xi:
        den = np.convolve(den, np.array([1.0, -np.exp(1j * x)]))
    out = np.zeros(max_k + 1, dtype=complex)
    for m in range(max_k + 1):
        acc = num[m] if m < num.size else 0.0
        jmax = min(m, den.size - 1)
        if jmax >= 1:
            acc = acc - np.dot(den[1:jmax + 1], out[m - 1::-1][:jmax])
        out[m] = acc
    out[0] = 1.0
    return out


def random_arc_system(rng: np.random.Generator, n: int,
                      min_gap: float = 0.1) -> ArcSystem:
    """Canonical random arc system of order n with all endpoint gaps >= min_gap."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    if min_gap * 2 * n >= TWO_PI:
        raise ValidationError("min_gap too large for this order")
    while True:
        pts = np.sort(rng.uniform(0.0, TWO_PI, 2 * n - 1))
        all_pts = np.concatenate([[0.0], pts, [TWO_PI]])
        if np.min(np.diff(all_pts)) >= min_gap:
            break
    return ArcSystem(all_pts[0:-1:2], all_pts[1:-1:2])
