"""Spectral defuzzification: the crisp set of order n whose first n Fourier
coefficients match a given fuzzy set's.

Pipeline: coefficient window -> nonlinear window -> one-step extension
forcing finite order n (with the extension phase solved so that the first
arc starts at angle 0) -> entry points from the order-polynomial roots ->
exit points from the numerator-polynomial roots -> interleave validation
-> residual verification against the exact spectrum of the produced arcs.

Every phase of the extension family matches the coefficient window, so the
pipeline is free to pick the anchored member; the requested phase is kept
in the diagnostics.  Near-crisp inputs whose order-n system degenerates
(weights collapsing to zero) fall back to lower orders, accepting the first
structurally valid attempt whose full-window residual is small enough.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .crisp import ArcSystem, crisp_spectrum
from .errors import FuzzspecError, ReconstructionError, ValidationError
from .membership import MembershipFunction
from .nonlinear import NonlinearSpectrum, c_to_s, product_series
from .spectra import (TWO_PI, HermitianSpectrum, QuadratureConfig,
                      fourier_coefficients)
from .toeplitz import (build_matrices, corner_affine, det_direct,
                       determinant_sequence, polynomial_roots,
                       toeplitz_polynomial)


@dataclass
class ReconstructionConfig:
    """Tolerances and controls for the defuzzification pipeline."""

    quadrature: Optional[QuadratureConfig] = None
    #: relative threshold for detecting an already-finite order
    zero_tol: float = 1e-10
    #: allowed distance of recovered roots from the unit circle before an
    #: attempt is rejected; roots inside it are projected onto the circle
    #: and the residual verification decides (looser than the analysis-level
    #: tolerance on purpose: projection errors show up in the residuals)
    root_tol: float = 1e-3
    #: residual level at which an attempt is accepted outright
    #: (None: 1e-9 for closed-form inputs, 1e-6 for quadrature inputs)
    strict_tol: Optional[float] = None
    #: residual ceiling for returning a best-effort result at all
    accept_tol: float = 1e-6
    #: c_0 closer than this to {0, 1} short-circuits
    degenerate_c0_tol: float = 1e-9
    #: arcs shorter than this trigger a warning on the result
    arc_warn_threshold: float = 1e-6
    #: anchor-phase refinement iteration budget
    anchor_max_iter: int = 60


@dataclass
class ReconstructionDiagnostics:
    """What the pipeline did and how well conditioned it was."""

    order_used: int = 0
    lambda_requested: float = 0.0
    lambda_effective: float = 0.0
    anchor_defect: float = 0.0
    root_circle_defect: float = 0.0
    weights: np.ndarray = field(default_factory=lambda: np.zeros(0))
    determinant_ratios: np.ndarray = field(default_factory=lambda: np.zeros(0))
    warnings: list[str] = field(default_factory=list)
    attempts: list[str] = field(default_factory=list)
    short_circuit: Optional[str] = None
    extras: dict = field(default_factory=dict)


@dataclass
class ReconstructionResult:
    """Arc system matching the first `match_window` coefficients of the input.

    residuals[k] = |c_k(f) - c_k(arcs)| for k = 0 .. match_window-1; `lam`
    is the phase actually realized, lam = sum(xi_r) (mod 2*pi).
    """

    arcs: ArcSystem
    lam: float
    match_window: int
    residuals: np.ndarray
    diagnostics: ReconstructionDiagnostics

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if self.residuals.size else 0.0

    def to_dict(self) -> dict:
        return {
            "n": self.match_window,
            "lambda": self.lam,
            "arcs": [[a, b] for a, b in zip(self.arcs.xi, self.arcs.eta)],
            "residuals": self.residuals.tolist(),
            "order_used": self.diagnostics.order_used,
            "warnings": list(self.diagnostics.warnings),
        }


@dataclass
class MatchReport:
    """Per-index coefficient differences between a fuzzy set and arcs."""

    residuals: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if self.residuals.size else 0.0


@dataclass
class SweepEntry:
    """One order of an approximation sweep; failed orders carry the error."""

    n: int
    result: Optional[ReconstructionResult] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.result is not None


def _det_real(s: np.ndarray, k: int) -> float:
    T, _ = build_matrices(s, k)
    d = det_direct(T) if k <= 4 else np.linalg.det(T)
    return float(np.real(d))


def _extend(s: np.ndarray, m: int, lam: float) -> np.ndarray:
    """Window s_0..s_{m-1} extended by the order-collapsing s_m at phase lam
    (no precondition policing: the caller judges the outcome)."""
    A, B = corner_affine(s[:m], m)
    if abs(A) < np.finfo(float).tiny:
        raise ReconstructionError("corner cofactor vanished during extension")
    Dm1 = _det_real(s, m - 1)
    sn = (Dm1 * np.exp(1j * lam) - B) / A
    return np.concatenate([s[:m], [sn]])


def _anchor_root_angle(roots: np.ndarray) -> tuple[int, float]:
    """Index and signed angle of the root closest to z = 1."""
    if roots.size == 0:
        raise ReconstructionError("degree-deficient order polynomial")
    angles = np.angle(roots)
    idx = int(np.argmin(np.abs(angles)))
    return idx, float(angles[idx])


def _anchor_phase(s: np.ndarray, m: int, cfg: ReconstructionConfig
                  ) -> tuple[float, float, np.ndarray, np.ndarray]:
    """Extension phase lam* whose order-m reconstruction has an entry at 0.

    Closed form: the order polynomial evaluated at z = 1 is affine in the
    unknown corner, hence affine in e^{i*lam}; the anchored member exists,
    so the affine image of the circle passes through 0.  A secant iteration
    on the anchor-root angle then removes the conditioning error of the
    determinant-based closed form.

    Returns (lam, anchor_defect, extended window, polynomial roots).
    """
    Dm1 = _det_real(s, m - 1)
    A, B = corner_affine(s[:m], m)
    # rows of the bordered determinant at z = 1, corner zeroed
    ones = np.ones(m + 1, dtype=complex)
    rows = np.array([[s[j - i] if j - i >= 0 else np.conj(s[i - j])
                      for j in range(m + 1)] for i in range(m)])
    rows[0, m] = 0.0
    M_full = np.vstack([ones, rows])
    E = np.linalg.det(M_full)
    C = (-1.0) ** (1 + m) * np.linalg.det(
        np.delete(np.delete(M_full, 1, axis=0), m, axis=1))
    G = C * Dm1 / A
    H = E - C * B / A
    lam = 0.0
    if abs(G) > np.finfo(float).tiny:
        u = -H / G
        if abs(u) > 0:
            lam = float(np.angle(u))

    def attempt(lam_val):
        ext = _extend(s, m, lam_val)
        roots = polynomial_roots(toeplitz_polynomial(ext, m, check_order=False))
        _, delta = _anchor_root_angle(roots)
        return delta, ext, roots

    d0, ext, roots = attempt(lam)
    if abs(d0) <= 5e-13:
        return lam, abs(d0), ext, roots
    lam_prev, d_prev = lam, d0
    lam_cur = lam - d0
    d_cur, ext, roots = attempt(lam_cur)
    for _ in range(cfg.anchor_max_iter):
        if abs(d_cur) <= 5e-13 or d_cur == d_prev:
            break
        lam_next = lam_cur - d_cur * (lam_cur - lam_prev) / (d_cur - d_prev)
        lam_prev, d_prev = lam_cur, d_cur
        lam_cur = lam_next
        d_cur, ext, roots = attempt(lam_cur)
    return float(lam_cur), abs(d_cur), ext, roots


@dataclass
class _Attempt:
    arcs: ArcSystem
    lam_eff: float
    order: int
    residuals: np.ndarray
    anchor_defect: float
    circle_defect: float
    mu: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals))


def _recover_arcs(c0: float, s_ext: np.ndarray, m: int, roots: np.ndarray,
                  cfg: ReconstructionConfig, anchored: bool) -> tuple:
    """Entries, exits and weights from an order-m window and its roots."""
    if roots.size != m:
        raise ReconstructionError(
            f"expected {m} entry roots, found {roots.size}")
    circle_defect = float(np.max(np.abs(np.abs(roots) - 1.0)))
    if circle_defect > cfg.root_tol:
        raise ReconstructionError(
            f"entry root off the unit circle by {circle_defect:.3e}")
    roots = roots / np.abs(roots)
    angles = np.angle(roots)
    if anchored:
        idx, delta = _anchor_root_angle(roots)
        angles[idx] = 0.0
    angles = np.mod(angles, TWO_PI)
    angles[angles > TWO_PI - 1e-9] = 0.0  # entry just below +1 wraps to 0
    xi = np.sort(angles)
    alpha = np.exp(1j * xi)
    powers = np.vander(alpha, m, increasing=True).T
    mu = np.linalg.solve(powers, s_ext[:m])
    if np.max(np.abs(mu.imag)) > 1e-6 * max(1.0, float(np.max(np.abs(mu)))):
        raise ReconstructionError("weights came out non-real")
    mu = mu.real
    if np.any(mu <= 0.0):
        raise ReconstructionError(f"non-positive weight: {mu.min():.3e}")
    # exits: numerator of the rational product, degree m
    ns_ext = NonlinearSpectrum(c0, s_ext, tol=1e-6)
    rho = product_series(ns_ext, m)
    den = np.array([1.0 + 0j])
    for a in alpha:
        den = np.convolve(den, np.array([1.0, -a]))
    numer = np.convolve(rho, den)[: m + 1]
    eroots = polynomial_roots(numer)
    if eroots.size != m:
        raise ReconstructionError(f"expected {m} exit roots, found {eroots.size}")
    exit_defect = float(np.max(np.abs(np.abs(eroots) - 1.0)))
    if exit_defect > cfg.root_tol:
        raise ReconstructionError(
            f"exit root off the unit circle by {exit_defect:.3e}")
    eta = np.sort(np.mod(-np.angle(eroots), TWO_PI))
    if not (np.all(xi < eta) and np.all(eta[:-1] < xi[1:])):
        raise ReconstructionError(
            "interleaving violated: endpoints do not alternate entry/exit")
    arcs = ArcSystem(xi, eta)  # may raise ValidationError on degenerate arcs
    return arcs, mu, max(circle_defect, exit_defect)


def _attempt_order(spec: HermitianSpectrum, s: np.ndarray, m: int, mode: str,
                   lam_requested: float, cfg: ReconstructionConfig,
                   window: int) -> _Attempt:
    c0 = spec.c0
    if mode == "own":
        s_ext = s[: m + 1].copy()
        roots = polynomial_roots(toeplitz_polynomial(s_ext, m, check_order=False))
        anchor_defect = 0.0
        anchored = False
    else:
        lam, anchor_defect, s_ext, roots = _anchor_phase(s, m, cfg)
        anchored = True
    try:
        arcs, mu, circle_defect = _recover_arcs(c0, s_ext, m, roots, cfg, anchored)
    except ValidationError as exc:
        raise ReconstructionError(str(exc)) from exc
    target = spec.coeffs[:window]
    produced = crisp_spectrum(arcs, window - 1).coeffs
    residuals = np.abs(produced - target)
    lam_eff = float(np.mod(np.sum(arcs.xi), TWO_PI))
    return _Attempt(arcs=arcs, lam_eff=lam_eff, order=m, residuals=residuals,
                    anchor_defect=anchor_defect, circle_defect=circle_defect,
                    mu=mu)


def _short_circuit(spec: HermitianSpectrum, n: int, reason: str,
                   arcs: ArcSystem, lam: float,
                   diag: ReconstructionDiagnostics) -> ReconstructionResult:
    produced = crisp_spectrum(arcs, n - 1).coeffs
    residuals = np.abs(produced - spec.coeffs[:n])
    diag.short_circuit = reason
    diag.order_used = arcs.n
    diag.lambda_effective = lam
    return ReconstructionResult(arcs=arcs, lam=lam, match_window=n,
                                residuals=residuals, diagnostics=diag)


def defuzz(f: MembershipFunction, n: int, lam: float = 0.0,
           cfg: ReconstructionConfig | None = None) -> ReconstructionResult:
    """Crisp set of order <= n matching the first n coefficients of f.

    The result is canonical (first arc anchored at angle 0) for fuzzy
    inputs; inputs that are already crisp of some order m <= n are detected
    and reproduced as-is.  `lam` is the requested extension phase; since
    anchoring fixes the phase, it is recorded in the diagnostics and the
    effective phase sum(xi) is returned on the result.
    """
    if n < 1:
        raise ValidationError("order n must be >= 1")
    cfg = cfg or ReconstructionConfig()
    diag = ReconstructionDiagnostics(lambda_requested=float(lam))
    spec = fourier_coefficients(f, n, cfg.quadrature)
    exact_input = f.exact_coefficients(0) is not None
    strict_tol = cfg.strict_tol if cfg.strict_tol is not None \
        else (1e-9 if exact_input else 1e-6)

    c0 = spec.c0
    if c0 <= cfg.degenerate_c0_tol:
        return _short_circuit(spec, n, "c0 ~ 0: empty set",
                              ArcSystem([], []), 0.0, diag)
    if c0 >= 1.0 - cfg.degenerate_c0_tol:
        diag.warnings.append("c0 ~ 1: returning a near-full single arc")
        full = ArcSystem([0.0], [TWO_PI - 1e-9])
        return _short_circuit(spec, n, "c0 ~ 1: near-full set", full, 0.0, diag)

    ns = c_to_s(spec, n)
    s = ns.s
    ta = determinant_sequence(s, n, cfg.zero_tol)
    diag.determinant_ratios = ta.ratios()

    candidates: list[tuple[str, int]] = []
    if ta.order is not None and ta.order.finite and ta.order.n and ta.order.n <= n:
        candidates.append(("own", ta.order.n))
    candidates.extend(("extend", m) for m in range(n, 0, -1))

    best: Optional[_Attempt] = None
    for mode, m in candidates:
        try:
            attempt = _attempt_order(spec, s, m, mode, lam, cfg, window=n)
        except FuzzspecError as exc:
            diag.attempts.append(f"order {m} ({mode}): {exc}")
            continue
        diag.attempts.append(
            f"order {m} ({mode}): max residual {attempt.max_residual:.3e}")
        if best is None or attempt.max_residual < best.max_residual:
            best = attempt
        if attempt.max_residual < strict_tol:
            break

    if best is None or best.max_residual > cfg.accept_tol:
        worst = "no structurally valid attempt" if best is None else \
            f"best residual {best.max_residual:.3e} above {cfg.accept_tol}"
        raise ReconstructionError(
            f"defuzzification failed at order {n}: {worst}; "
            f"attempts: {diag.attempts}")

    if best.order < n:
        diag.warnings.append(
            f"input is numerically crisp near order {best.order}; "
            f"returned order {best.order} < requested {n}")
    if best.max_residual >= strict_tol:
        diag.warnings.append(
            f"residual {best.max_residual:.3e} above strict tolerance "
            f"{strict_tol:.1e}")
    short = np.concatenate([best.arcs.eta - best.arcs.xi,
                            (best.arcs.xi[1:] - best.arcs.eta[:-1])
                            if best.arcs.n > 1 else np.zeros(0)])
    if best.arcs.n and np.any(short < cfg.arc_warn_threshold):
        diag.warnings.append(
            f"near-degenerate arc or gap (min {short.min():.3e} rad)")
    if abs(np.exp(1j * best.lam_eff) - np.exp(1j * lam)) > 1e-9:
        diag.warnings.append(
            f"extension phase adjusted from {lam:.6g} to {best.lam_eff:.6g} "
            "to anchor the first arc at 0")
    diag.order_used = best.order
    diag.lambda_effective = best.lam_eff
    diag.anchor_defect = best.anchor_defect
    diag.root_circle_defect = best.circle_defect
    diag.weights = best.mu
    return ReconstructionResult(arcs=best.arcs, lam=best.lam_eff,
                                match_window=n, residuals=best.residuals,
                                diagnostics=diag)


def approximation_sequence(f: MembershipFunction, n_max: int,
                           cfg: ReconstructionConfig | None = None
                           ) -> list[SweepEntry]:
    """defuzz for n = 1 .. n_max with the default phase; failures are marked
    on their entry instead of aborting the sweep."""
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    entries = []
    for n in range(1, n_max + 1):
        try:
            entries.append(SweepEntry(n=n, result=defuzz(f, n, 0.0, cfg)))
        except FuzzspecError as exc:
            entries.append(SweepEntry(n=n, error=str(exc)))
    return entries


def verify_match(f: MembershipFunction, arcs: ArcSystem, n: int,
                 q: QuadratureConfig | None = None) -> MatchReport:
    """Per-index |c_k(f) - c_k(arcs)| for k = 0 .. n-1."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    fs = fourier_coefficients(f, n - 1, q)
    cs = crisp_spectrum(arcs, n - 1)
    return MatchReport(residuals=np.abs(fs.coeffs - cs.coeffs))
