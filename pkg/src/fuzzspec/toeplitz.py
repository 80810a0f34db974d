"""Toeplitz analysis of hermitian coefficient sequences.

From a hermitian sequence s (s_{-k} = conj(s_k)) build

    T_k : (k+1) x (k+1), entries s_{j-i}        (hermitian)
    W_k : k x k,         entries s_{1+j-i}      (T_k minus first column
                                                 and last row)

with determinants D_k = det T_k (real) and F_k = det W_k.  They satisfy the
corner identity

    D_{k-1}^2 - D_{k-2} * D_k = |F_k|^2        (D_{-1} := 1),

which drives both the order classification (finite order n means
D_0..D_{n-1} > 0 and D_k = 0 from n on) and the one-step extension that
collapses a sequence to finite order with a prescribed phase of F_n.

Operations accept either a NonlinearSpectrum or a plain complex array, so
synthetic hermitian sequences can be analyzed directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (InvalidSequenceError, NumericError, PreconditionError,
                     ValidationError)
from .nonlinear import NonlinearSpectrum

#: default relative threshold deciding D_k ~ 0 (relative to the Hadamard bound)
DEFAULT_ZERO_TOL = 1e-10
#: roots farther than this from the unit circle are an error; closer ones are
#: projected onto it
DEFAULT_ROOT_TOL = 1e-6

_SCALE_FLOOR = np.finfo(float).tiny


def as_sequence(ns) -> np.ndarray:
    """Complex s-window out of a NonlinearSpectrum or array-like."""
    if isinstance(ns, NonlinearSpectrum):
        return ns.s
    s = np.asarray(ns, dtype=complex)
    if s.ndim != 1 or s.size == 0:
        raise ValidationError("sequence must be a non-empty 1-d array")
    return s


def _herm(s: np.ndarray, k: int) -> complex:
    return complex(s[k]) if k >= 0 else complex(np.conj(s[-k]))


def build_matrices(ns, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(T_k, W_k) for one k.  W_0 is the empty 0 x 0 matrix."""
    s = as_sequence(ns)
    if k < 0:
        raise ValidationError("k must be >= 0")
    if k > s.size - 1:
        raise ValidationError(f"window too short: need s_0..s_{k}, have {s.size - 1}")
    T = np.array([[_herm(s, j - i) for j in range(k + 1)] for i in range(k + 1)])
    W = np.array([[_herm(s, 1 + j - i) for j in range(k)] for i in range(k)],
                 dtype=complex).reshape(k, k)
    return T, W


def det_direct(M: np.ndarray) -> complex:
    """Determinant by cofactor expansion; independent of the LU route.

    Intended for matrices up to 5 x 5 (cross-checking the factorized path).
    """
    m = M.shape[0]
    if m == 0:
        return 1.0 + 0j
    if m == 1:
        return complex(M[0, 0])
    acc = 0j
    sub = np.delete(M, 0, axis=0)
    for j in range(m):
        acc += (-1.0) ** j * M[0, j] * det_direct(np.delete(sub, j, axis=1))
    return acc


def hadamard_bound(M: np.ndarray) -> float:
    """Product of row norms: an upper bound for |det M|, used as the per-k
    normalization for relative zero tests."""
    if M.shape[0] == 0:
        return 1.0
    return float(np.prod(np.linalg.norm(M, axis=1)))


@dataclass
class OrderClassification:
    """Outcome of the finite/infinite order test."""

    finite: bool
    n: int | None
    upto: int
    #: indices k > n where the tail failed to vanish (numerical trouble)
    violations: list[int] = field(default_factory=list)

    def __str__(self) -> str:
        if self.finite:
            return f"finite order {self.n}"
        return f"infinite order up to {self.upto}"


@dataclass
class ToeplitzAnalysis:
    """Determinant sequences of one hermitian window.

    D[k] and F[k] are det T_k and det W_k for 0 <= k <= K (F[0] := 1, the
    empty determinant); imag_residue[k] records how far det T_k was from
    real before the real part was taken; tol_scale[k] is the Hadamard bound
    of T_k used for relative zero tests.
    """

    D: np.ndarray
    F: np.ndarray
    imag_residue: np.ndarray
    tol_scale: np.ndarray
    order: OrderClassification | None = None

    @property
    def max_k(self) -> int:
        return self.D.size - 1

    def ratios(self) -> np.ndarray:
        """Relative determinant magnitudes D_k / tol_scale_k."""
        return self.D / np.maximum(self.tol_scale, _SCALE_FLOOR)


def determinant_sequence(ns, K: int,
                         zero_tol: float = DEFAULT_ZERO_TOL) -> ToeplitzAnalysis:
    """D_0..D_K and F_1..F_K with per-k normalizations.

    Determinants use pivoted LU for k > 4 and direct cofactor expansion for
    k <= 4 (the two routes are cross-checked by the test suite on the
    overlap).  The returned analysis carries a default order classification.
    """
    s = as_sequence(ns)
    if K > s.size - 1:
        raise ValidationError(f"window too short: need s_0..s_{K}")
    D = np.zeros(K + 1)
    F = np.ones(K + 1, dtype=complex)
    imag = np.zeros(K + 1)
    scale = np.zeros(K + 1)
    for k in range(K + 1):
        T, W = build_matrices(s, k)
        dT = det_direct(T) if k <= 4 else np.linalg.det(T)
        D[k] = dT.real
        imag[k] = abs(dT.imag)
        scale[k] = max(hadamard_bound(T), _SCALE_FLOOR)
        if k >= 1:
            F[k] = det_direct(W) if k <= 4 else np.linalg.det(W)
    analysis = ToeplitzAnalysis(D=D, F=F, imag_residue=imag, tol_scale=scale)
    try:
        analysis.order = classify_order(analysis, zero_tol)
    except InvalidSequenceError:
        # raw hermitian input that is not a fuzzy nonlinear spectrum; the
        # determinant data is still valid, only the order is undefined
        analysis.order = None
    return analysis


def classify_order(ta: ToeplitzAnalysis,
                   zero_tol: float = DEFAULT_ZERO_TOL) -> OrderClassification:
    """Least n with D_n ~ 0 (relative) and D_k > 0 before it, else infinite.

    A significantly negative determinant means the sequence is not the
    nonlinear spectrum of any fuzzy set and raises InvalidSequenceError.
    The tail beyond a finite order is checked; non-vanishing tail entries
    are reported as violations (they indicate numerical trouble, since the
    corner identity forces the tail to stay at zero).
    """
    rel = ta.ratios()
    K = ta.max_k
    n = None
    for k in range(K + 1):
        if rel[k] < -zero_tol:
            raise InvalidSequenceError(
                f"D_{k} = {ta.D[k]:.3e} is negative beyond tolerance: "
                "sequence is not a fuzzy nonlinear spectrum")
        if abs(rel[k]) < zero_tol:
            n = k
            break
    if n is None:
        return OrderClassification(finite=False, n=None, upto=K)
    violations = [k for k in range(n + 1, K + 1) if abs(rel[k]) >= zero_tol]
    return OrderClassification(finite=True, n=n, upto=K, violations=violations)


def _poly_matrix(s: np.ndarray, n: int) -> np.ndarray:
    """Rows 2..n+1 of the order polynomial determinant: the n x (n+1) band
    with entries s_{j-i}, i = 0..n-1, j = 0..n."""
    return np.array([[_herm(s, j - i) for j in range(n + 1)] for i in range(n)])


def _require_order(s: np.ndarray, n: int, zero_tol: float) -> ToeplitzAnalysis:
    upto = min(s.size - 1, n)
    ta = determinant_sequence(s, upto, zero_tol)
    rel = ta.ratios()
    if np.any(rel[:n] < zero_tol):
        raise PreconditionError(
            f"sequence is not of order {n}: D_0..D_{n-1} must be positive "
            f"(relative magnitudes {rel[:n]})")
    if upto >= n and abs(rel[n]) >= zero_tol:
        raise PreconditionError(
            f"sequence is not of order {n}: D_{n} relative magnitude "
            f"{rel[n]:.3e} not below {zero_tol}")
    return ta


def toeplitz_polynomial(ns, n: int, zero_tol: float = DEFAULT_ZERO_TOL,
                        check_order: bool = True) -> np.ndarray:
    """Degree-n polynomial (ascending coefficients) whose roots are the
    entry points e^{i xi_r} of the order-n sequence.

    Expands the bordered determinant | 1 z .. z^n ; s-rows | along its first
    row, so coefficient j is the signed n x n minor (-1)^j M_j; the leading
    coefficient is (-1)^n D_{n-1} != 0.  check_order=False skips the
    order-n precondition (used by callers that judge the outcome instead).
    """
    s = as_sequence(ns)
    if n < 1:
        raise ValidationError("order must be >= 1")
    if n > s.size - 1:
        raise ValidationError(f"window too short: need s_0..s_{n}")
    if check_order:
        _require_order(s, n, zero_tol)
    M = _poly_matrix(s, n)
    return np.array([(-1.0) ** j * np.linalg.det(np.delete(M, j, axis=1))
                     for j in range(n + 1)])


def aberth_roots(coeffs_ascending: np.ndarray, tol: float = 1e-13,
                 max_iter: int = 200) -> np.ndarray:
    """Durand-Kerner/Aberth simultaneous root iteration (fallback finder)."""
    c = np.asarray(coeffs_ascending, dtype=complex)
    c = np.trim_zeros(c, "b")
    deg = c.size - 1
    if deg < 1:
        return np.zeros(0, dtype=complex)
    if abs(c[-1]) < 1e-280 * np.max(np.abs(c)):
        # effectively degree-deficient; let the caller detect the
        # root-count mismatch instead of iterating on garbage
        return np.zeros(0, dtype=complex)
    with np.errstate(all="ignore"):
        monic = c / c[-1]
        radius = 1.0 + float(np.max(np.abs(monic[:-1])))
        k = np.arange(deg)
        z = radius * np.exp(2j * np.pi * (k + 0.25) / deg)
        deriv = monic[1:] * np.arange(1, deg + 1)
        for _ in range(max_iter):
            p = np.polyval(monic[::-1], z)
            dp = np.polyval(deriv[::-1], z)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            corr = np.sum(1.0 / diff, axis=1)
            denom = dp - p * corr
            denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
            step = p / denom
            z = z - step
            if np.max(np.abs(step)) < tol:
                break
    return z


def polynomial_roots(coeffs_ascending: np.ndarray) -> np.ndarray:
    """All roots of a polynomial given ascending coefficients.

    Companion-matrix eigenvalues (shifted QR) are the primary route; the
    Aberth iteration takes over if QR fails or returns non-finite values.
    """
    c = np.asarray(coeffs_ascending, dtype=complex)
    lead = np.max(np.abs(c))
    if lead == 0.0 or abs(c[-1]) < 1e-14 * lead:
        return aberth_roots(c)  # degenerate leading coefficient
    try:
        with np.errstate(invalid="ignore", divide="ignore"):
            roots = np.roots(c[::-1])
        if np.all(np.isfinite(roots)):
            return roots
    except np.linalg.LinAlgError:
        pass
    return aberth_roots(c)


@dataclass
class UnitRootDecomposition:
    """Representation s_k = sum_r mu_r * alpha_r^k with unimodular alpha_r
    and positive weights mu_r; `residual` is the worst mismatch over the
    hermitian validation window k = -(n-1) .. n-1."""

    alpha: np.ndarray
    mu: np.ndarray
    residual: float

    @property
    def n(self) -> int:
        return self.alpha.size

    @property
    def angles(self) -> np.ndarray:
        """Entry angles xi_r = arg(alpha_r) in [0, 2*pi), sorted."""
        return np.mod(np.angle(self.alpha), 2 * np.pi)


def unit_root_decompose(ns, n: int, root_tol: float = DEFAULT_ROOT_TOL,
                        zero_tol: float = DEFAULT_ZERO_TOL) -> UnitRootDecomposition:
    """Roots and weights of an order-n sequence.

    Roots of the order polynomial are checked against the unit circle
    (beyond root_tol -> NumericError), radially projected onto it, and the
    weights are solved from the square Vandermonde system over k = 0..n-1,
    then validated on the full hermitian window; non-positive weights raise
    InvalidSequenceError.
    """
    s = as_sequence(ns)
    coeffs = toeplitz_polynomial(s, n, zero_tol)
    roots = polynomial_roots(coeffs)
    if roots.size != n:
        raise NumericError(f"expected {n} roots, found {roots.size}")
    off = np.max(np.abs(np.abs(roots) - 1.0))
    if off > root_tol:
        raise NumericError(f"root off the unit circle by {off:.3e}", residual=off)
    angles = np.mod(np.angle(roots), 2 * np.pi)
    angles[angles > 2 * np.pi - 1e-9] = 0.0  # wrap roots just below +1
    alpha = np.exp(1j * np.sort(angles))
    if n > 1:
        gaps = np.abs(np.diff(np.concatenate([alpha, alpha[:1]])))
        if np.min(gaps) < 1e-9:
            raise NumericError(
                f"roots not simple: minimum separation {np.min(gaps):.3e}")
    powers = np.vander(alpha, n, increasing=True).T  # rows k = 0..n-1
    mu = np.linalg.solve(powers, s[:n])
    if np.max(np.abs(mu.imag)) > 1e-6 * max(1.0, np.max(np.abs(mu))):
        raise NumericError("weights came out non-real",
                           residual=float(np.max(np.abs(mu.imag))))
    mu = mu.real
    if np.any(mu <= 0.0):
        raise InvalidSequenceError(
            f"non-positive weight in the decomposition: {mu}")
    ks = np.arange(-(n - 1), n)
    recon = (alpha[None, :] ** ks[:, None]) @ mu
    target = np.array([_herm(s, int(k)) for k in ks])
    residual = float(np.max(np.abs(recon - target)))
    return UnitRootDecomposition(alpha=alpha, mu=mu, residual=residual)


def corner_affine(ns, n: int) -> tuple[complex, complex]:
    """Coefficients (A, B) of the affine map F_n = A * s_n + B.

    The unknown s_n enters W_n only through its top-right corner; the
    cofactor there is A = (-1)^(n-1) * D_{n-2} (D_{-1} := 1), and B is
    det W_n with the corner zeroed.  The sign of A is locked by a
    regression test against determinant evaluation.
    """
    s = as_sequence(ns)
    if n < 1:
        raise ValidationError("n must be >= 1")
    if s.size - 1 < n - 1:
        raise ValidationError(f"window too short: need s_0..s_{n-1}")
    if n == 1:
        return 1.0 + 0j, 0.0 + 0j
    Dn2 = det_direct(build_matrices(s, n - 2)[0]) if n - 2 <= 4 \
        else np.linalg.det(build_matrices(s, n - 2)[0])
    A = (-1.0) ** (n - 1) * complex(Dn2).real
    padded = np.concatenate([s[:n], [0.0]])
    _, W = build_matrices(padded, n)
    B = det_direct(W) if n <= 4 else np.linalg.det(W)
    return complex(A), complex(B)


def caratheodory_extend(ns, lam: float, n: int | None = None,
                        zero_tol: float = DEFAULT_ZERO_TOL) -> complex:
    """The next coefficient s_n that collapses the sequence to order n with
    arg(F_n) = lam.

    Given s_0..s_{n-1} with D_0..D_{n-1} > 0, solves A*s_n + B =
    D_{n-1}*e^{i*lam}; by the corner identity this forces D_n = 0.  The
    postcondition (D_n relatively small, arg F_n = lam) is re-verified on
    the extended sequence.
    """
    s = as_sequence(ns)
    if n is None:
        n = s.size  # extend a window s_0..s_{n-1} by one
    if n < 1 or s.size < n:
        raise ValidationError(f"need s_0..s_{n-1} to extend to order {n}")
    ta = determinant_sequence(s[:n], n - 1, zero_tol)
    rel = ta.ratios()
    if np.any(rel < zero_tol):
        raise PreconditionError(
            f"extension needs D_0..D_{n-1} positive; relative magnitudes {rel}")
    A, B = corner_affine(s, n)
    if abs(A) <= _SCALE_FLOOR:
        raise NumericError("corner cofactor vanished; cannot extend")
    Dn1 = ta.D[n - 1]
    sn = (Dn1 * np.exp(1j * lam) - B) / A
    extended = np.concatenate([s[:n], [sn]])
    T, W = build_matrices(extended, n)
    Dn = (det_direct(T) if n <= 4 else np.linalg.det(T)).real
    scale = max(hadamard_bound(T), _SCALE_FLOOR)
    if abs(Dn) / scale > max(100 * zero_tol, 1e-8):
        raise NumericError(f"extension failed: relative D_n = {Dn / scale:.3e}",
                           residual=abs(Dn) / scale)
    Fn = det_direct(W) if n <= 4 else np.linalg.det(W)
    phase_err = abs(np.exp(1j * np.angle(Fn)) - np.exp(1j * lam))
    if phase_err > 1e-6:
        raise NumericError(f"extension phase error {phase_err:.3e}",
                           residual=phase_err)
    return complex(sn)
