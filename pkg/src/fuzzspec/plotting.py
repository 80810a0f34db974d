"""Figure rendering for the CLI report path.

Figures are written next to the delimited data tables; all rendering uses
the Agg backend so no display is required.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_FIGSIZE = (7.0, 4.0)
_DPI = 150


def save_membership_plot(path, t, f_vals, chi_vals=None, title=""):
    """Membership function, optionally overlaid with a crisp indicator."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(t, f_vals, lw=1.5, label="membership")
    if chi_vals is not None:
        ax.fill_between(t, 0, chi_vals, step="mid", alpha=0.25,
                        color="tab:orange", label="crisp reconstruction")
    ax.set_xlim(0, 2 * np.pi)
    ax.set_ylim(-0.05, 1.1)
    ax.set_xlabel("t (rad)")
    ax.set_ylabel("membership")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_residual_plot(path, ks, residuals, tol=None, title="residuals"):
    """Per-coefficient residual magnitudes on a log scale."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    vals = np.maximum(np.asarray(residuals, dtype=float), 1e-18)
    ax.semilogy(ks, vals, "o-", lw=1.0)
    if tol is not None:
        ax.axhline(tol, color="tab:red", ls="--", lw=1.0, label=f"tol {tol:g}")
        ax.legend(fontsize=9)
    ax.set_xlabel("k")
    ax.set_ylabel("|residual|")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_magnitude_plot(path, ks, magnitudes, bound=None, title="|c_k|"):
    """Coefficient magnitudes with the fuzzy-spectrum bound overlaid."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.stem(ks, magnitudes)
    if bound is not None:
        ax.axhline(bound, color="tab:red", ls="--", lw=1.0,
                   label=f"bound {bound:.6g}")
        ax.legend(fontsize=9)
    ax.set_xlabel("k")
    ax.set_ylabel("magnitude")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_determinant_plot(path, ratios, title="relative determinants"):
    """Relative determinant magnitudes D_k / scale_k on a log scale."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ratios = np.asarray(ratios, dtype=float)
    ks = np.arange(ratios.size)
    ax.semilogy(ks, np.maximum(np.abs(ratios), 1e-18), "s-", lw=1.0)
    ax.set_xlabel("k")
    ax.set_ylabel("|D_k| / scale_k")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
