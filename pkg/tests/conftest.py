"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest
from scipy.integrate import quad

TWO_PI = 2.0 * np.pi


def oracle_coefficient(fn, k, breakpoints=None):
    """Independent c_k oracle: adaptive quadrature of fn(t) * e^{ikt}.

    `fn` is a plain callable on [0, 2*pi]; breakpoints (discontinuities or
    kinks) are forwarded to the integrator.  Deliberately does not reuse any
    production integration code.
    """
    pts = sorted(p for p in (breakpoints or []) if 0.0 < p < TWO_PI)
    kw = dict(limit=400, epsabs=1e-13, epsrel=1e-13)
    if pts:
        kw["points"] = pts
    re = quad(lambda t: fn(t) * np.cos(k * t), 0.0, TWO_PI, **kw)[0]
    im = quad(lambda t: fn(t) * np.sin(k * t), 0.0, TWO_PI, **kw)[0]
    return (re + 1j * im) / TWO_PI


def oracle_spectrum(fn, max_k, breakpoints=None):
    return np.array([oracle_coefficient(fn, k, breakpoints)
                     for k in range(max_k + 1)])


def random_hermitian_sequence(rng, length):
    """Raw hermitian window: random real s_0, random complex s_k."""
    s = rng.normal(size=length) + 1j * rng.normal(size=length)
    s[0] = rng.normal()
    return s


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
