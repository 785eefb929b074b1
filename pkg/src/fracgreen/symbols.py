"""Fourier symbol of the asymmetric space-fractional derivative.

psi(alpha, theta, k) = |k|^alpha * exp(i sign(k) theta pi/2), with
sign(0) := 0 so psi vanishes exactly at k = 0.  The real part is
non-negative throughout the admissible (alpha, theta) domain, which is what
makes the inverse-Fourier kernels integrable.
"""

from __future__ import annotations

import numpy as np

from .params import MultiTermParams


def psi(alpha: float, theta: float, k):
    """Symbol at wavenumber(s) ``k``; scalar in, complex scalar out.

    theta = 0 returns an exactly real value (zero imaginary part by
    construction, not by rounding).
    """
    k = np.asarray(k, dtype=float)
    mag = np.abs(k) ** alpha
    phase = 0.5 * np.pi * theta
    c, s = np.cos(phase), np.sin(phase)
    out = mag * c + 1j * (mag * s * np.sign(k))
    if out.ndim == 0:
        return complex(out)
    return out


def psi_multi(p: MultiTermParams, k):
    """Aggregated symbol sum_j eta_j psi(alpha_j, theta_j, k)."""
    k = np.asarray(k, dtype=float)
    out = np.zeros(k.shape, dtype=complex)
    for t in p.terms:
        out += t.eta * psi(t.alpha, t.theta, k)
    if out.ndim == 0:
        return complex(out)
    return out
