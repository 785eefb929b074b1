"""Shared quadrature machinery for the integral evaluation routes.

Everything here works on vectorised integrands: ``f(x)`` takes a 1-D numpy
array of abscissae and returns the integrand values (possibly complex).
"""

from __future__ import annotations

import functools
import math

import numpy as np


@functools.lru_cache(maxsize=32)
def _gl_rule(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def gauss_panel(f, a, b, n=16):
    """Fixed Gauss-Legendre integral of ``f`` over [a, b]."""
    x, w = _gl_rule(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * np.sum(f(mid + half * x) * w)


def gauss_panels(f, edges, n=16):
    """Panel-wise Gauss-Legendre over consecutive ``edges``; one f call.

    Returns the array of per-panel integrals (dtype follows the integrand).
    """
    edges = np.asarray(edges, dtype=float)
    x, w = _gl_rule(n)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(f(nodes)).reshape(len(mid), len(x))
    return half * (vals @ w)


def adaptive_gauss(f, a, b, rel_tol, abs_tol, max_depth=14, n=12):
    """Adaptive bisection with an embedded n vs 2x(n) Gauss error estimate.

    Returns (integral, error_estimate).  The integrand is evaluated on
    batches, never one point at a time.
    """
    total = 0.0 + 0.0j
    err = 0.0
    stack = [(float(a), float(b), None, 0)]
    while stack:
        lo, hi, coarse, depth = stack.pop()
        if coarse is None:
            coarse = gauss_panel(f, lo, hi, n)
        mid = 0.5 * (lo + hi)
        left = gauss_panel(f, lo, mid, n)
        right = gauss_panel(f, mid, hi, n)
        fine = left + right
        delta = abs(fine - coarse)
        scale = max(abs(fine), 1e-300)
        if depth >= max_depth or delta <= max(abs_tol, rel_tol * scale) * 0.5:
            total += fine
            err += delta
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return total, err


def tanh_sinh(f, a, b, levels=7, t_max=3.5):
    """Double-exponential quadrature on [a, b]; tolerates endpoint cusps.

    Returns (integral, error_estimate) where the estimate is the difference
    between the last two refinement levels.
    """
    mid, half = 0.5 * (a + b), 0.5 * (b - a)

    def node_sum(t):
        u = 0.5 * np.pi * np.sinh(t)
        x = np.tanh(u)
        w = 0.5 * np.pi * np.cosh(t) / np.cosh(u) ** 2
        keep = (1.0 - np.abs(x)) > 1e-17
        if not np.any(keep):
            return 0.0
        fv = np.asarray(f(mid + half * x[keep]))
        return np.sum(fv * w[keep])

    h = 0.5
    total = node_sum(np.arange(-t_max, t_max + 1e-12, h))
    results = [h * half * total]
    for _ in range(1, levels):
        h *= 0.5
        total = total + node_sum(np.arange(-t_max + h, t_max, 2.0 * h))
        results.append(h * half * total)
    est = abs(results[-1] - results[-2]) if len(results) > 1 else abs(results[-1])
    return results[-1], est


def euler_accelerate(partial_sums):
    """Euler/van-Wijngaarden limit of an (eventually) alternating sequence.

    Repeatedly averages neighbouring partial sums; the limit is read off the
    diagonal where successive averaged tails stop changing.  Returns
    (limit, error_estimate).
    """
    s = np.asarray(partial_sums, dtype=complex)
    if s.size == 0:
        return 0.0 + 0.0j, math.inf
    if s.size < 3:
        return complex(s[-1]), abs(complex(s[-1] - s[0])) + 1e-300
    diag = [complex(s[-1])]
    row = s
    while row.size > 1:
        row = 0.5 * (row[1:] + row[:-1])
        diag.append(complex(row[-1]))
    steps = np.abs(np.diff(diag))
    best = int(np.argmin(steps)) + 1
    return diag[best], float(steps[best - 1]) + 1e-300
