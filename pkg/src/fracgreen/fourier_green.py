"""Green functions by direct quadrature of the inverse Fourier integral.

The initial-value kernel is

    G1(x,t) = t^(w-1)/(2 pi) * int exp(-ikx) E_{mu,w}(-t^mu S(k)) dk,
    w = mu + nu(1-mu),

and the source kernel G2 is the same integral with E_{mu,mu} and no time
prefactor; S(k) is the (possibly aggregated) space symbol.  This route is
the reference the series and Mellin-Barnes routes are validated against.

The half-line fold 2*Re int_0^inf is used by default (the symbol obeys
S(-k) = conj S(k), making the full integral real by construction); a
verification mode assembles both half-lines independently and raises
:class:`ImaginaryResidueTooLarge` if they fail to cancel.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np

from .errors import (
    DivergentAtOrigin,
    ImaginaryResidueTooLarge,
    PoleAtBMinusA,
    ToleranceNotMet,
    UnsupportedAtBoundary,
)
from .mittag_leffler import ml_array, ml_neg_tail_coeff
from .params import DiffusionParams, MultiTermParams, QuadratureConfig, order_weight
from .quadrature import euler_accelerate, gauss_panels, tanh_sinh
from .symbols import psi, psi_multi


class GreenKind(enum.Enum):
    """Which kernel: delta initial data (G1) or instantaneous source (G2)."""

    G1_INITIAL = "g1"
    G2_SOURCE = "g2"


class GreenValue(NamedTuple):
    value: float
    err_est: float


class GreenResult(NamedTuple):
    """Grid entry: value/err plus the per-point failure, if any."""

    value: float
    err_est: float
    failure: Exception | None = None


_BLOCK = 16  # oscillatory panels per Mittag-Leffler batch


def _symbol_info(p):
    """(S(k) callable, alpha_max, decay onset scale, boundary flag)."""
    if isinstance(p, MultiTermParams):
        terms = p.terms
        sym = lambda k: psi_multi(p, k)  # noqa: E731
        alpha_max = max(t.alpha for t in terms)
        k_ref = min((1.0 / t.eta) ** (1.0 / t.alpha) for t in terms)
        degenerate = all(abs(abs(t.theta) - 1.0) < 1e-14 for t in terms)
    else:
        sym = lambda k: p.eta * psi(p.alpha, p.theta, k)  # noqa: E731
        alpha_max = p.alpha
        k_ref = (1.0 / p.eta) ** (1.0 / p.alpha)
        degenerate = abs(abs(p.theta) - 1.0) < 1e-14
    return sym, alpha_max, k_ref, degenerate


def _tail_envelope(p, a, b, t, k):
    """Analytic magnitude bound for E(-t^a S(k)) at large k (single term)."""
    if isinstance(p, MultiTermParams):
        return None
    scale = p.eta * t ** a * k ** p.alpha
    try:
        return ml_neg_tail_coeff(a, b) / scale
    except PoleAtBMinusA:
        try:
            return ml_neg_tail_coeff(a, b - a) / scale ** 2  # next order 1/|Gamma(b-2a)|
        except PoleAtBMinusA:
            return None


def _half_line(p, a, b, x, t, cfg, tol_ml):
    """int_0^inf exp(-ikx) E_{a,b}(-t^a S(k)) dk with an error estimate."""
    sym, alpha_max, k_ref, degenerate = _symbol_info(p)
    if a == 1.0 and degenerate:
        raise UnsupportedAtBoundary(
            "mu=1 with |theta|=1: the symbol has no decaying real part")
    ta = t ** a

    def integrand(k):
        vals = ml_array(a, b, -ta * np.asarray(sym(k)), tol_ml)
        if x != 0.0:
            vals = vals * np.exp(-1j * k * x)
        return vals

    # scale of |z|=3 decay onset for the head region
    k3 = k_ref * 3.0 ** (1.0 / alpha_max) / max(ta, 1e-300) ** (1.0 / alpha_max)

    x_abs = abs(x)
    if x_abs == 0.0:
        return _half_line_origin(integrand, alpha_max, k3, p, a, b, t, cfg, tol_ml)

    k_c = 0.5 * math.pi / x_abs
    total = 0.0 + 0.0j
    err = 0.0

    # head: [0, min(k_c, k3)] by double-exponential (absorbs the k^alpha cusp)
    k_head = min(k_c, k3)
    levels = 8 if alpha_max >= 0.5 else 9
    v, e = tanh_sinh(integrand, 0.0, k_head, levels=levels,
                     t_max=max(3.5, math.asinh(80.0 / (math.pi * min(alpha_max, 1.0)))))
    total += v
    err += e

    # bridge: [k3 < k_c only] log panels up to the first oscillation boundary
    if k_head < k_c:
        edges = [k_head]
        while edges[-1] < k_c:
            edges.append(min(2.0 * edges[-1], k_c))
        total += np.sum(gauss_panels(integrand, np.array(edges), n=16))
        err += 1e-16 * abs(total)

    # oscillatory stage: pi/|x| panels, Euler-accelerated partial sums
    target = max(cfg.abs_tol, cfg.rel_tol * abs(total))
    width = math.pi / x_abs
    sums = []
    running = total
    mag_scale = abs(total)
    k_lo = k_c
    n_blocks = max(1, cfg.max_panels // _BLOCK)
    for blk in range(n_blocks):
        edges = k_lo + width * np.arange(_BLOCK + 1)
        vals = gauss_panels(integrand, edges, n=12)
        for pv in vals:
            running = running + pv
            sums.append(running)
        mag_scale = max(mag_scale, abs(running))
        k_lo = edges[-1]
        accel, a_err = euler_accelerate(np.asarray(sums))
        env = _tail_envelope(p, a, b, t, k_lo)
        if env is None:
            last = integrand(np.array([k_lo]))
            env = abs(last[0])
        tail_bound = 2.0 * env / x_abs
        floor = mag_scale * (4e-16 + 0.5 * tol_ml)
        if (a_err + err) <= target and blk >= 1:
            return accel, err + a_err + min(tail_bound, a_err) + floor
        if k_lo > cfg.k_max:
            break
    accel, a_err = euler_accelerate(np.asarray(sums))
    achieved = err + a_err + mag_scale * (4e-16 + 0.5 * tol_ml)
    if achieved > 4.0 * max(cfg.abs_tol, cfg.rel_tol * abs(accel)):
        raise ToleranceNotMet(achieved, "oscillatory panel budget exhausted")
    return accel, achieved


def _half_line_origin(integrand, alpha_max, k3, p, a, b, t, cfg, tol_ml):
    """x = 0: no oscillation, algebraic tail integrated analytically."""
    if alpha_max <= 1.0:
        raise DivergentAtOrigin(
            f"kernel tail ~ k^-{alpha_max} is not integrable at x=0 for alpha <= 1")
    v, e = tanh_sinh(integrand, 0.0, k3, levels=8,
                     t_max=max(3.5, math.asinh(80.0 / (math.pi * min(alpha_max, 1.0)))))
    total = v
    err = e

    single = not isinstance(p, MultiTermParams)
    K = k3
    panel_vals = []
    for j in range(200):
        K2 = 2.0 * K
        pv = np.sum(gauss_panels(integrand, np.array([K, K2]), n=24))
        panel_vals.append(pv)
        total += pv
        K = K2
        target = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        floor = abs(total) * (4e-16 + 0.5 * tol_ml)
        if single and p.eta * t ** a * K ** p.alpha > 40.0:
            tail, tail_err = _algebraic_tail(p, a, b, t, K)
            if tail is not None and tail_err < target:
                return total + tail, err + tail_err + floor
        if len(panel_vals) >= 3:
            r = abs(panel_vals[-1]) / max(abs(panel_vals[-2]), 1e-300)
            if r < 0.95:
                geom = abs(panel_vals[-1]) * r / (1.0 - r)
                if geom < 0.5 * target:
                    return total + panel_vals[-1] * r / (1.0 - r), err + geom + floor
        if K > cfg.k_max:
            break
    raise ToleranceNotMet(abs(panel_vals[-1]) if panel_vals else math.inf,
                          "x=0 tail did not settle within k_max")


def _algebraic_tail(p, a, b, t, K):
    """int_K^inf of the large-k expansion of E(-eta t^a psi(k)), term by term."""
    from scipy.special import rgamma
    c = p.eta * t ** a
    phase = np.exp(0.5j * np.pi * p.theta)
    tail = 0.0 + 0.0j
    prev_mag = math.inf
    for j in (1, 2, 3):
        expo = p.alpha * j
        if expo <= 1.0:
            return None, math.inf
        coeff = -((-1.0) ** j) * rgamma(b - a * j) * (c * phase) ** (-j)
        term = coeff * K ** (1.0 - expo) / (expo - 1.0)
        mag = abs(term)
        if mag > prev_mag:
            break
        tail += term
        prev_mag = mag
    return tail, prev_mag


def _point(p, kind, x, t, cfg, check_conjugation):
    if t <= 0.0:
        raise ValueError("t must be > 0")
    a = p.mu
    b = order_weight(p) if kind is GreenKind.G1_INITIAL else p.mu
    pref = t ** (order_weight(p) - 1.0) if kind is GreenKind.G1_INITIAL else 1.0
    tol_ml = max(1e-13, min(1e-9, 0.02 * cfg.rel_tol))

    half, err = _half_line(p, a, b, x, t, cfg, tol_ml)
    if check_conjugation:
        if isinstance(p, MultiTermParams):
            refl = MultiTermParams(p.mu, p.nu,
                                   tuple((tt.eta, tt.alpha, -tt.theta) for tt in p.terms))
        else:
            refl = p.reflected()
        other, err2 = _half_line(refl, a, b, -x, t, cfg, tol_ml)
        assembled = half + other
        resid = abs(assembled.imag) * pref
        limit = 10.0 * cfg.abs_tol
        if resid > limit:
            raise ImaginaryResidueTooLarge(resid, limit)
        value = pref * assembled.real / (2.0 * math.pi)
        return GreenValue(float(value), float(pref * (err + err2) / (2.0 * math.pi)))
    value = pref * half.real / math.pi
    return GreenValue(float(value), float(pref * err / math.pi))


def green_point(p: DiffusionParams, kind: GreenKind, x: float, t: float,
                cfg: QuadratureConfig = QuadratureConfig(),
                check_conjugation: bool = False) -> GreenValue:
    """Kernel value at one (x, t) with a quadrature error estimate."""
    return _point(p, kind, float(x), float(t), cfg, check_conjugation)


def green_point_multi(p: MultiTermParams, kind: GreenKind, x: float, t: float,
                      cfg: QuadratureConfig = QuadratureConfig(),
                      check_conjugation: bool = False) -> GreenValue:
    """Multi-term kernel value: the aggregated symbol replaces eta*psi."""
    return _point(p, kind, float(x), float(t), cfg, check_conjugation)


def green_grid(p, kind: GreenKind, xs, t: float,
               cfg: QuadratureConfig = QuadratureConfig(),
               workers: int = 1) -> list[GreenResult]:
    """Pointwise kernel over an increasing grid.

    Per-point failures are captured in the result entries instead of
    aborting the remaining points; evaluation order never affects values.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or np.any(np.diff(xs) <= 0):
        raise ValueError("xs must be strictly increasing")
    point = green_point_multi if isinstance(p, MultiTermParams) else green_point

    def one(xv):
        try:
            v = point(p, kind, xv, t, cfg)
            return GreenResult(v.value, v.err_est, None)
        except Exception as exc:  # per-point isolation is the contract
            return GreenResult(math.nan, math.inf, exc)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, xs))
    return [one(xv) for xv in xs]
