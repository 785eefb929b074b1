"""Two-parameter Mittag-Leffler function E_{a,b}(z) for real a, b > 0.

Three complementary methods cover the complex plane:

* power series around the origin (small |z|),
* numerical inversion of the Laplace transform s^(a-b)/(s^a - z) along a
  parabolic contour wrapping the negative axis, with explicit residues for
  branch-point-free poles (moderate |z|),
* the algebraic large-|z| expansion plus the exponentially small/large
  saddle term where it lives on the principal sheet.

The regions overlap and are required (by the test suite) to agree; no value
is ever returned without a convergence check of the method that produced it.
All evaluators are vectorised over ``z``.
"""

from __future__ import annotations

import functools
import math

import numpy as np
from scipy.special import gamma as _gamma, rgamma as _rgamma, roots_jacobi

from .errors import PoleAtBMinusA, ToleranceNotMet

DEFAULT_TOL = 1e-10

_EPS = np.finfo(float).eps


def ml_neg_tail_coeff(a: float, b: float) -> float:
    """Leading coefficient 1/|Gamma(b-a)| of the |z| -> inf algebraic tail.

    Used only for truncation bounds, never for returned values.  Raises
    :class:`PoleAtBMinusA` when b - a is a non-positive integer (the tail
    then starts one order later and the caller must fall back).
    """
    d = b - a
    n = round(d)
    if abs(d - n) < 1e-12 and n <= 0:
        raise PoleAtBMinusA(f"b - a = {d} sits on a pole of Gamma")
    return float(1.0 / abs(_gamma(d)))


# ---------------------------------------------------------------------------
# individual methods


def _eval_series(a, b, z, tol, max_terms=600):
    """Taylor sum of the defining series; returns (values, err, ok)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    total = np.full(z.shape, _rgamma(b), dtype=complex)
    term = np.ones_like(total)
    peak = np.abs(total)
    err = np.full(z.shape, np.inf)
    small_count = np.zeros(z.shape, dtype=int)
    for k in range(1, max_terms):
        term = term * z
        contrib = term * _rgamma(b + a * k)
        total += contrib
        mag = np.abs(contrib)
        peak = np.maximum(peak, mag)
        scale = np.maximum(np.abs(total), 1e-300)
        small = mag <= 0.1 * tol * scale
        small_count = np.where(small, small_count + 1, 0)
        if np.all(small_count >= 3):
            err = mag / scale
            break
    else:
        err = np.abs(term) / np.maximum(np.abs(total), 1e-300)
    # cancellation floor: the sum is meaningless if the largest intermediate
    # term exceeds the result by ~1/eps
    cancel = peak * _EPS / np.maximum(np.abs(total), 1e-300)
    err = np.maximum(err, cancel)
    return total, err, err <= tol


def _asymptotic_exponent_mask(a, z):
    """Where the saddle term exp(z^(1/a)) lives on the principal sheet."""
    return np.abs(np.angle(z)) < a * np.pi


def _tail_envelope_factor(a, b, k):
    """Scalar bound for |1/Gamma(b-ak)|, free of the sine wiggle.

    |1/Gamma(b-ak)| = |Gamma(1+ak-b) sin(pi(b-ak))| / pi <= Gamma(1+ak-b)/pi
    once 1+ak-b > 0; for the few initial k with b-ak > 0.5 the reciprocal
    gamma itself is bounded by 1/0.8856.
    """
    x = 1.0 + a * k - b
    if x < 0.5:
        return 1.2
    return float(_gamma(x)) / math.pi


def _eval_asymptotic(a, b, z, tol, max_terms=220):
    """Algebraic descending expansion, truncated per element.

    Terms are summed while their sine-free magnitude envelope keeps
    decreasing; the envelope at the stopping index bounds the first omitted
    term and is reported as the error.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    zinv = 1.0 / z
    zmag_inv = np.abs(zinv)
    total = np.zeros(z.shape, dtype=complex)
    power = np.ones_like(total)
    env_pow = np.ones(z.shape)
    env_prev = np.full(z.shape, np.inf)
    active = np.ones(z.shape, dtype=bool)
    err = np.full(z.shape, np.inf)
    for k in range(1, max_terms):
        power = power * zinv
        env_pow = env_pow * zmag_inv
        g = _tail_envelope_factor(a, b, k)
        env = env_pow * g
        can_freeze = (1.0 + a * k - b) >= 1.5
        freeze = active & (env > env_prev) & can_freeze
        err[freeze] = env[freeze]
        active &= ~freeze
        total[active] += (-power * _rgamma(b - a * k))[active]
        err[active] = env[active]
        env_prev = env
        if np.any(active):
            scale = np.maximum(np.abs(total), 1e-300)
            settled = active & (env <= 0.005 * tol * scale)
            active &= ~settled
        if not np.any(active):
            break

    mask = _asymptotic_exponent_mask(a, z)
    if np.any(mask):
        zs = z[mask] ** (1.0 / a)
        total[mask] += np.exp(zs) * zs ** (1.0 - b) / a
    scale = np.maximum(np.abs(total), 1e-300)
    rel = err / scale
    return total, rel, rel <= tol


def _pick_parabola(cs, lam_cap):
    """Vertex parameter for the inversion parabola.

    ``cs`` are Re(sqrt(pole)) for every pole on the principal sheet; the
    contour must stay clear of each of them (|1 - c/sqrt(lam)| bounded away
    from 0) while keeping exp(lam) small enough that roundoff cannot swamp
    the trapezoid sum.
    """
    candidates = [0.35, 0.55, 0.9, 1.4, 2.2, 3.4, 5.0]
    candidates = [c for c in candidates if c <= lam_cap] or [min(0.35, lam_cap)]
    best_lam, best_d = candidates[0], -1.0
    for lam in candidates:
        if cs.size:
            d = float(np.min(np.abs(1.0 - cs / math.sqrt(lam))))
        else:
            d = 1.0
        if d > best_d:
            best_lam, best_d = lam, d
    return best_lam, min(0.85, best_d)


def _eval_contour(a, b, z, tol):
    """Laplace inversion over a parabolic contour; returns (values, err, ok).

    Splits the batch when no single parabola keeps safe distance from every
    pole of 1/(s^a - z).
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(z.shape, dtype=complex)
    err = np.empty(z.shape)

    on_sheet = _asymptotic_exponent_mask(a, z)
    poles = np.where(on_sheet, z.astype(complex) ** (1.0 / a), np.nan + 0j)
    cs = np.where(on_sheet, np.sqrt(poles).real, np.nan)

    # a floor for |E| over the batch, used to cap exp(lam) against roundoff
    scale = np.maximum(np.abs(_rgamma(b - a)) / np.maximum(np.abs(z), 1e-12),
                       np.abs(_rgamma(b - 2 * a)) / np.maximum(np.abs(z) ** 2, 1e-12))
    scale = np.maximum(scale, 1e-10)
    lam_cap = max(0.35, math.log(max(np.min(scale) * tol / (100.0 * _EPS), 2.0)))

    def run(idx):
        ci = cs[idx]
        lam, d = _pick_parabola(ci[np.isfinite(ci)], lam_cap)
        if d < 0.15 and idx.size > 1:
            # no single parabola clears every pole: split on pole position
            order = np.argsort(np.where(np.isfinite(ci), ci, -1.0))
            half = idx.size // 2
            run(idx[order[:half]])
            run(idx[order[half:]])
            return
        _contour_once(a, b, z[idx], poles[idx], lam, d, tol, out, err, idx)

    run(np.arange(z.size))
    rel = err
    return out, rel, rel <= tol


def _contour_once(a, b, zi, pi, lam, d, tol, out, err, idx):
    target = max(tol * 0.05, 5e-16)
    L = -math.log(target) + 6.0
    h = 2.0 * math.pi * d / L
    U = math.sqrt(1.0 + L / lam)

    for _ in range(3):
        n = int(math.ceil(U / h))
        u = h * np.arange(-n, n + 1)
        s = lam * (1.0 + 1j * u) ** 2
        ds = 2j * lam * (1.0 + 1j * u)
        w = np.exp(s) * s ** (a - b) * ds  # shape (nodes,)
        denom = s[None, :] ** a - zi[:, None]
        summand = w[None, :] / denom
        fine = summand.sum(axis=1) * h / (2j * np.pi)
        coarse = summand[:, ::2].sum(axis=1) * (2 * h) / (2j * np.pi)
        vals = fine
        # residues of poles enclosed between the contour and +infinity
        inside = np.isfinite(pi) & (np.sqrt(pi / lam).real > 1.0)
        if np.any(inside):
            p = pi[inside]
            vals = vals.copy()
            vals[inside] += np.exp(p) * p ** (1.0 - b) / a
        scale = np.maximum(np.abs(vals), 1e-300)
        e = np.abs(fine - coarse) / scale
        trunc = np.abs(summand[:, 0]) + np.abs(summand[:, -1])
        e = e + trunc * h / scale
        if np.all(e <= tol) or h < 1e-4:
            break
        h *= 0.5
        U *= 1.2
    out[idx] = vals
    err[idx] = e


@functools.lru_cache(maxsize=64)
def _jacobi_rule(n, b):
    x, w = roots_jacobi(n, b - 2.0, 0.0)
    return x, w


def _eval_a1(b, z, tol):
    """a = 1 exactly: exp for b = 1, else a smooth finite integral.

    E_{1,b}(z) = 1/Gamma(b) + z * E_{1,b+1}(z) and, for c > 1,
    E_{1,c}(z) = (1/Gamma(c-1)) * int_0^1 exp(z u) (1-u)^(c-2) du,
    which Gauss-Jacobi integrates without cancellation for any z.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if b == 1.0:
        vals = np.exp(z)
        return vals, np.full(z.shape, _EPS), np.ones(z.shape, dtype=bool)

    big = np.abs(z) >= max(4.0, -math.log(max(tol, 1e-15)) + 4.0)
    vals = np.empty(z.shape, dtype=complex)
    err = np.empty(z.shape)
    if np.any(big):
        v, e, ok = _eval_asymptotic(1.0, b, z[big], tol)
        vals[big], err[big] = v, e
    rest = ~big
    if np.any(rest):
        zr = z[rest]
        c = b if b > 1.0 else b + 1.0
        n = int(24 + 1.3 * float(np.max(np.abs(zr))))
        x, w = _jacobi_rule(n, c)
        x2, w2 = _jacobi_rule(n + 8, c)
        expo = np.exp(np.multiply.outer(zr, (x + 1.0) / 2.0))
        expo2 = np.exp(np.multiply.outer(zr, (x2 + 1.0) / 2.0))
        base = 2.0 ** (1.0 - c) * _rgamma(c - 1.0)
        ec = base * (expo @ w)
        ec2 = base * (expo2 @ w2)
        if b > 1.0:
            v, v2 = ec, ec2
        else:
            v = _rgamma(b) + zr * ec
            v2 = _rgamma(b) + zr * ec2
        vals[rest] = v2
        err[rest] = np.abs(v - v2) / np.maximum(np.abs(v2), 1e-300) + 4 * _EPS
    return vals, err, err <= np.maximum(tol, 4 * _EPS)


# ---------------------------------------------------------------------------
# dispatch


def ml_array(a: float, b: float, z, tol: float = DEFAULT_TOL):
    """Vectorised E_{a,b} over an array of complex ``z``.

    Raises :class:`ToleranceNotMet` if any element cannot be certified to
    the requested relative tolerance.
    """
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"need a > 0 and b > 0, got a={a}, b={b}")
    if not tol > 0.0:
        raise ValueError("tol must be > 0")
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = np.atleast_1d(z).ravel()
    out = np.empty(z.shape, dtype=complex)
    achieved = np.zeros(z.shape)

    if a > 1.0:
        zs = np.sqrt(z)
        v1 = ml_array(a / 2.0, b, zs, tol)
        v2 = ml_array(a / 2.0, b, -zs, tol)
        out = 0.5 * (v1 + v2)
        return out.reshape(shape) if shape else complex(out[0])

    if a == 1.0:
        vals, err, ok = _eval_a1(b, z, tol)
        if not np.all(ok):
            raise ToleranceNotMet(float(np.max(err)))
        out = vals
        return out.reshape(shape) if shape else complex(out[0])

    done = np.zeros(z.shape, dtype=bool)

    small = np.abs(z) <= 1.0
    if np.any(small):
        vals, err, ok = _eval_series(a, b, z[small], tol)
        out[small] = vals
        achieved[small] = err
        done[small] = ok

    r_asym = max(1.9, (-math.log(max(tol, 1e-15)) + 2.0) ** a)
    far = ~done & (np.abs(z) >= r_asym)
    if np.any(far):
        vals, err, ok = _eval_asymptotic(a, b, z[far], tol)
        idx = np.flatnonzero(far)
        out[idx[ok]] = vals[ok]
        achieved[idx[ok]] = err[ok]
        done[idx[ok]] = True

    rest = ~done
    if np.any(rest):
        vals, err, ok = _eval_contour(a, b, z[rest], tol)
        out[rest] = vals
        achieved[rest] = err
        done[rest] = ok

    if not np.all(done):
        raise ToleranceNotMet(float(np.max(achieved[~done])))
    return out.reshape(shape) if shape else complex(out[0])


def ml(a: float, b: float, z, tol: float = DEFAULT_TOL) -> complex:
    """E_{a,b}(z) for a single complex argument."""
    return complex(ml_array(a, b, np.asarray(complex(z)), tol))
