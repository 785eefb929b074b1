"""Full initial-value/source solutions on a periodic truncation of the line.

The solution is assembled in Fourier space,

    N*(k,t) = N0*(k) t^(w-1) E_{mu,w}(-t^mu S(k))
              + int_0^t phi*(k, t-xi) xi^(mu-1) E_{mu,mu}(-S(k) xi^mu) dxi,

with discrete transforms on a uniform grid and Gauss-Jacobi quadrature in
xi absorbing the xi^(mu-1) weight.  The x-space form of the same solution
(kernel convolution) is provided separately; the two must agree, which is
the route-equivalence contract the tests enforce.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

from .errors import BoundaryLeak, ImaginaryResidueTooLarge
from .fourier_green import GreenKind, green_grid
from .mittag_leffler import ml_array
from .params import DiffusionParams, MultiTermParams, QuadratureConfig, order_weight
from .symbols import psi, psi_multi


@dataclass(frozen=True)
class SampledField:
    """Real-valued function sampled on a uniform grid [x0, x0 + n dx)."""

    x0: float
    dx: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if self.dx <= 0.0:
            raise ValueError("dx must be > 0")
        if vals.ndim != 1 or vals.size < 8:
            raise ValueError("values must be a 1-D array with at least 8 samples")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def xs(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    def mass(self) -> float:
        return float(self.dx * self.values.sum())

    # -- serialization ----------------------------------------------------
    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,value\n")
        for x, v in zip(self.xs, self.values):
            buf.write(f"{x:.17g},{v:.17g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SampledField":
        rows = [ln for ln in text.strip().splitlines() if ln]
        if not rows or rows[0].strip().lower() != "x,value":
            raise ValueError('expected a CSV with header "x,value"')
        xs, vs = [], []
        for ln in rows[1:]:
            a, b = ln.split(",")
            xs.append(float(a))
            vs.append(float(b))
        xs = np.asarray(xs)
        dx = float(np.mean(np.diff(xs)))
        if not np.allclose(np.diff(xs), dx, rtol=1e-9, atol=1e-12 * max(1.0, abs(dx))):
            raise ValueError("grid is not uniform")
        return cls(float(xs[0]), dx, np.asarray(vs))

    def to_json(self) -> str:
        return json.dumps({"x0": self.x0, "dx": self.dx,
                           "values": [float(v) for v in self.values]})

    @classmethod
    def from_json(cls, text: str) -> "SampledField":
        d = json.loads(text)
        return cls(float(d["x0"]), float(d["dx"]), np.asarray(d["values"], dtype=float))


@dataclass(frozen=True)
class SourceField:
    """Time-stamped stack of source slices phi(x, t_i) on one shared grid."""

    times: np.ndarray
    slices: tuple

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "slices", tuple(self.slices))
        if times.ndim != 1 or times.size != len(self.slices):
            raise ValueError("one slice per time stamp required")
        if np.any(np.diff(times) <= 0) or np.any(times < 0):
            raise ValueError("times must be strictly increasing and >= 0")
        first = self.slices[0]
        for s in self.slices:
            if s.n != first.n or s.x0 != first.x0 or s.dx != first.dx:
                raise ValueError("all slices must share one grid")

    def interp(self, tau: float) -> np.ndarray:
        """Linear interpolation between slices in physical space."""
        times = self.times
        if tau <= times[0]:
            return self.slices[0].values
        if tau >= times[-1]:
            return self.slices[-1].values
        i = int(np.searchsorted(times, tau))
        w = (tau - times[i - 1]) / (times[i] - times[i - 1])
        return (1.0 - w) * self.slices[i - 1].values + w * self.slices[i].values

    def to_json(self) -> str:
        return json.dumps({
            "times": [float(t) for t in self.times],
            "slices": [{"x0": s.x0, "dx": s.dx, "values": [float(v) for v in s.values]}
                       for s in self.slices]})

    @classmethod
    def from_json(cls, text: str) -> "SourceField":
        d = json.loads(text)
        slices = tuple(SampledField(float(s["x0"]), float(s["dx"]),
                                    np.asarray(s["values"], dtype=float))
                       for s in d["slices"])
        return cls(np.asarray(d["times"], dtype=float), slices)


def delta_field(x0: float, dx: float, n: int, at: float = 0.0) -> SampledField:
    """Discrete delta: a single node of height 1/dx (unit discrete mass)."""
    values = np.zeros(n)
    j = int(round((at - x0) / dx))
    if not 0 <= j < n:
        raise ValueError("delta position outside the grid")
    values[j] = 1.0 / dx
    return SampledField(x0, dx, values)


def _normalize_params(p):
    if isinstance(p, MultiTermParams):
        if p.m == 1:
            return p.to_single()
        return p
    return p


def _symbol_on_grid(p, k):
    if isinstance(p, MultiTermParams):
        return psi_multi(p, k)
    return p.eta * psi(p.alpha, p.theta, k)


def _source_nodes(mu, t, rel_tol):
    n = int(min(64, max(16, 10 + 4 * math.log10(1.0 / rel_tol))))
    x, wgt = roots_jacobi(n, 0.0, mu - 1.0)
    xi = 0.5 * t * (1.0 + x)
    weights = (0.5 * t) ** mu * wgt
    return xi, weights


def solve(p, n0: SampledField, phi: SourceField | None, t: float,
          cfg: QuadratureConfig = QuadratureConfig()) -> SampledField:
    """Solution N(., t) on the grid of ``n0``; see the module formula.

    Raises :class:`BoundaryLeak` when the result has not decayed at the
    outermost 2% of the grid (periodic aliasing would then pollute the
    interior) and :class:`ImaginaryResidueTooLarge` if the spectral
    assembly fails to produce a real field.
    """
    p = _normalize_params(p)
    if t <= 0.0:
        raise ValueError("t must be > 0")
    mu = p.mu
    w = 1.0 if p.nu == 1.0 else mu + p.nu * (1.0 - mu)
    tol_ml = max(1e-13, min(1e-9, 0.02 * cfg.rel_tol))

    k = 2.0 * np.pi * np.fft.fftfreq(n0.n, d=n0.dx)
    S = _symbol_on_grid(p, k)

    kernel = t ** (w - 1.0) * ml_array(mu, w, -(t ** mu) * S, tol_ml)
    spec = np.fft.ifft(n0.values) * kernel

    if phi is not None:
        if phi.slices[0].n != n0.n or phi.slices[0].dx != n0.dx or phi.slices[0].x0 != n0.x0:
            raise ValueError("phi must share the grid of n0")
        if phi.times[0] > 1e-12 or phi.times[-1] < t - 1e-12:
            raise ValueError("phi time range must cover [0, t]")
        xi, wgt = _source_nodes(mu, t, cfg.rel_tol)
        for xi_i, w_i in zip(xi, wgt):
            phi_hat = np.fft.ifft(phi.interp(t - xi_i))
            spec += w_i * ml_array(mu, mu, -(xi_i ** mu) * S, tol_ml) * phi_hat

    field = np.fft.fft(spec)
    resid = float(np.max(np.abs(field.imag)))
    limit = 10.0 * cfg.abs_tol
    if resid > limit:
        raise ImaginaryResidueTooLarge(resid, limit)
    values = field.real

    edge = max(1, int(0.02 * n0.n))
    leak = float(max(np.max(np.abs(values[:edge])), np.max(np.abs(values[-edge:]))))
    if leak > 100.0 * cfg.abs_tol:
        raise BoundaryLeak(leak, 100.0 * cfg.abs_tol)
    return SampledField(n0.x0, n0.dx, values)


def convolve_green(p, n0: SampledField, t: float,
                   cfg: QuadratureConfig = QuadratureConfig(),
                   workers: int = 1) -> SampledField:
    """x-space route: circular convolution of the sampled kernel with n0.

    Must equal :func:`solve` without a source to combined tolerance; this
    is the two-route identity behind the solution formula.
    """
    p = _normalize_params(p)
    n = n0.n
    offsets = n0.dx * np.concatenate([np.arange(0, n // 2 + 1),
                                      np.arange(n // 2 + 1 - n, 0)])
    order = np.argsort(offsets)
    results = green_grid(p, GreenKind.G1_INITIAL, offsets[order], t, cfg,
                         workers=workers)
    g = np.empty(n)
    for pos, res in zip(order, results):
        if res.failure is not None:
            raise res.failure
        g[pos] = res.value
    conv = np.fft.ifft(np.fft.fft(g) * np.fft.fft(n0.values)).real * n0.dx
    return SampledField(n0.x0, n0.dx, conv)
