"""Parameter objects and their domain constraints.

Every evaluation route consumes one of the three value types defined here:
``DiffusionParams`` for the single-term equation, ``MultiTermParams`` for a
finite sum of space-fractional derivatives, and ``QuadratureConfig`` for the
knobs governing every numerical route.  All three are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ConstraintViolation

_BOUNDARY_EPS = 1e-12


def _diffusion_violations(mu, nu, alpha, theta, eta):
    v = []
    if not (0.0 < mu <= 1.0):
        v.append(("mu", f"0 < mu <= 1 (got {mu!r})"))
    if not (0.0 <= nu <= 1.0):
        v.append(("nu", f"0 <= nu <= 1 (got {nu!r})"))
    if not (0.0 < alpha <= 2.0):
        v.append(("alpha", f"0 < alpha <= 2 (got {alpha!r})"))
    else:
        lim = min(alpha, 2.0 - alpha)
        if not (abs(theta) <= lim):
            v.append(("theta", f"|theta| <= min(alpha, 2-alpha) = {lim} (got {theta!r})"))
    if not (eta > 0.0):
        v.append(("eta", f"eta > 0 (got {eta!r})"))
    for name, x in (("mu", mu), ("nu", nu), ("alpha", alpha), ("theta", theta), ("eta", eta)):
        if not math.isfinite(x):
            v.append((name, "must be finite"))
    return v


@dataclass(frozen=True)
class DiffusionParams:
    """The five-tuple (mu, nu, alpha, theta, eta) with its domain constraints.

    mu : time-derivative order, 0 < mu <= 1 (mu=1 is the classical limit)
    nu : interpolation type of the composite time derivative, 0 <= nu <= 1
    alpha : space order, 0 < alpha <= 2
    theta : asymmetry, |theta| <= min(alpha, 2-alpha)
    eta : diffusion constant > 0, units length^alpha / time^mu
    """

    mu: float
    nu: float
    alpha: float
    theta: float
    eta: float

    def __post_init__(self):
        violations = _diffusion_violations(self.mu, self.nu, self.alpha, self.theta, self.eta)
        if violations:
            raise ConstraintViolation(violations)

    @property
    def rho(self) -> float:
        """(alpha - theta) / (2 alpha); lies in [0, 1/alpha]."""
        return (self.alpha - self.theta) / (2.0 * self.alpha)

    @property
    def is_boundary(self) -> bool:
        """True when rho degenerates to 0 or 1/alpha (theta = alpha or alpha-2).

        Accepted by validation, but individual routes may refuse such
        parameter sets instead of returning garbage.
        """
        return (abs(self.theta - self.alpha) <= _BOUNDARY_EPS
                or abs(self.theta - (self.alpha - 2.0)) <= _BOUNDARY_EPS)

    def reflected(self) -> "DiffusionParams":
        """Parameters of the mirrored kernel: G(x; theta) = G(-x; -theta)."""
        return DiffusionParams(self.mu, self.nu, self.alpha, -self.theta, self.eta)

    def to_dict(self):
        return {"mu": self.mu, "nu": self.nu, "alpha": self.alpha,
                "theta": self.theta, "eta": self.eta}


def validate(mu, nu, alpha, theta, eta) -> DiffusionParams:
    """Validate five raw reals; reports every violated constraint at once."""
    return DiffusionParams(float(mu), float(nu), float(alpha), float(theta), float(eta))


def order_weight(p) -> float:
    """The composite order mu + nu(1-mu) of the initial-value kernel.

    Computed so the Caputo case nu=1 yields exactly 1.0 and the
    Riemann-Liouville case nu=0 yields exactly mu (no rounding residue).
    """
    if p.nu == 1.0:
        return 1.0
    if p.nu == 0.0:
        return p.mu
    return p.mu + p.nu * (1.0 - p.mu)


def time_exponent(p) -> float:
    """Exponent of the t-prefactor of the initial-value kernel: mu + nu(1-mu) - 1."""
    return order_weight(p) - 1.0


@dataclass(frozen=True)
class Term:
    """One space-derivative term (eta_j, alpha_j, theta_j) of the multi-term equation."""

    eta: float
    alpha: float
    theta: float


@dataclass(frozen=True)
class MultiTermParams:
    """(mu, nu) plus m >= 1 space-derivative terms."""

    mu: float
    nu: float
    terms: tuple

    def __post_init__(self):
        violations = []
        if not (0.0 < self.mu <= 1.0):
            violations.append(("mu", f"0 < mu <= 1 (got {self.mu!r})"))
        if not (0.0 <= self.nu <= 1.0):
            violations.append(("nu", f"0 <= nu <= 1 (got {self.nu!r})"))
        terms = tuple(t if isinstance(t, Term) else Term(*t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        if len(terms) < 1:
            violations.append(("terms", "at least one term required"))
        for j, t in enumerate(terms):
            if not (0.0 < t.alpha <= 2.0):
                violations.append((f"terms[{j}].alpha", f"0 < alpha <= 2 (got {t.alpha!r})"))
            else:
                lim = min(t.alpha, 2.0 - t.alpha)
                if not (abs(t.theta) <= lim):
                    violations.append((f"terms[{j}].theta",
                                       f"|theta| <= min(alpha, 2-alpha) = {lim} (got {t.theta!r})"))
            if not (t.eta > 0.0):
                violations.append((f"terms[{j}].eta", f"eta > 0 (got {t.eta!r})"))
        if violations:
            raise ConstraintViolation(violations)

    @property
    def m(self) -> int:
        return len(self.terms)

    def to_single(self) -> DiffusionParams:
        """Lossless conversion for m = 1."""
        if self.m != 1:
            raise ValueError("only m=1 converts to DiffusionParams")
        t = self.terms[0]
        return DiffusionParams(self.mu, self.nu, t.alpha, t.theta, t.eta)

    @classmethod
    def from_single(cls, p: DiffusionParams) -> "MultiTermParams":
        return cls(p.mu, p.nu, (Term(p.eta, p.alpha, p.theta),))

    def to_dict(self):
        return {"mu": self.mu, "nu": self.nu,
                "terms": [{"eta": t.eta, "alpha": t.alpha, "theta": t.theta}
                          for t in self.terms]}


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation knobs shared by every integral route.

    contour_abscissa / contour_height override the Mellin-Barnes defaults
    (None means: derive from the parameters and tolerances).
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    k_max: float = 1e7
    max_panels: int = 4000
    contour_abscissa: float | None = None
    contour_height: float | None = None
    series_max_terms: int = 400

    def __post_init__(self):
        violations = []
        if not (self.rel_tol > 0.0):
            violations.append(("rel_tol", "must be > 0"))
        if not (self.abs_tol > 0.0):
            violations.append(("abs_tol", "must be > 0"))
        if not (self.k_max > 0.0):
            violations.append(("k_max", "must be > 0"))
        if self.max_panels < 1:
            violations.append(("max_panels", "must be >= 1"))
        if self.series_max_terms < 1:
            violations.append(("series_max_terms", "must be >= 1"))
        if violations:
            raise ConstraintViolation(violations)


def params_to_json(p, **dump_kwargs) -> str:
    """Canonical JSON encoding consumed by the CLI."""
    return json.dumps(p.to_dict(), **dump_kwargs)


def params_from_dict(d):
    """Decode either parameter object from its canonical dict form."""
    if "terms" in d:
        terms = tuple(Term(float(t["eta"]), float(t["alpha"]), float(t["theta"]))
                      for t in d["terms"])
        return MultiTermParams(float(d["mu"]), float(d["nu"]), terms)
    return DiffusionParams(float(d["mu"]), float(d["nu"]), float(d["alpha"]),
                           float(d["theta"]), float(d["eta"]))


def params_from_json(text: str):
    return params_from_dict(json.loads(text))
