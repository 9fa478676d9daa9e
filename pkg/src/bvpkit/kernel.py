"""Green's function for u'' = -h(t) under separated boundary conditions.

The boundary conditions are

    alpha*u(0) - beta*u'(0) = 0,    gamma*u(1) + delta*u'(1) = 0,

with alpha, beta, gamma, delta >= 0 and
Gamma = gamma*beta + alpha*gamma + alpha*delta > 0.  The kernel is the
piecewise-bilinear function

    k(t, s) = (gamma + delta - gamma*t)(beta + alpha*s) / Gamma   for s <= t,
    k(t, s) = (beta + alpha*t)(gamma + delta - gamma*s) / Gamma   for s >  t.

k is continuous, non-negative and symmetric on the unit square; its
t-derivative jumps across the diagonal s = t.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGamma, DomainError, NegativeCoefficient


@dataclass(frozen=True)
class BoundaryParams:
    """Separated-BC coefficients with the normalization constant cached."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    gamma_const: float

    def __str__(self):
        return (f"BoundaryParams(alpha={self.alpha}, beta={self.beta}, "
                f"gamma={self.gamma}, delta={self.delta}, Gamma={self.gamma_const})")


def validate_params(alpha, beta, gamma, delta) -> BoundaryParams:
    """Check coefficient signs, compute Gamma and reject degenerate problems.

    Raises NegativeCoefficient if any coefficient is < 0 and DegenerateGamma
    if gamma*beta + alpha*gamma + alpha*delta <= 0 (e.g. pure Neumann).
    """
    vals = {"alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta}
    for name, v in vals.items():
        if not np.isfinite(v):
            raise NegativeCoefficient(f"{name} must be finite, got {v!r}")
        if v < 0:
            raise NegativeCoefficient(f"{name} must be >= 0, got {v!r}")
    g_const = gamma * beta + alpha * gamma + alpha * delta
    if g_const <= 0:
        raise DegenerateGamma(
            f"gamma*beta + alpha*gamma + alpha*delta = {g_const} must be > 0")
    return BoundaryParams(float(alpha), float(beta), float(gamma), float(delta),
                          float(g_const))


def _check_unit(name, x):
    if np.any(x < 0) or np.any(x > 1):
        raise DomainError(f"{name} must lie in [0, 1]")


def k_eval(p: BoundaryParams, t, s):
    """Kernel value k(t, s).  Accepts scalars or numpy arrays (broadcast)."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    _check_unit("t", t)
    _check_unit("s", s)
    lower = (p.gamma + p.delta - p.gamma * t) * (p.beta + p.alpha * s)
    upper = (p.beta + p.alpha * t) * (p.gamma + p.delta - p.gamma * s)
    out = np.where(s <= t, lower, upper) / p.gamma_const
    return out if out.ndim else float(out)


def dk_dt(p: BoundaryParams, t, s):
    """Partial derivative of the kernel in t.

    Discontinuous across s = t; the s <= t branch is used on the diagonal
    (the diagonal has measure zero in every integral the toolkit forms).
    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    _check_unit("t", t)
    _check_unit("s", s)
    lower = -p.gamma * (p.beta + p.alpha * s)
    upper = p.alpha * (p.gamma + p.delta - p.gamma * s)
    out = np.where(s <= t, lower, upper) / p.gamma_const
    return out if out.ndim else float(out)


def dk_dt_bound(p: BoundaryParams) -> float:
    """Essential bound on |dk/dt| over the unit square."""
    return max(p.gamma * (p.beta + p.alpha),
               p.alpha * (p.gamma + p.delta)) / p.gamma_const


DIRICHLET = validate_params(1.0, 0.0, 1.0, 0.0)
