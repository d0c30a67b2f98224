"""Two-parameter extended power distribution (EPD) on (0, 1].

The distribution function is

    F(t) = exp(alpha0 * log t - alpha1 * (log t)**2),    alpha0 > 0, alpha1 >= 0,

so ``alpha1 = 0`` is the power-function distribution Beta(alpha0, 1) and
``(1, 0)`` is the uniform. The support includes ``t = 1``, where the density
is finite and equal to ``alpha0``; this is what lets the family be fitted to
samples containing exact ones.

All evaluation functions take an ``EpdParams`` (or any ``(alpha0, alpha1)``
pair) and broadcast over array arguments.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._util import (
    as_float_array,
    check_order,
    check_unit_interval,
    data_values,
    scalar_or_array,
)
from .exceptions import DomainError
from .specfun import erfcx

__all__ = [
    "EpdParams",
    "Mode",
    "pdf",
    "log_pdf",
    "cdf",
    "quantile",
    "median",
    "mode",
    "sample",
    "sample_n",
    "moment",
    "mean_var",
    "neglog_transform_pdf",
    "loglik",
    "score",
    "observed_information",
]


@dataclass(frozen=True)
class EpdParams:
    """Shape pair of the two-parameter EPD."""

    alpha0: float
    alpha1: float

    def __post_init__(self):
        a0, a1 = float(self.alpha0), float(self.alpha1)
        if not (np.isfinite(a0) and np.isfinite(a1)):
            raise DomainError("EPD parameters must be finite")
        if a0 <= 0 or a1 < 0:
            raise DomainError(f"EPD requires alpha0 > 0 and alpha1 >= 0, got ({a0}, {a1})")
        object.__setattr__(self, "alpha0", a0)
        object.__setattr__(self, "alpha1", a1)

    def __iter__(self):
        return iter((self.alpha0, self.alpha1))


class Mode(NamedTuple):
    """Location of the density maximum.

    ``kind`` is ``"interior"``, ``"upper"`` (maximum at t = 1), ``"lower"``
    (density unbounded or maximal as t -> 0; ``location`` is 0) or ``"flat"``.
    """

    location: float
    kind: str


def _coerce(params):
    return params if isinstance(params, EpdParams) else EpdParams(*params)


def _exponent(a0, a1, log_p):
    # Root of a1*x**2 - a0*x + log_p = 0 lying in (-inf, 0], in rationalised form
    return 2.0 * log_p / (a0 + np.sqrt(a0 * a0 - 4.0 * a1 * log_p))


def log_pdf(params, t):
    """Log density, evaluated without forming the density."""
    a0, a1 = _coerce(params)
    L = np.log(check_unit_interval(t))
    return scalar_or_array(np.log(a0 - 2 * a1 * L) - L + (a0 * L - a1 * L**2))


def pdf(params, t):
    """Density ``(alpha0 - 2 alpha1 log t) / t * F(t)``; equals ``alpha0`` at t = 1."""
    a0, a1 = _coerce(params)
    t = check_unit_interval(t)
    L = np.log(t)
    return scalar_or_array((a0 - 2 * a1 * L) / t * np.exp(a0 * L - a1 * L**2))


def cdf(params, t):
    a0, a1 = _coerce(params)
    L = np.log(check_unit_interval(t))
    return scalar_or_array(np.exp(a0 * L - a1 * L**2))


def quantile(params, p):
    """Inverse of :func:`cdf` on (0, 1].

    For ``alpha1 > 0`` the exponent is the rationalised root
    ``2 log p / (alpha0 + sqrt(alpha0**2 - 4 alpha1 log p))``, which stays
    accurate as ``alpha1 -> 0`` and reduces exactly to ``p**(1/alpha0)``.
    """
    a0, a1 = _coerce(params)
    log_p = np.log(check_unit_interval(p, "p"))
    if a1 == 0:
        return scalar_or_array(np.exp(log_p / a0))
    return scalar_or_array(np.exp(_exponent(a0, a1, log_p)))


def median(params):
    return quantile(params, 0.5)


def mode(params):
    """Maximiser of the density over (0, 1].

    In ``v = -log t`` the log density is strictly concave with stationary
    point ``v* = (1 + sqrt(1 + 8 alpha1) - 2 alpha0) / (4 alpha1)``; when
    ``v* <= 0`` the density increases all the way to t = 1.
    """
    a0, a1 = _coerce(params)
    if a1 == 0:
        if a0 > 1:
            return Mode(1.0, "upper")
        if a0 < 1:
            return Mode(0.0, "lower")
        return Mode(1.0, "flat")
    log_m = ((2 * a0 - 1) - np.sqrt(1 + 8 * a1)) / (4 * a1)
    if log_m >= 0:
        return Mode(1.0, "upper")
    return Mode(float(np.exp(log_m)), "interior")


def sample(params, u):
    """Probability-integral transform of uniform draws ``u`` in (0, 1]."""
    return quantile(params, u)


def sample_n(params, n, seed=None):
    """Draw ``n`` variates from a ``numpy.random.default_rng(seed)`` stream."""
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    rng = np.random.default_rng(seed)
    # 1 - U maps [0, 1) onto (0, 1]
    u = 1.0 - rng.random(int(n))
    return np.asarray(quantile(params, u))


def moment(params, k):
    """Raw moment ``E[T**k]`` in closed form.

    Written with the scaled complementary error function,
    ``1 - (k/2) sqrt(pi/alpha1) erfcx((alpha0 + k) / (2 sqrt(alpha1)))``,
    which cannot overflow. For ``alpha1 = 0`` this is ``alpha0 / (alpha0 + k)``.
    """
    a0, a1 = _coerce(params)
    k = check_order(k)
    if a1 == 0:
        return a0 / (a0 + k)
    return 1.0 - 0.5 * k * np.sqrt(np.pi / a1) * erfcx((a0 + k) / (2 * np.sqrt(a1)))


def mean_var(params):
    """Mean and variance.

    With ``A = sqrt(pi/alpha1) erfcx((alpha0+1)/(2 sqrt alpha1))`` and ``B`` the
    same expression at ``alpha0 + 2``, the mean is ``1 - A/2`` and the variance
    is ``A (1 - A/4) - B``, algebraically ``E[T**2] - E[T]**2``.
    """
    a0, a1 = _coerce(params)
    if a1 == 0:
        return a0 / (a0 + 1), a0 / ((a0 + 1) ** 2 * (a0 + 2))
    c = np.sqrt(np.pi / a1)
    A = c * erfcx((a0 + 1) / (2 * np.sqrt(a1)))
    B = c * erfcx((a0 + 2) / (2 * np.sqrt(a1)))
    return 1.0 - A / 2, max(A * (1 - A / 4) - B, 0.0)


def neglog_transform_pdf(params, v):
    """Density of ``V = -log T`` (the linear failure rate distribution).

    Unlike the EPD itself, ``alpha0 = 0`` is accepted here, giving the
    Rayleigh density ``2 alpha1 v exp(-alpha1 v**2)``.
    """
    if isinstance(params, EpdParams):
        a0, a1 = params
    else:
        a0, a1 = (float(p) for p in params)
        if a0 < 0 or a1 < 0 or (a0 == 0 and a1 == 0):
            raise DomainError("transform density needs alpha0, alpha1 >= 0, not both zero")
    v = as_float_array(v, "v")
    if np.any(v < 0):
        raise DomainError("v must be nonnegative")
    return scalar_or_array((a0 + 2 * a1 * v) * np.exp(-a0 * v - a1 * v**2))


# -- likelihood ------------------------------------------------------------


def loglik(params, data):
    a0, a1 = _coerce(params)
    L = np.log(data_values(data))
    return float(
        np.sum(np.log(a0 - 2 * a1 * L)) - np.sum(L) + a0 * np.sum(L) - a1 * np.sum(L**2)
    )


def score(params, data):
    """Gradient ``(dl/dalpha0, dl/dalpha1)`` of the log-likelihood.

    Both components vanish at the same points as the textbook likelihood
    equations; the second carries the sign of the true derivative,
    ``-2 sum(log t / d) - sum(log t ** 2)``.
    """
    a0, a1 = _coerce(params)
    L = np.log(data_values(data))
    d = a0 - 2 * a1 * L
    return np.array([np.sum(1 / d) + np.sum(L), -2 * np.sum(L / d) - np.sum(L**2)])


def observed_information(params, data):
    """Negative Hessian of the log-likelihood (2 x 2, positive semidefinite)."""
    a0, a1 = _coerce(params)
    L = np.log(data_values(data))
    d2 = (a0 - 2 * a1 * L) ** 2
    off = -2 * np.sum(L / d2)
    return np.array([[np.sum(1 / d2), off], [off, 4 * np.sum(L**2 / d2)]])
