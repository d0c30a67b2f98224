"""Generalised (r-parameter) extended power distribution.

With ``v = -log t`` and ``P(v) = sum_h alpha_{h-1} v**h`` the distribution
function is ``F(t) = exp(-P(v))`` and the density is ``P'(v) exp(-P(v)) / t``.
Nonnegative coefficients make ``P`` strictly increasing on ``[0, inf)``, so
inversion reduces to finding the unique nonnegative root of ``P(v) = -log u``.
Coefficients ``(alpha0, alpha1, 0, ..., 0)`` reproduce the two-parameter family.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import epd2
from ._util import check_order, check_unit_interval, data_values, scalar_or_array
from .exceptions import DomainError, NumericalError

__all__ = [
    "GepdParams",
    "pdf",
    "log_pdf",
    "cdf",
    "sample_from_u",
    "sample_n",
    "median",
    "moment_numeric",
    "loglik",
    "score",
    "hessian",
]

ROOT_TOL = 1e-12
ROOT_MAXITER = 200


@dataclass(frozen=True)
class GepdParams:
    """Coefficient vector ``(alpha0, ..., alpha_{r-1})``; all >= 0, not all 0."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(a) for a in np.atleast_1d(self.coeffs))
        if not c:
            raise DomainError("at least one coefficient is required")
        if not all(np.isfinite(a) for a in c):
            raise DomainError("coefficients must be finite")
        if any(a < 0 for a in c) or not any(a > 0 for a in c):
            raise DomainError(f"coefficients must be >= 0 and not all zero, got {c}")
        object.__setattr__(self, "coeffs", c)

    @property
    def r(self):
        return len(self.coeffs)

    @property
    def degree(self):
        """Degree of ``P`` once trailing zero coefficients are dropped."""
        return max(h + 1 for h, a in enumerate(self.coeffs) if a > 0)

    def __iter__(self):
        return iter(self.coeffs)


def _coerce(params):
    if isinstance(params, GepdParams):
        return params
    if isinstance(params, epd2.EpdParams):
        return GepdParams(tuple(params))
    return GepdParams(tuple(params))


def _poly(coeffs, v):
    """``P(v)`` summed term by term so trailing zeros do not change rounding."""
    acc = 0.0
    for h, a in enumerate(coeffs, start=1):
        acc = acc + a * v**h
    return acc


def _dpoly(coeffs, v):
    acc = 0.0
    for h, a in enumerate(coeffs, start=1):
        acc = acc + h * a * v ** (h - 1)
    return acc


def pdf(params, t):
    c = _coerce(params).coeffs
    t = check_unit_interval(t)
    v = -np.log(t)
    return scalar_or_array(_dpoly(c, v) / t * np.exp(-_poly(c, v)))


def log_pdf(params, t):
    c = _coerce(params).coeffs
    v = -np.log(check_unit_interval(t))
    with np.errstate(divide="ignore"):
        return scalar_or_array(np.log(_dpoly(c, v)) + v - _poly(c, v))


def cdf(params, t):
    c = _coerce(params).coeffs
    v = -np.log(check_unit_interval(t))
    return scalar_or_array(np.exp(-_poly(c, v)))


def _solve_poly(coeffs, target):
    """Vectorised nonnegative root of ``P(v) = target`` (target >= 0).

    Bracketed Newton: the bracket ``[0, hi]`` is grown by doubling until
    ``P(hi) >= target``; Newton steps that leave the bracket fall back to
    bisection.
    """
    target = np.asarray(target, dtype=float)
    lo = np.zeros_like(target)
    hi = np.ones_like(target)
    for _ in range(2000):
        short = _poly(coeffs, hi) < target
        if not np.any(short):
            break
        hi = np.where(short, 2 * hi, hi)
        lo = np.where(short, hi / 2, lo)
    else:
        raise NumericalError("could not bracket polynomial root")

    v = 0.5 * (lo + hi)
    done = target == 0
    v = np.where(done, 0.0, v)
    for _ in range(ROOT_MAXITER):
        f = _poly(coeffs, v) - target
        lo = np.where(f < 0, v, lo)
        hi = np.where(f > 0, v, hi)
        df = _dpoly(coeffs, v)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = v - f / df
        ok = (newton > lo) & (newton < hi) & np.isfinite(newton)
        new_v = np.where(ok, newton, 0.5 * (lo + hi))
        new_v = np.where(done | (f == 0), v, new_v)
        step = np.abs(new_v - v)
        v = new_v
        done = done | (f == 0) | (step <= ROOT_TOL * np.maximum(1.0, v)) | (hi - lo <= ROOT_TOL * np.maximum(1.0, v))
        if np.all(done):
            return v
    raise NumericalError(
        "polynomial root did not converge",
        {"max_bracket": float(np.max(hi - lo))},
    )


def sample_from_u(params, u):
    """Map uniform draws ``u`` in (0, 1] to variates ``exp(-v*)``.

    When only the first two coefficients are nonzero the quadratic is solved
    in closed form, so results agree exactly with :func:`epd2.quantile`.
    """
    p = _coerce(params)
    u = check_unit_interval(u, "u")
    c = p.coeffs
    if p.degree <= 2 and c[0] > 0:
        a1 = c[1] if len(c) > 1 else 0.0
        return epd2.quantile((c[0], a1), u)
    v = _solve_poly(c, -np.log(u))
    return scalar_or_array(np.exp(-v))


def sample_n(params, n, seed=None):
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    rng = np.random.default_rng(seed)
    u = 1.0 - rng.random(int(n))
    return np.asarray(sample_from_u(params, u))


def median(params):
    return sample_from_u(params, 0.5)


def moment_numeric(params, k, full_output=False):
    """``E[T**k]`` by adaptive quadrature.

    Integration by parts gives ``E[T**k] = 1 - k * int_0^inf exp(-k v - P(v)) dv``;
    the integrand is smooth and decays at least like ``exp(-k v)``. Returns the
    value, or ``(value, abserr)`` with ``full_output``.
    """
    c = _coerce(params).coeffs
    k = check_order(k)

    def g(v):
        return np.exp(-k * v - _poly(c, v))

    # exp(-k v - P(v)) <= exp(-k v) < 1e-18 beyond this point
    v_max = 18 * np.log(10) / k
    val, err = integrate.quad(g, 0.0, v_max, epsabs=1e-13, epsrel=1e-12, limit=200)
    if err > 1e-9:
        raise NumericalError(
            "moment quadrature did not converge", {"estimate": val, "abserr": err}
        )
    out = 1.0 - k * val
    return (out, k * err) if full_output else out


# -- likelihood ------------------------------------------------------------


def _likelihood_terms(c, t):
    L = np.log(t)
    h = np.arange(1, len(c) + 1)
    # basis[i, h-1] = h (-1)^(h-1) L_i^(h-1) = h v_i^(h-1)
    basis = h * (-L[:, None]) ** (h - 1)
    D = basis @ np.asarray(c)
    return L, basis, D


def _check_positive(D):
    if np.any(D <= 0):
        raise DomainError(
            "density vanishes at a data point (alpha0 = 0 with observations equal to 1?)"
        )


def loglik(params, data):
    c = _coerce(params).coeffs
    t = data_values(data)
    L, _, D = _likelihood_terms(c, t)
    _check_positive(D)
    total = np.sum(np.log(D)) - np.sum(L)
    for h, a in enumerate(c, start=1):
        total += (-1) ** (h - 1) * a * np.sum(L**h)
    return float(total)


def score(params, data):
    c = _coerce(params).coeffs
    t = data_values(data)
    L, basis, D = _likelihood_terms(c, t)
    _check_positive(D)
    h = np.arange(1, len(c) + 1)
    lin = np.array([(-1) ** (j - 1) * np.sum(L**j) for j in h])
    return (basis / D[:, None]).sum(axis=0) + lin


def hessian(params, data):
    """Second derivatives ``-sum_i h k v_i^(h+k-2) / D_i**2`` (negative semidefinite)."""
    c = _coerce(params).coeffs
    t = data_values(data)
    _, basis, D = _likelihood_terms(c, t)
    _check_positive(D)
    w = basis / D[:, None]
    return -(w.T @ w)
