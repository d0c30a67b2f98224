"""Kumaraswamy distribution, the baseline the EPD family is compared against.

Density ``a b t**(a-1) (1 - t**a)**(b-1)`` on (0, 1). At t = 1 the density is
0 for ``b > 1`` and infinite for ``b < 1``; only ``b = 1`` (the power-function
distribution) has a finite positive value there. A sample containing exact
ones therefore has an undefined likelihood for every other ``b``.
"""

from dataclasses import dataclass

import numpy as np

from ._util import check_unit_interval, data_values, scalar_or_array
from .exceptions import DomainError, InapplicableModelError

__all__ = [
    "KumaraswamyParams",
    "pdf",
    "log_pdf",
    "cdf",
    "quantile",
    "sample_from_u",
    "sample_n",
    "loglik",
    "score",
]


@dataclass(frozen=True)
class KumaraswamyParams:
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (np.isfinite(a) and np.isfinite(b)) or a <= 0 or b <= 0:
            raise DomainError(f"Kumaraswamy requires a > 0 and b > 0, got ({a}, {b})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __iter__(self):
        return iter((self.a, self.b))


def _coerce(params):
    return params if isinstance(params, KumaraswamyParams) else KumaraswamyParams(*params)


def _check_support(t, b):
    t = check_unit_interval(t)
    if b != 1 and np.any(t == 1):
        raise DomainError(
            "Kumaraswamy density at t = 1 is 0 or infinite unless b = 1; "
            "log-likelihood function undefined at t = 1"
        )
    return t


def log_pdf(params, t):
    a, b = _coerce(params)
    t = _check_support(t, b)
    La = a * np.log(t)
    # log(1 - t**a) without cancellation; the b = 1 guard keeps 0 * -inf out at t = 1
    tail = 0.0 if b == 1 else (b - 1) * np.log(-np.expm1(La))
    return scalar_or_array(np.log(a * b) + (a - 1) * np.log(t) + tail)


def pdf(params, t):
    a, b = _coerce(params)
    t = _check_support(t, b)
    tail = 1.0 if b == 1 else (-np.expm1(a * np.log(t))) ** (b - 1)
    return scalar_or_array(a * b * t ** (a - 1) * tail)


def cdf(params, t):
    a, b = _coerce(params)
    t = check_unit_interval(t, include_zero=True)
    with np.errstate(divide="ignore"):
        return scalar_or_array(-np.expm1(b * np.log1p(-(t**a))))


def quantile(params, p):
    a, b = _coerce(params)
    p = check_unit_interval(p, "p", include_zero=True)
    with np.errstate(divide="ignore"):
        return scalar_or_array((-np.expm1(np.log1p(-p) / b)) ** (1 / a))


def sample_from_u(params, u):
    return quantile(params, u)


def sample_n(params, n, seed=None):
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    rng = np.random.default_rng(seed)
    return np.asarray(quantile(params, 1.0 - rng.random(int(n))))


def _values(data, b):
    t = data_values(data)
    if b != 1 and np.any(t == 1):
        raise InapplicableModelError(
            "Kumaraswamy log-likelihood is undefined for observations equal to 1"
        )
    return t


def loglik(params, data):
    a, b = _coerce(params)
    t = _values(data, b)
    L = np.log(t)
    tail = 0.0 if b == 1 else (b - 1) * np.sum(np.log(-np.expm1(a * L)))
    return float(t.size * np.log(a * b) + (a - 1) * np.sum(L) + tail)


def score(params, data):
    a, b = _coerce(params)
    t = _values(data, b)
    L = np.log(t)
    ta = np.exp(a * L)
    one_minus = -np.expm1(a * L)
    n = t.size
    ga = n / a + np.sum(L) - (b - 1) * np.sum(ta * L / one_minus)
    gb = n / b + np.sum(np.log(one_minus))
    return np.array([ga, gb])
