"""Densities of the minimum and maximum of ``n`` iid EPD draws.

The maximum has distribution function ``F(t)**n``; because the EPD exponent is
linear in the parameters this is again an EPD, with parameters
``(n alpha0, n alpha1)``. The minimum is the Kumaraswamy-G member with
``a = 1``, ``b = n`` built on the EPD.
"""

import numpy as np

from . import epd2
from ._util import check_unit_interval, scalar_or_array
from .exceptions import DomainError

__all__ = ["min_pdf", "min_cdf", "max_pdf", "max_cdf", "max_params"]


def _check_n(n):
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    return int(n)


def min_pdf(params, n, t):
    """``n f(t) (1 - F(t))**(n-1)``."""
    n = _check_n(n)
    t = check_unit_interval(t)
    f = np.asarray(epd2.pdf(params, t))
    F = np.asarray(epd2.cdf(params, t))
    return scalar_or_array(n * f * (1 - F) ** (n - 1))


def _min_pdf_grouped(params, n, t):
    # prefactor with n folded in, as the density is usually written out
    a0, a1 = epd2._coerce(params)
    t = np.asarray(t, dtype=float)
    L = np.log(t)
    F = np.exp(a0 * L - a1 * L**2)
    return (a0 * n - 2 * a1 * n * L) / t * F * (1 - F) ** (n - 1)


def min_cdf(params, n, t):
    n = _check_n(n)
    return scalar_or_array(1 - (1 - np.asarray(epd2.cdf(params, t))) ** n)


def max_params(params, n):
    n = _check_n(n)
    a0, a1 = epd2._coerce(params)
    return epd2.EpdParams(n * a0, n * a1)


def max_pdf(params, n, t):
    return epd2.pdf(max_params(params, n), t)


def max_cdf(params, n, t):
    return epd2.cdf(max_params(params, n), t)
