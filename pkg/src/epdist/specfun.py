"""Complementary error function and its exponentially scaled variant.

``erfcx`` is the primitive; ``erfc`` is derived from it, so that
closed-form moments never form ``exp(x**2) * erfc(x)`` explicitly.
"""

import numpy as np
from scipy import special

from ._util import as_float_array, scalar_or_array

__all__ = ["erfc", "erfcx"]


def erfcx(x):
    """Scaled complementary error function ``exp(x**2) * erfc(x)``.

    Finite for all finite ``x >= -26`` and well behaved as ``x -> inf``, where
    it decays like ``1 / (x * sqrt(pi))``. Raises ``DomainError`` for
    non-finite input.
    """
    x = as_float_array(x, "x")
    return scalar_or_array(special.erfcx(x))


def erfc(x):
    """Complementary error function, computed as ``erfcx(|x|) * exp(-x**2)``.

    Negative arguments use the reflection ``erfc(-x) = 2 - erfc(x)``.
    """
    x = as_float_array(x, "x")
    ax = np.abs(x)
    tail = special.erfcx(ax) * np.exp(-ax * ax)
    return scalar_or_array(np.where(x >= 0, tail, 2.0 - tail))
