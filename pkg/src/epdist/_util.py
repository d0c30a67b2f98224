import numpy as np

from .exceptions import DomainError


def as_float_array(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def scalar_or_array(out):
    """Return a Python float for 0-d results, the array otherwise."""
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def check_unit_interval(t, name="t", include_zero=False):
    """Validate ``t`` against (0, 1] (or [0, 1] with ``include_zero``)."""
    arr = as_float_array(t, name)
    low_bad = arr < 0 if include_zero else arr <= 0
    if np.any(low_bad) or np.any(arr > 1):
        interval = "[0, 1]" if include_zero else "(0, 1]"
        raise DomainError(f"{name} must lie in {interval}")
    return arr


def data_values(data):
    """Extract a validated 1-d array of observations in (0, 1] from a Dataset or array-like."""
    values = getattr(data, "values", data)
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1:
        raise DomainError("data must be one-dimensional")
    if arr.size == 0:
        raise DomainError("data must be nonempty")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0) or np.any(arr > 1):
        raise DomainError("data must lie in (0, 1]")
    return arr


def check_order(k):
    if int(k) != k or k < 1:
        raise DomainError(f"moment order must be a positive integer, got {k!r}")
    return int(k)
